"""Transcript replay: re-drive logged button presses against a registry.

Used to verify that an inventory revision still regenerates the exact
message text recorded in earlier sessions, and that identical presses
always yield identical text.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Union

from .errors import UnknownButton
from .inventory import Registry
from .router import DialogueEvent, Origin, SessionStore, read_transcript


@dataclass(frozen=True)
class Mismatch:
    seq: int
    button_id: str
    logged_text: str
    regenerated_text: str


@dataclass(frozen=True)
class ReplayReport:
    events_total: int
    button_events: int
    mismatches: tuple[Mismatch, ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def replay(transcript: Union[str, Path, list[DialogueEvent]],
           registry: Registry) -> ReplayReport:
    events = (read_transcript(transcript)
              if isinstance(transcript, (str, Path)) else list(transcript))
    store = SessionStore(registry=registry)
    sessions: dict[str, str] = {}  # logged session id -> replay session id
    mismatches = []
    button_events = 0
    for ev in events:
        if ev.origin is not Origin.BUTTON or ev.button_id is None:
            continue
        button_events += 1
        if ev.session_id not in sessions:
            sessions[ev.session_id] = store.open_session(
                f"replay-{ev.session_id}", "TRAINING").id
        try:
            redone = store.press_button(sessions[ev.session_id],
                                        ev.button_id, ev.bindings or {})
            regenerated = redone.text
        except UnknownButton:
            regenerated = f"<unknown button {ev.button_id}>"
        if regenerated != ev.text:
            mismatches.append(Mismatch(
                seq=ev.seq, button_id=ev.button_id,
                logged_text=ev.text, regenerated_text=regenerated))
    return ReplayReport(events_total=len(events), button_events=button_events,
                        mismatches=tuple(mismatches))
