"""Session management and three-role message routing.

Every accepted operation appends exactly one DialogueEvent to the
session transcript; rejected operations append none.  Event admission
within a session is serialized under a per-session lock, so seq is a
total order consistent with timestamps.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Callable, Iterable, Optional, TextIO, Union

from .errors import (EmptyUtterance, ParseError, SessionClosed, UnknownSession)
from .inventory import MessageFunction, Recipient, Registry
from .templates import fill

MAIN_PHASE_BUDGET_S = 1200  # each main task runs 20 minutes


class Role(str, Enum):
    PARTICIPANT = "PARTICIPANT"
    DM_WIZARD = "DM_WIZARD"
    RN_WIZARD = "RN_WIZARD"


class Phase(str, Enum):
    TRAINING = "TRAINING"
    MAIN1 = "MAIN1"
    MAIN2 = "MAIN2"


class Channel(str, Enum):
    PARTICIPANT_CHAT = "PARTICIPANT_CHAT"
    RN_CHAT = "RN_CHAT"


class Origin(str, Enum):
    BUTTON = "BUTTON"
    FREE_TEXT = "FREE_TEXT"
    INGESTED_UTTERANCE = "INGESTED_UTTERANCE"


def _channel_for(sender: Role, recipient: Role) -> Channel:
    """The chat pane a message belongs to: participant-side traffic goes to
    PARTICIPANT_CHAT, RN-side traffic to RN_CHAT."""
    if Role.PARTICIPANT in (sender, recipient):
        return Channel.PARTICIPANT_CHAT
    return Channel.RN_CHAT


@dataclass(frozen=True)
class DialogueEvent:
    session_id: str
    seq: int
    ts_ms: int
    sender: Role
    recipient: Role
    channel: Channel
    text: str
    origin: Origin
    button_id: Optional[str] = None
    bindings: Optional[dict[str, str]] = None
    function: Optional[MessageFunction] = None

    def to_record(self) -> dict:
        rec = {
            "session_id": self.session_id,
            "seq": self.seq,
            "ts_ms": self.ts_ms,
            "sender": self.sender.value,
            "recipient": self.recipient.value,
            "channel": self.channel.value,
            "text": self.text,
            "origin": self.origin.value,
        }
        if self.button_id is not None:
            rec["button_id"] = self.button_id
        if self.bindings is not None:
            rec["bindings"] = self.bindings
        if self.function is not None:
            rec["function"] = self.function.value
        return rec

    @classmethod
    def from_record(cls, rec: dict) -> "DialogueEvent":
        try:
            return cls(
                session_id=rec["session_id"],
                seq=rec["seq"],
                ts_ms=rec["ts_ms"],
                sender=Role(rec["sender"]),
                recipient=Role(rec["recipient"]),
                channel=Channel(rec["channel"]),
                text=rec["text"],
                origin=Origin(rec["origin"]),
                button_id=rec.get("button_id"),
                bindings=rec.get("bindings"),
                function=(MessageFunction(rec["function"])
                          if "function" in rec else None),
            )
        except (KeyError, ValueError) as exc:
            raise ParseError(f"bad transcript record: {exc}") from exc


def event_line(event: DialogueEvent) -> str:
    """Canonical one-line serialization; stable bytes for identical events."""
    return json.dumps(event.to_record(), sort_keys=True, ensure_ascii=False,
                      separators=(",", ":"))


def write_transcript(events: Iterable[DialogueEvent], out: Union[str, Path, TextIO]):
    if isinstance(out, (str, Path)):
        with open(out, "w", encoding="utf-8") as fp:
            write_transcript(events, fp)
        return
    for ev in events:
        out.write(event_line(ev) + "\n")


def read_transcript(source: Union[str, Path, TextIO, Iterable[str]]) -> list[DialogueEvent]:
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fp:
            return read_transcript(fp)
    events = []
    for lineno, line in enumerate(source, 1):
        line = line.strip()
        if not line:
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
        events.append(DialogueEvent.from_record(rec))
    return events


@dataclass
class Session:
    id: str
    participant_label: str
    phase: Phase
    time_budget_s: Optional[int]
    opened_ts_ms: int
    status: str = "OPEN"
    seq_counter: int = 0
    events: list[DialogueEvent] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def is_open(self) -> bool:
        return self.status == "OPEN"

    def budget_exceeded(self, now_ms: Optional[int] = None) -> bool:
        """Advisory only; the experimenter controls actual timing."""
        if self.time_budget_s is None:
            return False
        now_ms = now_ms if now_ms is not None else int(time.time() * 1000)
        return (now_ms - self.opened_ts_ms) > self.time_budget_s * 1000


EventListener = Callable[[DialogueEvent], None]


class SessionStore:
    """Owns all sessions; serializes event admission per session.

    Reads (exports) may run concurrently with writes and observe a
    consistent prefix of the transcript.
    """

    def __init__(self, registry: Optional[Registry] = None,
                 log_dir: Optional[Union[str, Path]] = None,
                 clock: Callable[[], int] = lambda: int(time.time() * 1000)):
        self.registry = registry
        self.log_dir = Path(log_dir) if log_dir else None
        self._clock = clock
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self._listeners: list[EventListener] = []

    def add_listener(self, listener: EventListener):
        self._listeners.append(listener)

    # --- session lifecycle ---

    def open_session(self, participant_label: str, phase: Union[Phase, str]) -> Session:
        phase = Phase(phase)
        budget = MAIN_PHASE_BUDGET_S if phase in (Phase.MAIN1, Phase.MAIN2) else None
        session = Session(
            id=uuid.uuid4().hex[:12],
            participant_label=participant_label,
            phase=phase,
            time_budget_s=budget,
            opened_ts_ms=self._clock(),
        )
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            try:
                return self._sessions[session_id]
            except KeyError:
                raise UnknownSession(session_id) from None

    def close_session(self, session_id: str) -> Session:
        session = self.get(session_id)
        with session.lock:
            if not session.is_open:
                raise SessionClosed(session_id)
            session.status = "CLOSED"
        return session

    # --- event admission ---

    def _admit(self, session: Session, *, sender: Role, recipient: Role,
               text: str, origin: Origin, button_id=None, bindings=None,
               function=None) -> DialogueEvent:
        with session.lock:
            if not session.is_open:
                raise SessionClosed(session.id)
            session.seq_counter += 1
            ts = self._clock()
            if session.events and ts < session.events[-1].ts_ms:
                ts = session.events[-1].ts_ms
            event = DialogueEvent(
                session_id=session.id,
                seq=session.seq_counter,
                ts_ms=ts,
                sender=sender,
                recipient=recipient,
                channel=_channel_for(sender, recipient),
                text=text,
                origin=origin,
                button_id=button_id,
                bindings=bindings,
                function=function,
            )
            session.events.append(event)
            self._log(event)
            # delivery happens under the session lock so listeners observe
            # per-channel FIFO; listeners must not call back into the store
            for listener in self._listeners:
                listener(event)
        return event

    def ingest_utterance(self, session_id: str, text: str) -> DialogueEvent:
        if not text or not text.strip():
            raise EmptyUtterance("utterance must be non-empty")
        return self._admit(self.get(session_id),
                           sender=Role.PARTICIPANT, recipient=Role.DM_WIZARD,
                           text=text, origin=Origin.INGESTED_UTTERANCE)

    def press_button(self, session_id: str, button_id: str,
                     bindings: Optional[dict[str, str]] = None) -> DialogueEvent:
        if self.registry is None:
            raise UnknownSession("no registry loaded")
        button = self.registry.lookup(button_id)
        bindings = dict(bindings or {})
        text = fill(button.template, bindings)
        recipient = (Role.PARTICIPANT if button.recipient is Recipient.PARTICIPANT
                     else Role.RN_WIZARD)
        return self._admit(self.get(session_id),
                           sender=Role.DM_WIZARD, recipient=recipient,
                           text=text, origin=Origin.BUTTON,
                           button_id=button_id, bindings=bindings,
                           function=button.function)

    def rn_note(self, session_id: str, text: str) -> DialogueEvent:
        if not text or not text.strip():
            raise EmptyUtterance("note must be non-empty")
        return self._admit(self.get(session_id),
                           sender=Role.RN_WIZARD, recipient=Role.DM_WIZARD,
                           text=text, origin=Origin.FREE_TEXT)

    def export_transcript(self, session_id: str) -> list[DialogueEvent]:
        session = self.get(session_id)
        events = list(session.events)  # consistent prefix snapshot
        return sorted(events, key=lambda e: e.seq)

    # --- logging ---

    def _log(self, event: DialogueEvent):
        if self.log_dir is None:
            return
        self.log_dir.mkdir(parents=True, exist_ok=True)
        path = self.log_dir / f"{event.session_id}.jsonl"
        with open(path, "a", encoding="utf-8") as fp:
            fp.write(event_line(event) + "\n")
