"""Environment model: uniquely named spaces, doorways, and objects.

Each entity yields a family of single-action instruction buttons plus
paired participant feedback, generated deterministically so the button
inventory can be regenerated reproducibly when the map changes.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from .errors import InvalidMap, UnknownEntity
from .inventory import MessageFunction, Recipient, ResponseButton
from .templates import parse_template

SPACE_KINDS = ("ROOM", "HALLWAY")

# (action phrase, "I will ..." phrase, past-tense phrase)
_DOORWAY_ACTIONS = (
    ("move to", "I will move to", "I moved to"),
    ("move parallel to", "I will move parallel to", "I moved parallel to"),
    ("move through", "I will move through", "I moved through"),
    ("turn to face", "I will turn to face", "I turned to face"),
)
_SPACE_ACTIONS = (("move into", "I will move into", "I moved into"),)
_OBJECT_ACTIONS = (("move to", "I will move to", "I moved to"),)

VICINITY_SEMANTICS = ("stop within one robot's length of the doorway; "
                      "no re-orientation")


@dataclass(frozen=True)
class EnvironmentEntity:
    id: str
    kind: str  # ROOM | HALLWAY | DOORWAY | OBJECT
    space_id: str | None = None  # containing space; None for spaces themselves


@dataclass(frozen=True)
class EnvironmentMap:
    entities: dict[str, EnvironmentEntity]
    areas: tuple[tuple[str, ...], ...]  # partition of space ids into display areas

    def resolve(self, entity_id: str) -> EnvironmentEntity:
        try:
            return self.entities[entity_id]
        except KeyError:
            raise UnknownEntity(entity_id or "<empty>") from None

    def spaces(self) -> list[EnvironmentEntity]:
        return [e for e in self.entities.values() if e.kind in SPACE_KINDS]

    def doorways(self) -> list[EnvironmentEntity]:
        return [e for e in self.entities.values() if e.kind == "DOORWAY"]

    def objects(self) -> list[EnvironmentEntity]:
        return [e for e in self.entities.values() if e.kind == "OBJECT"]

    def area_of(self, entity: EnvironmentEntity) -> int:
        space = entity.id if entity.kind in SPACE_KINDS else entity.space_id
        for i, area in enumerate(self.areas):
            if space in area:
                return i
        raise InvalidMap(f"'{space}' belongs to no area")


def load_environment(source: Union[str, Path, dict]) -> EnvironmentMap:
    """Build an EnvironmentMap from its file schema:
    {spaces:[{id,kind}], doorways:[{id,space}], objects:[{id,space}], areas:[[ids]]}
    """
    if isinstance(source, dict):
        doc = source
    else:
        doc = json.loads(Path(source).read_text(encoding="utf-8"))
    entities: dict[str, EnvironmentEntity] = {}

    def add(ent: EnvironmentEntity):
        if not ent.id:
            raise InvalidMap("entity with empty id")
        if ent.id in entities:
            raise InvalidMap(f"duplicate entity id '{ent.id}'")
        entities[ent.id] = ent

    for s in doc.get("spaces", []):
        kind = s.get("kind", "ROOM")
        if kind not in SPACE_KINDS:
            raise InvalidMap(f"space '{s.get('id')}': kind must be ROOM or HALLWAY")
        add(EnvironmentEntity(id=s["id"], kind=kind))
    for d in doc.get("doorways", []):
        add(EnvironmentEntity(id=d["id"], kind="DOORWAY", space_id=d.get("space")))
    for o in doc.get("objects", []):
        add(EnvironmentEntity(id=o["id"], kind="OBJECT", space_id=o.get("space")))

    space_ids = {e.id for e in entities.values() if e.kind in SPACE_KINDS}
    for e in entities.values():
        if e.kind not in SPACE_KINDS:
            if e.space_id not in space_ids:
                raise InvalidMap(
                    f"{e.kind.lower()} '{e.id}': containing space "
                    f"'{e.space_id}' does not exist")

    areas = tuple(tuple(a) for a in doc.get("areas") or [sorted(space_ids)])
    covered = [sid for area in areas for sid in area]
    if sorted(covered) != sorted(space_ids) or len(covered) != len(set(covered)):
        raise InvalidMap("areas must partition the spaces exactly once")
    return EnvironmentMap(entities=entities, areas=areas)


def _slug(text: str) -> str:
    return re.sub(r"[^a-z0-9]+", "-", text.lower()).strip("-")


def _entity_actions(entity: EnvironmentEntity):
    if entity.kind == "DOORWAY":
        return _DOORWAY_ACTIONS
    if entity.kind == "OBJECT":
        return _OBJECT_ACTIONS
    return _SPACE_ACTIONS


def generate_entity_buttons(env: EnvironmentMap) -> list[ResponseButton]:
    """Instruction/feedback button triples for every entity.

    Per doorway: move to / move parallel to / move through / turn to face;
    per object: move to; per room or hallway: move into.  Every RN
    instruction carries two paired participant feedback buttons, so the
    generated count is 3*spaces + 12*doorways + 3*objects.  Output order
    is (area, entity id, action) and is stable across regeneration.
    """
    ordered = sorted(env.entities.values(), key=lambda e: (env.area_of(e), e.id))
    buttons: list[ResponseButton] = []
    for entity in ordered:
        area = env.area_of(entity)
        tab_id = f"area-{area + 1}"
        for action, will, did in _entity_actions(entity):
            base = f"env--{_slug(action)}--{_slug(entity.id)}"
            will_id, did_id = f"{base}--will", f"{base}--did"
            semantics = None
            if entity.kind == "DOORWAY" and action == "move to":
                semantics = VICINITY_SEMANTICS
            buttons.append(ResponseButton(
                id=base,
                label=_clip(f"{action} {entity.id}"),
                template=parse_template(f"{action} {entity.id}"),
                recipient=Recipient.RN_WIZARD,
                function=MessageFunction.INSTRUCTION,
                tab_id=tab_id,
                row_label=entity.id,
                paired_feedback_ids=(will_id, did_id),
                semantics=semantics,
            ))
            buttons.append(ResponseButton(
                id=will_id,
                label=_clip(f"{will} {entity.id}"),
                template=parse_template(f"{will} {entity.id}"),
                recipient=Recipient.PARTICIPANT,
                function=MessageFunction.FEEDBACK_WILL_DO,
                tab_id=tab_id,
                row_label=entity.id,
            ))
            buttons.append(ResponseButton(
                id=did_id,
                label=_clip(f"{did} {entity.id}"),
                template=parse_template(f"{did} {entity.id}"),
                recipient=Recipient.PARTICIPANT,
                function=MessageFunction.FEEDBACK_DONE,
                tab_id=tab_id,
                row_label=entity.id,
            ))
    return buttons


def _clip(label: str) -> str:
    return label if len(label) <= 48 else label[:47] + "…"


def entity_inventory_fragment(env: EnvironmentMap) -> dict:
    """Generated buttons in inventory-document form, merge-ready.

    Emits one tab per display area with a row per entity.
    """
    buttons = generate_entity_buttons(env)
    tabs: dict[str, dict] = {}
    for i in range(len(env.areas)):
        tid = f"area-{i + 1}"
        tabs[tid] = {"id": tid, "title": f"Area {i + 1}", "rows": []}
    rows: dict[tuple[str, str], dict] = {}
    out_buttons = []
    for b in buttons:
        entry = {
            "id": b.id,
            "label": b.label,
            "text": b.template.raw,
            "recipient": b.recipient.value,
            "function": b.function.value,
        }
        if b.paired_feedback_ids:
            entry["paired_feedback"] = list(b.paired_feedback_ids)
        if b.semantics:
            entry["semantics"] = b.semantics
        out_buttons.append(entry)
        key = (b.tab_id, b.row_label)
        if key not in rows:
            rows[key] = {"label": b.row_label, "buttons": []}
            tabs[b.tab_id]["rows"].append(rows[key])
        rows[key]["buttons"].append(b.id)
    return {"buttons": out_buttons,
            "tabs": [t for t in tabs.values() if t["rows"]]}
