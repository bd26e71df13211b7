"""Reference inventory and environment fixtures.

A structural reconstruction of the production interface: 404 buttons on
5 tabs, where the first two tabs carry curated participant- and
RN-directed content and the last three carry environment-entity buttons
generated from the reference map.  Button texts beyond the handful of
attested messages are synthesized fixture data, not ground truth.
"""

from __future__ import annotations

import json
from pathlib import Path

from .envmap import entity_inventory_fragment, load_environment

BUTTON_TOTAL = 404
TAB_TOTAL = 5

_DATA_DIR = Path(__file__).parent / "data"

_SPACES = [
    # (id, kind, area index)
    ("Front Room", "ROOM", 0),
    ("Main Hallway", "HALLWAY", 0),
    ("Conference Room", "ROOM", 1),
    ("Back Hallway", "HALLWAY", 1),
    ("Kitchen", "ROOM", 2),
    ("Office", "ROOM", 2),
]

_DOORWAYS = [
    ("Front Room Door", "Front Room"),
    ("Front Room Side Door", "Front Room"),
    ("Main Hallway Door Left", "Main Hallway"),
    ("Main Hallway Door Right", "Main Hallway"),
    ("Main Hallway End Door", "Main Hallway"),
    ("Conference Room Door Left", "Conference Room"),
    ("Conference Room Door Right", "Conference Room"),
    ("Conference Room Back Door", "Conference Room"),
    ("Back Hallway Door 1", "Back Hallway"),
    ("Back Hallway Door 2", "Back Hallway"),
    ("Kitchen Door", "Kitchen"),
    ("Kitchen Side Door", "Kitchen"),
    ("Office Door", "Office"),
    ("Office Side Door", "Office"),
]

_OBJECT_ROLES = ["Table 1", "Chair 1", "Chair 2", "Lamp 1", "Box 1"]


def reference_environment_document() -> dict:
    objects = []
    for space, _, _ in _SPACES:
        if space == "Conference Room":
            roles = ["Right Chair 1", "Left Chair 1", "Table 1",
                     "Whiteboard 1", "Box 1"]
        else:
            roles = _OBJECT_ROLES
        objects += [{"id": f"{space} {role}", "space": space} for role in roles]
    areas: list[list[str]] = [[], [], []]
    for space, _, area in _SPACES:
        areas[area].append(space)
    return {
        "spaces": [{"id": s, "kind": k} for s, k, _ in _SPACES],
        "doorways": [{"id": d, "space": s} for d, s in _DOORWAYS],
        "objects": objects,
        "areas": areas,
    }


def _btn(bid, label, text, recipient, function, paired=None, semantics=None):
    entry = {"id": bid, "label": label, "text": text,
             "recipient": recipient, "function": function}
    if paired:
        entry["paired_feedback"] = list(paired)
    if semantics:
        entry["semantics"] = semantics
    return entry


def _instruction_triple(bid, text, will_text, did_text):
    """RN instruction plus its two paired participant feedback buttons."""
    will_id, did_id = f"{bid}--will", f"{bid}--did"
    return [
        _btn(bid, text[:48], text, "RN_WIZARD", "INSTRUCTION",
             paired=[will_id, did_id]),
        _btn(will_id, will_text[:48], will_text, "PARTICIPANT",
             "FEEDBACK_WILL_DO"),
        _btn(did_id, did_text[:48], did_text, "PARTICIPANT", "FEEDBACK_DONE"),
    ]


def _commander_rows() -> list[tuple[str, list[dict]]]:
    rows = []
    rows.append(("acknowledge", [
        _btn("ack-ok", "ok", "ok", "PARTICIPANT", "ACK"),
        _btn("ack-executing", "Executing", "Executing", "PARTICIPANT", "ACK"),
        _btn("ack-standing-by", "Standing by", "Standing by", "PARTICIPANT", "ACK"),
        _btn("ack-hmmm", "Hmmm...", "Hmmm...", "PARTICIPANT", "DELIBERATION"),
        _btn("ack-yes", "Yes", "Yes", "PARTICIPANT", "ACK"),
        _btn("ack-no", "No", "No", "PARTICIPANT", "ACK"),
        _btn("ack-sure", "Sure", "Sure", "PARTICIPANT", "ACK"),
        _btn("ack-one-moment", "One moment", "One moment", "PARTICIPANT", "ACK"),
    ]))
    rows.append(("completion", [
        _btn("complete-done", "done", "done", "PARTICIPANT", "COMPLETION"),
        _btn("complete-sent", "sent", "sent", "PARTICIPANT", "COMPLETION"),
    ]))
    rows.append(("clarify", [
        _btn("clarify-how-far", "how far?", "How far should I move?",
             "PARTICIPANT", "CLARIFICATION"),
        _btn("clarify-hallway", "how far down hallway?",
             "How far should I continue down the hallway? Would you like me "
             "to reach something that you see or go a certain distance?",
             "PARTICIPANT", "CLARIFICATION"),
        _btn("clarify-left", "the one on my left?", "the one on my left?",
             "PARTICIPANT", "CLARIFICATION"),
        _btn("clarify-right", "the one on my right?", "the one on my right?",
             "PARTICIPANT", "CLARIFICATION"),
        _btn("clarify-front", "the one in front?", "the one in front of me?",
             "PARTICIPANT", "CLARIFICATION"),
        _btn("clarify-behind", "the one behind me?", "the one behind me?",
             "PARTICIPANT", "CLARIFICATION"),
        _btn("clarify-which-object", "which object?",
             "Which object are you referring to?", "PARTICIPANT", "CLARIFICATION"),
        _btn("clarify-which-door", "which door?", "Which door do you mean?",
             "PARTICIPANT", "CLARIFICATION"),
        _btn("clarify-which-way", "which way?", "Which way should I turn?",
             "PARTICIPANT", "CLARIFICATION"),
        _btn("clarify-keep-going", "keep going?", "Should I keep going?",
             "PARTICIPANT", "CLARIFICATION"),
        _btn("clarify-stop-here", "stop here?", "Do you want me to stop here?",
             "PARTICIPANT", "CLARIFICATION"),
        _btn("clarify-distance-or-object", "distance or object",
             "You can tell me to move a certain distance or to move to an object.",
             "PARTICIPANT", "CLARIFICATION"),
        _btn("clarify-underspecified-forward", "where to stop?",
             "I'm not sure where or when to stop moving forward. You can tell "
             "me to move a certain distance or to move to an object.",
             "PARTICIPANT", "CLARIFICATION"),
        _btn("clarify-unsure-object", "not sure which object",
             "I'm not sure which object you are referring to.",
             "PARTICIPANT", "CLARIFICATION"),
        _btn("clarify-how-far-to-go", "how far to go?",
             "Can you tell me how far to go?", "PARTICIPANT", "CLARIFICATION"),
    ]))
    rows.append(("non-understanding", [
        _btn("nonunder-rephrase", "not sure – rephrase",
             "I'm not sure what you are asking me to do; can you describe it "
             "another way?", "PARTICIPANT", "NONUNDERSTANDING"),
        _btn("nonunder-did-not", "did not understand", "I did not understand that.",
             "PARTICIPANT", "NONUNDERSTANDING"),
        _btn("nonunder-another-way", "say another way?",
             "Can you say that another way?", "PARTICIPANT", "NONUNDERSTANDING"),
    ]))
    rows.append(("capabilities", [
        _btn("cap-move-to-objects", "can move to objects",
             "I can move to objects that I can see.", "PARTICIPANT", "CAPABILITY"),
        _btn("cap-describe-objects", "can describe objects",
             "I can tell you about the color and size of objects I see.",
             "PARTICIPANT", "CAPABILITY"),
        _btn("cap-send-picture", "can send picture",
             "I can send you a picture of what I see.", "PARTICIPANT", "CAPABILITY"),
        _btn("cap-move-distance", "can move distance",
             "I can move a certain distance or to an object.",
             "PARTICIPANT", "CAPABILITY"),
        _btn("cap-cannot", "cannot do that", "I cannot do that.",
             "PARTICIPANT", "CAPABILITY"),
    ]))
    rows.append(("describe", [
        _btn("desc-i-see", "I see ___", "I see {OBJ:FREE_TEXT}.",
             "PARTICIPANT", "DESCRIPTION"),
        _btn("desc-door-left", "door on left", "I see a door on the left",
             "PARTICIPANT", "DESCRIPTION"),
        _btn("desc-door-right", "door on right", "I see a door on the right",
             "PARTICIPANT", "DESCRIPTION"),
        _btn("desc-wall", "a wall", "I see a wall", "PARTICIPANT", "DESCRIPTION"),
        _btn("desc-doorway-ahead", "doorway ahead", "I see a doorway ahead",
             "PARTICIPANT", "DESCRIPTION"),
        _btn("desc-hall-left", "hallway left", "I see a hallway to the left",
             "PARTICIPANT", "DESCRIPTION"),
        _btn("desc-hall-right", "hallway right", "I see a hallway to the right",
             "PARTICIPANT", "DESCRIPTION"),
        _btn("desc-obstruction", "obstruction – picture?",
             "There's an obstruction preventing me from doing that. Would you "
             "like me to send a picture?", "PARTICIPANT", "DESCRIPTION"),
        _btn("desc-door-closed", "door closed", "The door is closed.",
             "PARTICIPANT", "DESCRIPTION"),
        _btn("desc-door-open", "door open", "The door is open.",
             "PARTICIPANT", "DESCRIPTION"),
        _btn("desc-in-hallway", "in a hallway", "I am in a hallway.",
             "PARTICIPANT", "DESCRIPTION"),
        _btn("desc-facing-wall", "facing a wall", "I am facing a wall.",
             "PARTICIPANT", "DESCRIPTION"),
    ]))
    rows.append(("backchannel", [
        _btn("back-do-now", "I'll do that now", "I'll do that now.",
             "PARTICIPANT", "FEEDBACK_WILL_DO"),
        _btn("back-working", "working on it", "Working on it.",
             "PARTICIPANT", "ACK"),
        _btn("back-almost", "almost there", "Almost there.",
             "PARTICIPANT", "ACK"),
        _btn("back-moment", "may take a moment", "That may take a moment.",
             "PARTICIPANT", "ACK"),
    ]))
    return rows


def _rn_rows() -> list[tuple[str, list[dict]]]:
    rows = []
    moves = []
    moves += _instruction_triple(
        "rn-move-forward-dist", "move forward {D:DISTANCE}",
        "I will move forward {D:DISTANCE}", "I moved forward {D:DISTANCE}")
    moves += _instruction_triple(
        "rn-move-backward-dist", "move backward {D:DISTANCE}",
        "I will move backward {D:DISTANCE}", "I moved backward {D:DISTANCE}")
    for words in ("two", "three", "five", "ten"):
        moves += _instruction_triple(
            f"rn-move-forward-{words}", f"move forward {words} feet",
            f"I will move forward {words} feet", f"I moved forward {words} feet")
    for words in ("two", "three"):
        moves += _instruction_triple(
            f"rn-move-backward-{words}", f"move backward {words} feet",
            f"I will move backward {words} feet", f"I moved backward {words} feet")
    rows.append(("move", moves))

    turns = []
    turns += _instruction_triple(
        "rn-turn-left-angle", "turn left {A:ANGLE}",
        "I will turn left {A:ANGLE}", "I turned left {A:ANGLE}")
    turns += _instruction_triple(
        "rn-turn-right-angle", "turn right {A:ANGLE}",
        "I will turn right {A:ANGLE}", "I turned right {A:ANGLE}")
    for side in ("left", "right"):
        for deg in (45, 90):
            turns += _instruction_triple(
                f"rn-turn-{side}-{deg}", f"turn {side} {deg} degrees",
                f"I will turn {side} {deg} degrees",
                f"I turned {side} {deg} degrees")
    turns += _instruction_triple(
        "rn-turn-left-180", "turn left 180 degrees",
        "I will turn left 180 degrees", "I turned left 180 degrees")
    turns += _instruction_triple(
        "rn-turn-around", "turn around", "I will turn around", "I turned around")
    rows.append(("turn", turns))

    control = []
    control += _instruction_triple("rn-stop", "stop", "I will stop", "I stopped")
    control += _instruction_triple(
        "rn-continue", "continue", "I will continue", "I continued")
    control += _instruction_triple(
        "rn-take-picture", "take a picture",
        "I will send a picture", "I sent a picture")
    rows.append(("control", control))
    return rows


def _pad_pool() -> list[dict]:
    """Deterministic synthesized variants used to reach the 404 total."""
    pool = []
    amounts = ["one foot", "two feet", "three feet", "four feet", "five feet",
               "six feet", "seven feet", "eight feet", "nine feet", "ten feet"]
    for amount in amounts:
        pool.append(_btn(
            f"pad-confirm-forward-{amount.split()[0]}",
            f"forward {amount}?", f"Did you want me to move forward {amount}?",
            "PARTICIPANT", "CLARIFICATION"))
    for side in ("left", "right"):
        for deg in (45, 90, 180):
            pool.append(_btn(
                f"pad-confirm-turn-{side}-{deg}", f"turn {side} {deg}?",
                f"Did you want me to turn {side} {deg} degrees?",
                "PARTICIPANT", "CLARIFICATION"))
    extras = [
        ("pad-cap-camera", "camera faces forward", "My camera faces forward."),
        ("pad-cap-stills", "still images only", "I can only send still images."),
        ("pad-cap-speed", "fixed speed", "I move at a fixed speed."),
        ("pad-cap-history", "location history", "I can remember where I have been."),
        ("pad-cap-no-grasp", "cannot pick up", "I am not able to pick up objects."),
        ("pad-cap-no-doors", "cannot open doors", "I cannot open doors."),
        ("pad-cap-doorways", "fits doorways", "I can fit through standard doorways."),
        ("pad-cap-battery", "battery fine", "My battery is fine."),
    ]
    for bid, label, text in extras:
        pool.append(_btn(bid, label, text, "PARTICIPANT", "CAPABILITY"))
    return pool


def reference_inventory_document() -> dict:
    env = load_environment(reference_environment_document())
    fragment = entity_inventory_fragment(env)

    commander_rows = _commander_rows()
    rn_rows = _rn_rows()
    curated = [b for _, row in commander_rows + rn_rows for b in row]

    pad_needed = BUTTON_TOTAL - len(curated) - len(fragment["buttons"])
    pool = _pad_pool()
    if not 0 <= pad_needed <= len(pool):
        raise AssertionError(f"fixture arithmetic is off: pad_needed={pad_needed}")
    pad = pool[:pad_needed]
    commander_rows.append(("more options", pad))

    def tab(tid, title, rows):
        return {"id": tid, "title": title,
                "rows": [{"label": label, "buttons": [b["id"] for b in row]}
                         for label, row in rows]}

    commander_tab = tab("wiz-commander", "Wiz-Commander", commander_rows)
    rn_tab = tab("wiz-rn", "Wiz-RN", rn_rows)
    # "done" is used constantly; give it a second placement on the RN tab.
    rn_tab["rows"].append({"label": "completion", "buttons": ["complete-done"]})

    doc = {
        "buttons": curated + pad + fragment["buttons"],
        "tabs": [commander_tab, rn_tab] + fragment["tabs"],
    }
    assert len(doc["buttons"]) == BUTTON_TOTAL
    assert len(doc["tabs"]) == TAB_TOTAL
    return doc


def write_reference_data(directory: Path = _DATA_DIR) -> tuple[Path, Path]:
    """Serialize both fixtures into the packaged data directory."""
    directory.mkdir(parents=True, exist_ok=True)
    inv = directory / "reference_inventory.json"
    envp = directory / "reference_environment.json"
    inv.write_text(json.dumps(reference_inventory_document(), indent=2,
                              ensure_ascii=False) + "\n", encoding="utf-8")
    envp.write_text(json.dumps(reference_environment_document(), indent=2,
                               ensure_ascii=False) + "\n", encoding="utf-8")
    return inv, envp


def reference_inventory_path() -> Path:
    return _DATA_DIR / "reference_inventory.json"


def reference_environment_path() -> Path:
    return _DATA_DIR / "reference_environment.json"
