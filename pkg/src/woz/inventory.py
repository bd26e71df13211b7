"""Button inventory: the finite response set served to the DM-Wizard.

An inventory document is a JSON object with top-level keys ``buttons``
and ``tabs``; see `collect_issues` for the full schema.  Loading
validates every structural invariant and returns an immutable Registry.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional, Union

from .errors import (DanglingReference, DuplicateId, MalformedSlotMarker,
                     OrphanButton, SchemaError, UnknownButton)
from .templates import MessageTemplate, normalize, parse_template

MAX_LABEL_LEN = 48


class Recipient(str, Enum):
    PARTICIPANT = "PARTICIPANT"
    RN_WIZARD = "RN_WIZARD"


class MessageFunction(str, Enum):
    INSTRUCTION = "INSTRUCTION"
    ACK = "ACK"
    FEEDBACK_WILL_DO = "FEEDBACK_WILL_DO"
    FEEDBACK_DONE = "FEEDBACK_DONE"
    COMPLETION = "COMPLETION"
    DELIBERATION = "DELIBERATION"
    CLARIFICATION = "CLARIFICATION"
    CAPABILITY = "CAPABILITY"
    NONUNDERSTANDING = "NONUNDERSTANDING"
    DESCRIPTION = "DESCRIPTION"


def color_class(recipient: Recipient) -> str:
    """Display color is a pure function of the recipient."""
    return "red" if recipient is Recipient.RN_WIZARD else "blue"


@dataclass(frozen=True)
class ResponseButton:
    id: str
    label: str
    template: MessageTemplate
    recipient: Recipient
    function: MessageFunction
    tab_id: str
    row_label: str
    paired_feedback_ids: tuple[str, ...] = ()
    semantics: Optional[str] = None

    @property
    def color(self) -> str:
        return color_class(self.recipient)


@dataclass(frozen=True)
class Tab:
    id: str
    title: str
    rows: tuple[tuple[str, tuple[str, ...]], ...]  # (row_label, button ids)


@dataclass(frozen=True)
class Registry:
    buttons: dict[str, ResponseButton]
    tabs: tuple[Tab, ...]
    source_hash: str
    document: dict = field(repr=False, default_factory=dict)

    @property
    def button_count(self) -> int:
        return len(self.buttons)

    @property
    def tab_count(self) -> int:
        return len(self.tabs)

    @property
    def placement_count(self) -> int:
        return sum(len(ids) for tab in self.tabs for _, ids in tab.rows)

    def lookup(self, button_id: str) -> ResponseButton:
        try:
            return self.buttons[button_id]
        except KeyError:
            raise UnknownButton(button_id) from None

    def hover_text(self, button_id: str) -> str:
        """Full template text shown on hover (not the short label)."""
        return self.lookup(button_id).template.raw

    def buttons_by_function(self, function: MessageFunction) -> list[ResponseButton]:
        return [b for b in self.buttons.values() if b.function is function]


Issue = tuple[str, str]  # (code, human-readable message)


def _canonical_bytes(doc: dict) -> bytes:
    return json.dumps(doc, sort_keys=True, ensure_ascii=False,
                      separators=(",", ":")).encode("utf-8")


def collect_issues(doc: dict, env=None) -> list[Issue]:
    """Validate an inventory document, returning every violation found.

    `env` is an optional EnvironmentMap used to resolve ENTITY_ID slots.
    An empty list means the document loads cleanly.
    """
    issues: list[Issue] = []
    if not isinstance(doc, dict):
        return [("SchemaError", "inventory document must be an object")]
    buttons = doc.get("buttons")
    tabs = doc.get("tabs")
    if not isinstance(buttons, list) or not buttons:
        issues.append(("SchemaError", "'buttons' must be a non-empty array"))
        buttons = []
    if not isinstance(tabs, list) or not tabs:
        issues.append(("SchemaError", "'tabs' must be a non-empty array"))
        tabs = []

    seen: dict[str, dict] = {}
    for i, b in enumerate(buttons):
        where = f"buttons[{i}]"
        if not isinstance(b, dict):
            issues.append(("SchemaError", f"{where}: not an object"))
            continue
        bid = b.get("id")
        if not bid or not isinstance(bid, str):
            issues.append(("SchemaError", f"{where}: missing id"))
            continue
        if bid in seen:
            issues.append(("DuplicateId", f"{where}: duplicate button id '{bid}'"))
            continue
        seen[bid] = b
        label = b.get("label", "")
        if not isinstance(label, str) or not label:
            issues.append(("SchemaError", f"button '{bid}': missing label"))
        elif len(label) > MAX_LABEL_LEN:
            issues.append(("SchemaError",
                           f"button '{bid}': label longer than {MAX_LABEL_LEN} chars"))
        if b.get("recipient") not in (r.value for r in Recipient):
            issues.append(("SchemaError",
                           f"button '{bid}': recipient must be PARTICIPANT or RN_WIZARD"))
        func = b.get("function")
        if func not in (f.value for f in MessageFunction):
            issues.append(("SchemaError", f"button '{bid}': unknown function '{func}'"))
        text = b.get("text")
        if not text or not isinstance(text, str):
            issues.append(("SchemaError", f"button '{bid}': missing text"))
            continue
        try:
            tmpl = parse_template(text)
        except MalformedSlotMarker as exc:
            issues.append(("MalformedSlotMarker", f"button '{bid}': {exc}"))
            continue
        if func == MessageFunction.COMPLETION.value:
            if normalize(text) not in ("done", "sent"):
                issues.append(("SchemaError",
                               f"button '{bid}': COMPLETION text must normalize "
                               "to 'done' or 'sent'"))
        del tmpl  # ENTITY_ID fills are resolved at press time, not load time
    for bid, b in seen.items():
        for ref in b.get("paired_feedback") or []:
            target = seen.get(ref)
            if target is None:
                issues.append(("DanglingReference",
                               f"button '{bid}': paired_feedback '{ref}' does not exist"))
            elif target.get("recipient") != Recipient.PARTICIPANT.value:
                issues.append(("SchemaError",
                               f"button '{bid}': paired_feedback '{ref}' must have "
                               "PARTICIPANT recipient"))

    placed: set[str] = set()
    tab_ids: set[str] = set()
    for i, t in enumerate(tabs):
        where = f"tabs[{i}]"
        if not isinstance(t, dict) or not t.get("id"):
            issues.append(("SchemaError", f"{where}: missing id"))
            continue
        tid = t["id"]
        if tid in tab_ids:
            issues.append(("DuplicateId", f"{where}: duplicate tab id '{tid}'"))
            continue
        tab_ids.add(tid)
        rows = t.get("rows")
        if not isinstance(rows, list):
            issues.append(("SchemaError", f"tab '{tid}': 'rows' must be an array"))
            continue
        for row in rows:
            if not isinstance(row, dict) or not isinstance(row.get("buttons"), list):
                issues.append(("SchemaError", f"tab '{tid}': malformed row"))
                continue
            for ref in row["buttons"]:
                if ref not in seen:
                    issues.append(("DanglingReference",
                                   f"tab '{tid}': row references unknown button '{ref}'"))
                placed.add(ref)
    for bid in seen:
        if bid not in placed:
            issues.append(("OrphanButton", f"button '{bid}' is placed in no tab"))
    return issues


_ISSUE_EXC = {
    "SchemaError": SchemaError,
    "DuplicateId": DuplicateId,
    "DanglingReference": DanglingReference,
    "OrphanButton": OrphanButton,
    "MalformedSlotMarker": MalformedSlotMarker,
}


def load_inventory(source: Union[str, Path, bytes, dict], env=None) -> Registry:
    """Parse and validate an inventory, returning an immutable Registry.

    `source` may be a filesystem path, raw JSON bytes/text, or an
    already-decoded document object.  Loading is deterministic: the same
    document bytes always produce the same source_hash and registry.
    """
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source
                                    and "{" not in source and Path(source).exists()):
        raw = Path(source).read_bytes()
        doc = json.loads(raw.decode("utf-8"))
    elif isinstance(source, bytes):
        raw = source
        doc = json.loads(raw.decode("utf-8"))
    elif isinstance(source, str):
        raw = source.encode("utf-8")
        doc = json.loads(source)
    elif isinstance(source, dict):
        doc = source
        raw = _canonical_bytes(doc)
    else:
        raise SchemaError(f"unsupported inventory source: {type(source)!r}")

    issues = collect_issues(doc, env=env)
    if issues:
        code, message = issues[0]
        raise _ISSUE_EXC.get(code, SchemaError)(message)

    placements: dict[str, tuple[str, str]] = {}  # first placement wins
    tabs = []
    for t in doc["tabs"]:
        rows = tuple((row.get("label", ""), tuple(row["buttons"]))
                     for row in t["rows"])
        tabs.append(Tab(id=t["id"], title=t.get("title", t["id"]), rows=rows))
        for row_label, ids in rows:
            for bid in ids:
                placements.setdefault(bid, (t["id"], row_label))

    buttons: dict[str, ResponseButton] = {}
    for b in doc["buttons"]:
        tab_id, row_label = placements[b["id"]]
        buttons[b["id"]] = ResponseButton(
            id=b["id"],
            label=b["label"],
            template=parse_template(b["text"]),
            recipient=Recipient(b["recipient"]),
            function=MessageFunction(b["function"]),
            tab_id=tab_id,
            row_label=row_label,
            paired_feedback_ids=tuple(b.get("paired_feedback") or ()),
            semantics=b.get("semantics"),
        )

    return Registry(buttons=buttons, tabs=tuple(tabs),
                    source_hash=hashlib.sha256(raw).hexdigest(),
                    document=doc)
