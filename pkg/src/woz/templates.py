"""Message templates with typed text-input slots.

A template is literal text with zero or more slot markers of the form
``{NAME:KIND}``, e.g. ``"I see {OBJ:FREE_TEXT}."``.  Templates can be
rendered back to their canonical form, filled with a binding, and
inverse-matched against an utterance to recover the binding that would
have produced it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .errors import ConstraintViolation, MalformedSlotMarker, MissingBinding

SLOT_KINDS = ("FREE_TEXT", "NUMBER", "DISTANCE", "ANGLE", "ENTITY_ID")

DISTANCE_UNITS = ("feet", "foot", "ft", "meters", "meter", "m",
                  "centimeters", "cm", "inches", "inch", "in")
ANGLE_UNITS = ("degrees", "degree", "deg", "radians", "rad")

_NAME_RE = re.compile(r"[A-Z][A-Z0-9_]*")
_MARKER_RE = re.compile(r"\{([A-Z][A-Z0-9_]*):([A-Z_]+)\}")

_NUMBER = r"\d+(?:\.\d+)?"
_DIST_PAT = re.compile(rf"{_NUMBER}\s*(?:{'|'.join(DISTANCE_UNITS)})", re.IGNORECASE)
_ANGLE_PAT = re.compile(rf"{_NUMBER}\s*(?:{'|'.join(ANGLE_UNITS)})", re.IGNORECASE)
_NUMBER_PAT = re.compile(_NUMBER)

_WS_RUN = re.compile(r"\s+")


def normalize(text: str) -> str:
    """Canonical form used for message comparison.

    Lowercase, whitespace runs collapsed to single spaces, stripped, and
    terminal punctuation (``.``, ``!``, ``?``) removed.  Idempotent.
    """
    s = _WS_RUN.sub(" ", text.lower()).strip()
    while s and s[-1] in ".!?":
        s = s.rstrip(".!?").rstrip()
    return s


@dataclass(frozen=True)
class SlotConstraints:
    min_value: Optional[float] = None
    max_value: Optional[float] = None
    units: Optional[tuple[str, ...]] = None


@dataclass(frozen=True)
class SlotSpec:
    name: str
    kind: str
    constraints: Optional[SlotConstraints] = None

    def marker(self) -> str:
        return "{%s:%s}" % (self.name, self.kind)


@dataclass(frozen=True)
class Segment:
    """Either a literal run of text or a reference to a slot."""
    literal: Optional[str] = None
    slot: Optional[SlotSpec] = None

    @property
    def is_slot(self) -> bool:
        return self.slot is not None


@dataclass(frozen=True)
class MessageTemplate:
    raw: str
    segments: tuple[Segment, ...]
    slots: tuple[SlotSpec, ...] = field(default=())

    def render(self) -> str:
        """Reconstruct the canonical raw form; byte-identical to `raw`."""
        parts = []
        for seg in self.segments:
            parts.append(seg.slot.marker() if seg.is_slot else seg.literal)
        return "".join(parts)

    @property
    def is_literal(self) -> bool:
        return not self.slots


def parse_template(raw: str) -> MessageTemplate:
    """Split `raw` into literal and slot segments.

    Raises MalformedSlotMarker for unbalanced braces, unknown kinds,
    duplicate slot names, or two slots with no literal between them
    (adjacent slots make inverse matching ambiguous).
    """
    if not raw:
        raise MalformedSlotMarker("empty template")
    segments: list[Segment] = []
    slots: list[SlotSpec] = []
    seen: set[str] = set()
    pos = 0
    prev_was_slot = False
    while pos < len(raw):
        open_idx = raw.find("{", pos)
        close_idx = raw.find("}", pos)
        if open_idx == -1 and close_idx == -1:
            segments.append(Segment(literal=raw[pos:]))
            break
        if close_idx != -1 and (open_idx == -1 or close_idx < open_idx):
            raise MalformedSlotMarker(f"unbalanced '}}' at offset {close_idx}")
        # open_idx is a marker start
        if open_idx > pos:
            segments.append(Segment(literal=raw[pos:open_idx]))
            prev_was_slot = False
        end = raw.find("}", open_idx)
        if end == -1:
            raise MalformedSlotMarker(f"unbalanced '{{' at offset {open_idx}")
        inner = raw[open_idx + 1:end]
        if ":" not in inner:
            raise MalformedSlotMarker(f"marker '{{{inner}}}' lacks ':KIND'")
        name, kind = inner.split(":", 1)
        if not _NAME_RE.fullmatch(name):
            raise MalformedSlotMarker(f"bad slot name '{name}'")
        if kind not in SLOT_KINDS:
            raise MalformedSlotMarker(f"unknown slot kind '{kind}'")
        if name in seen:
            raise MalformedSlotMarker(f"duplicate slot name '{name}'")
        if prev_was_slot:
            raise MalformedSlotMarker(
                f"adjacent slots with no literal before '{name}'")
        spec = SlotSpec(name=name, kind=kind)
        seen.add(name)
        slots.append(spec)
        segments.append(Segment(slot=spec))
        prev_was_slot = True
        pos = end + 1
    tmpl = MessageTemplate(raw=raw, segments=tuple(segments), slots=tuple(slots))
    assert tmpl.render() == raw
    return tmpl


def _parse_measure(fill: str, pattern: re.Pattern) -> Optional[tuple[float, str]]:
    s = fill.strip()
    if not pattern.fullmatch(s):
        return None
    m = re.match(_NUMBER, s)
    return float(m.group()), s[m.end():].strip().lower()


def validate_fill(spec: SlotSpec, fill: str, env=None) -> None:
    """Check one fill value against its slot spec.

    `env` is an optional environment map used to resolve ENTITY_ID fills.
    Raises ConstraintViolation on failure.
    """
    if not fill or not fill.strip():
        raise ConstraintViolation(f"slot {spec.name}: empty fill")
    kind = spec.kind
    if kind == "NUMBER":
        if not _NUMBER_PAT.fullmatch(fill.strip()):
            raise ConstraintViolation(
                f"slot {spec.name}: '{fill}' is not a non-negative number")
        value, unit = float(fill.strip()), None
    elif kind in ("DISTANCE", "ANGLE"):
        pat = _DIST_PAT if kind == "DISTANCE" else _ANGLE_PAT
        parsed = _parse_measure(fill, pat)
        if parsed is None:
            raise ConstraintViolation(
                f"slot {spec.name}: '{fill}' is not a {kind.lower()} "
                "(number plus unit)")
        value, unit = parsed
    elif kind == "ENTITY_ID":
        if env is not None:
            env.resolve(fill)  # raises UnknownEntity
        return
    else:  # FREE_TEXT
        return
    c = spec.constraints
    if c is None:
        return
    if c.min_value is not None and value < c.min_value:
        raise ConstraintViolation(f"slot {spec.name}: {value} < {c.min_value}")
    if c.max_value is not None and value > c.max_value:
        raise ConstraintViolation(f"slot {spec.name}: {value} > {c.max_value}")
    if c.units is not None and unit is not None and unit not in c.units:
        raise ConstraintViolation(f"slot {spec.name}: unit '{unit}' not allowed")


def fill(template: MessageTemplate, binding: dict[str, str], env=None) -> str:
    """Substitute slot fills into the template's literal context.

    The binding's keys must be exactly the template's slot names and every
    fill must satisfy its slot spec.  The result contains no slot markers.
    """
    names = {s.name for s in template.slots}
    missing = names - binding.keys()
    if missing:
        raise MissingBinding(f"missing fill(s): {sorted(missing)}")
    extra = binding.keys() - names
    if extra:
        raise ConstraintViolation(f"unexpected binding key(s): {sorted(extra)}")
    for spec in template.slots:
        validate_fill(spec, binding[spec.name], env=env)
    parts = []
    for seg in template.segments:
        parts.append(binding[seg.slot.name] if seg.is_slot else seg.literal)
    return "".join(parts)


def _slot_pattern(spec: SlotSpec) -> str:
    if spec.kind == "NUMBER":
        return f"({_NUMBER})"
    if spec.kind == "DISTANCE":
        return rf"({_NUMBER}(?: )?(?:{'|'.join(DISTANCE_UNITS)}))"
    if spec.kind == "ANGLE":
        return rf"({_NUMBER}(?: )?(?:{'|'.join(ANGLE_UNITS)}))"
    return "(.+?)"


def _match_regex(template: MessageTemplate) -> re.Pattern:
    """Regex matching normalized utterances producible by this template.

    Literals are normalized in place (lowercased, whitespace collapsed);
    the leading edge of the first literal and the trailing edge of the
    last are trimmed the way `normalize` trims a whole message.
    """
    parts = []
    segs = template.segments
    for i, seg in enumerate(segs):
        if seg.is_slot:
            parts.append(_slot_pattern(seg.slot))
            continue
        lit = _WS_RUN.sub(" ", seg.literal.lower())
        if i == 0:
            lit = lit.lstrip()
        if i == len(segs) - 1:
            lit = lit.rstrip()
            while lit and lit[-1] in ".!?":
                lit = lit.rstrip(".!?").rstrip()
        parts.append(re.escape(lit))
    return re.compile("".join(parts))


def match(template: MessageTemplate, utterance: str) -> Optional[dict[str, str]]:
    """Inverse of `fill` under normalization.

    Returns a binding whose fill normalizes back to `utterance`, or None
    when the utterance is not producible from the template.  Matching is
    non-greedy, so among candidates the leftmost-shortest slot fills win
    (total literal coverage is thereby maximal).  `utterance` is
    normalized before matching.
    """
    u = normalize(utterance)
    m = _match_regex(template).fullmatch(u)
    if m is None:
        return None
    binding = {}
    for spec, value in zip(template.slots, m.groups()):
        if not value.strip():
            return None
        binding[spec.name] = value
    return binding
