"""Corpus analytics: message frequency, interface coverage, and pacing.

Coverage classes partition a corpus: EXACT means normalized equality
with a slotless button text; PARTIAL means a slotted template matches or
a button text is similar enough (token Jaccard at a configurable
threshold); NONE is everything else.  Counting is over normalized text.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Union

from .errors import DivisionByZeroGuard, EmptyCorpus, ParseError
from .inventory import MessageFunction, Registry
from .router import DialogueEvent, Role
from .templates import match, normalize

DEFAULT_PARTIAL_THRESHOLD = 0.5
COMPLETION_TEXTS = ("done", "sent")


@dataclass(frozen=True)
class Corpus:
    messages: tuple[tuple[str, int], ...]  # (text, occurrence count)
    provenance: str = ""

    @property
    def size(self) -> int:
        return sum(count for _, count in self.messages)

    @classmethod
    def from_texts(cls, texts: Iterable[str], provenance: str = "") -> "Corpus":
        return cls(tuple((t, 1) for t in texts), provenance)

    @classmethod
    def from_counted(cls, pairs: Iterable[tuple[str, int]],
                     provenance: str = "") -> "Corpus":
        pairs = tuple(pairs)
        for text, count in pairs:
            if count < 1:
                raise ParseError(f"count for {text!r} must be >= 1")
        return cls(pairs, provenance)

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "Corpus":
        """Line format: `count<TAB>text`, or plain one-message-per-line."""
        pairs = []
        for lineno, line in enumerate(
                Path(path).read_text(encoding="utf-8").splitlines(), 1):
            if not line.strip():
                continue
            if "\t" in line:
                count_s, text = line.split("\t", 1)
                try:
                    count = int(count_s)
                except ValueError:
                    raise ParseError(f"line {lineno}: bad count {count_s!r}")
                if count < 1:
                    raise ParseError(f"line {lineno}: count must be >= 1")
                pairs.append((text, count))
            else:
                pairs.append((line, 1))
        return cls(tuple(pairs), provenance=str(path))


@dataclass(frozen=True)
class FrequencyReport:
    total: int
    repeated_total: int     # occurrences of messages appearing >= 2 times
    repeated_unique: int    # distinct messages appearing >= 2 times
    repeated_fraction: float
    singletons: tuple[str, ...] = ()  # candidates for promotion to buttons


def frequency(corpus: Corpus) -> FrequencyReport:
    if not corpus.messages:
        raise EmptyCorpus("frequency analysis needs at least one message")
    counts: Counter[str] = Counter()
    for text, count in corpus.messages:
        counts[normalize(text)] += count
    total = sum(counts.values())
    repeated = {text: c for text, c in counts.items() if c >= 2}
    repeated_total = sum(repeated.values())
    singletons = tuple(sorted(t for t, c in counts.items() if c == 1))
    return FrequencyReport(
        total=total,
        repeated_total=repeated_total,
        repeated_unique=len(repeated),
        repeated_fraction=repeated_total / total,
        singletons=singletons,
    )


EXACT, PARTIAL, NONE = "EXACT", "PARTIAL", "NONE"


@dataclass(frozen=True)
class Classification:
    message: str
    count: int
    klass: str
    button_id: Optional[str] = None
    similarity: Optional[float] = None


@dataclass(frozen=True)
class CoverageReport:
    total: int
    exact: int
    partial: int
    none: int
    classifications: tuple[Classification, ...] = field(repr=False, default=())

    def percentages(self) -> tuple[float, float, float]:
        if self.total == 0:
            return (0.0, 0.0, 0.0)
        return (round(100 * self.exact / self.total, 1),
                round(100 * self.partial / self.total, 1),
                round(100 * self.none / self.total, 1))


def _jaccard(a: set[str], b: set[str]) -> float:
    if not a and not b:
        return 1.0
    union = a | b
    return len(a & b) / len(union) if union else 0.0


class _RegistryIndex:
    def __init__(self, registry: Registry):
        self.exact_by_text: dict[str, str] = {}
        self.slotted: list = []
        self.token_sets: list[tuple[str, set[str]]] = []
        for button in registry.buttons.values():
            tmpl = button.template
            if tmpl.is_literal:
                self.exact_by_text.setdefault(normalize(tmpl.raw), button.id)
                literal_text = tmpl.raw
            else:
                self.slotted.append(button)
                literal_text = " ".join(
                    seg.literal for seg in tmpl.segments if not seg.is_slot)
            tokens = set(normalize(literal_text).split())
            if tokens:
                self.token_sets.append((button.id, tokens))


def classify_message(text: str, index: _RegistryIndex,
                     partial_threshold: float) -> tuple[str, Optional[str], Optional[float]]:
    """Precedence: EXACT (slotless equality) beats PARTIAL beats NONE."""
    norm = normalize(text)
    exact_id = index.exact_by_text.get(norm)
    if exact_id is not None:
        return EXACT, exact_id, None
    for button in index.slotted:
        if match(button.template, norm) is not None:
            return PARTIAL, button.id, None
    tokens = set(norm.split())
    best_id, best_sim = None, 0.0
    for bid, btokens in index.token_sets:
        sim = _jaccard(tokens, btokens)
        if sim > best_sim:
            best_id, best_sim = bid, sim
    if best_sim >= partial_threshold:
        return PARTIAL, best_id, best_sim
    return NONE, None, None


def coverage(corpus: Corpus, registry: Registry,
             partial_threshold: float = DEFAULT_PARTIAL_THRESHOLD) -> CoverageReport:
    index = _RegistryIndex(registry)
    cache: dict[str, tuple[str, Optional[str], Optional[float]]] = {}
    tallies = {EXACT: 0, PARTIAL: 0, NONE: 0}
    classifications = []
    for text, count in corpus.messages:
        norm = normalize(text)
        if norm not in cache:
            cache[norm] = classify_message(text, index, partial_threshold)
        klass, bid, sim = cache[norm]
        tallies[klass] += count
        classifications.append(Classification(
            message=text, count=count, klass=klass, button_id=bid, similarity=sim))
    return CoverageReport(
        total=corpus.size,
        exact=tallies[EXACT],
        partial=tallies[PARTIAL],
        none=tallies[NONE],
        classifications=tuple(classifications),
    )


@dataclass(frozen=True)
class PacingReport:
    completion_count: int
    breakdown: dict[str, int]  # {"done": n, "sent": m}


def _is_completion(event: DialogueEvent) -> bool:
    if event.sender is not Role.DM_WIZARD or event.recipient is not Role.PARTICIPANT:
        return False
    return (normalize(event.text) in COMPLETION_TEXTS
            or event.function is MessageFunction.COMPLETION)


def pacing(events: Iterable[DialogueEvent]) -> PacingReport:
    """Count completion feedback ("done"/"sent") sent to the participant;
    whole-message match only, so "done deal" does not count."""
    breakdown = {"done": 0, "sent": 0}
    for event in events:
        if not _is_completion(event):
            continue
        key = "sent" if normalize(event.text) == "sent" else "done"
        breakdown[key] += 1
    return PacingReport(
        completion_count=breakdown["done"] + breakdown["sent"],
        breakdown=breakdown,
    )


@dataclass(frozen=True)
class PacingComparison:
    baseline: int
    other: int
    delta: int
    ratio: float


def compare_pacing(a: Union[PacingReport, int],
                   b: Union[PacingReport, int]) -> PacingComparison:
    a_count = a.completion_count if isinstance(a, PacingReport) else int(a)
    b_count = b.completion_count if isinstance(b, PacingReport) else int(b)
    if a_count == 0:
        raise DivisionByZeroGuard("baseline completion count is zero")
    return PacingComparison(baseline=a_count, other=b_count,
                            delta=b_count - a_count, ratio=b_count / a_count)
