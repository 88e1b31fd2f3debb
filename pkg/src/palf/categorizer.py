"""Per-line labels for the pattern-aware filters, and the baseline predicates.

PLD labels come from count thresholds: ``r`` (highly repetitive) when the
count exceeds ``r``, ``y`` (undecidable) when it exceeds ``g``, ``g``
(distinctive) otherwise. PTF labels are ``g`` for lines that end in a
terminator and ``r`` for the rest. Labels are computed on the raw line;
normalization only matters for the count lookup.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .corpus_io import Document
from .count_store import CountStore

RED, YELLOW, GREEN = "r", "y", "g"
DEFAULT_TERMINATORS = frozenset({".", "?", "!", '"', "'"})


@dataclass(frozen=True)
class PldThresholds:
    r: int
    g: int

    def __post_init__(self):
        if not (isinstance(self.r, int) and isinstance(self.g, int)):
            raise TypeError("thresholds must be integers")
        if self.g < 1 or self.r <= self.g:
            raise ValueError(f"need r > g >= 1, got r={self.r}, g={self.g}")


ENGLISH_PLD = PldThresholds(r=1000, g=1)
KOREAN_PLD = PldThresholds(r=50, g=3)

# threshold grids searched during tuning, exposed as presets only
PLD_R_GRID = (50, 100, 500, 1000, 2500, 5000)
PLD_G_GRID = (1, 3, 5, 10, 15, 20)
PTF_K_GRID = (1, 3, 5, 7, 10, 15)


@dataclass(frozen=True)
class PunctuationSet:
    terminators: frozenset[str] = DEFAULT_TERMINATORS
    strip_whitespace: bool = True

    def __post_init__(self):
        object.__setattr__(self, "terminators", frozenset(self.terminators))
        if not self.terminators or "" in self.terminators:
            raise ValueError("terminator set must be non-empty and contain no empty string")

    def ends_sentence(self, line: str) -> bool:
        if self.strip_whitespace:
            line = line.rstrip()
        if not line:
            return False
        if line[-1] in self.terminators:
            return True
        return any(len(t) > 1 and line.endswith(t) for t in self.terminators)


DEFAULT_PUNCT = PunctuationSet()


def pld_symbol(count: int, th: PldThresholds) -> str:
    if count > th.r:
        return RED
    if count > th.g:
        return YELLOW
    return GREEN


def pld_categorize_counts(counts: Sequence[int], th: PldThresholds) -> str:
    return "".join(pld_symbol(c, th) for c in counts)


def _lines(doc: Document | Sequence[str]) -> Sequence[str]:
    return doc.lines if isinstance(doc, Document) else doc


def pld_categorize(doc: Document | Sequence[str], store: CountStore, th: PldThresholds) -> str:
    """Category string over {r, y, g}, one symbol per line."""
    lines = _lines(doc)
    return pld_categorize_counts(store.lookup_many(lines), th)


def ptf_categorize(doc: Document | Sequence[str], punct: PunctuationSet = DEFAULT_PUNCT) -> str:
    """Category string over {r, g}: ``g`` iff the line ends in a terminator."""
    lines = _lines(doc)
    ends = punct.ends_sentence
    return "".join(GREEN if ends(line) else RED for line in lines)


def ld_keep(line: str, store: CountStore) -> bool:
    return store.lookup(line) <= 1


def tf_keep(line: str, punct: PunctuationSet = DEFAULT_PUNCT) -> bool:
    return punct.ends_sentence(line)
