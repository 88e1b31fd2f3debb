"""Language gates applied before counting and filtering."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

from .corpus_io import ENGLISH, KOREAN, Document

log = logging.getLogger(__name__)

ENGLISH_THRESHOLD = 0.65
KOREAN_THRESHOLD = 0.10
DEFAULT_THRESHOLDS = {ENGLISH: ENGLISH_THRESHOLD, KOREAN: KOREAN_THRESHOLD}

HANGUL_FIRST = 0xAC00  # 가
HANGUL_LAST = 0xD7A3  # 힣

ScoreProvider = Callable[[str], float]


@dataclass(frozen=True)
class LangDecision:
    keep: bool
    score: float
    error: str | None = None


def english_gate(doc: Document, score_provider: ScoreProvider,
                 threshold: float = ENGLISH_THRESHOLD) -> LangDecision:
    """Keep the document iff the classifier score reaches ``threshold``.

    A provider that raises, or returns something outside [0, 1], rejects the
    document instead of aborting the run.
    """
    try:
        score = float(score_provider(doc.text))
    except Exception as exc:  # noqa: BLE001 - the provider is user code
        log.debug("score provider failed on %s: %s", doc.record_id, exc)
        return LangDecision(False, 0.0, error=type(exc).__name__)
    if not 0.0 <= score <= 1.0:
        return LangDecision(False, 0.0, error="score_out_of_range")
    return LangDecision(score >= threshold, score)


def hangul_ratio(text: str) -> float:
    """Fraction of non-whitespace code points that are precomposed Hangul syllables."""
    total = 0
    hangul = 0
    for ch in text:
        if ch.isspace():
            continue
        total += 1
        if HANGUL_FIRST <= ord(ch) <= HANGUL_LAST:
            hangul += 1
    return hangul / total if total else 0.0


def korean_gate(doc: Document, threshold: float = KOREAN_THRESHOLD) -> LangDecision:
    text = doc.text
    if not any(not ch.isspace() for ch in text):
        return LangDecision(False, 0.0)
    score = hangul_ratio(text)
    return LangDecision(score >= threshold, score)


def fasttext_score_provider(model_path: str, label: str = "__label__en") -> ScoreProvider:
    """Wrap a fastText language-id model as a score provider.

    Requires the optional ``fasttext`` package.
    """
    import fasttext  # optional dependency

    model = fasttext.load_model(model_path)

    def score(text: str) -> float:
        labels, probs = model.predict(text.replace("\n", " "), k=-1)
        return float(dict(zip(labels, probs)).get(label, 0.0))

    return score


def make_gate(language: str, threshold: float | None = None,
              score_provider: ScoreProvider | None = None) -> Callable[[Document], LangDecision]:
    """Return a one-argument gate for ``language``."""
    if threshold is None:
        threshold = DEFAULT_THRESHOLDS[language]
    if language == KOREAN:
        return lambda doc: korean_gate(doc, threshold)
    if language == ENGLISH:
        if score_provider is None:
            raise ValueError("the english gate needs a score provider (classifier model)")
        return lambda doc: english_gate(doc, score_provider, threshold)
    raise ValueError(f"unknown language {language!r}")
