"""Count distributions and token accounting."""

from __future__ import annotations

import csv
import io
import subprocess
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .corpus_io import Document
from .count_store import MAX_COUNT, CountStore
from .pipeline import char_count, ws_tokens


def _thresholds() -> tuple[int, ...]:
    out = list(range(1, 10))
    step = 10
    while step <= 10000:
        out.extend(range(step, step * 10, step))
        step *= 10
    out = [t for t in out if t < MAX_COUNT]
    out.append(MAX_COUNT)
    return tuple(out)


# 1..9, 10..90, 100..900, ..., 60000, then the saturation value
THRESHOLDS = _thresholds()


@dataclass(frozen=True)
class CountDistribution:
    points: tuple[tuple[int, float], ...]
    total_lines: int

    def fraction_at(self, threshold: int) -> float:
        for t, f in self.points:
            if t == threshold:
                return f
        raise KeyError(threshold)

    def to_dict(self) -> dict:
        return {"total_lines": self.total_lines,
                "points": [{"count": t, "fraction": f} for t, f in self.points]}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["count", "cumulative_fraction"])
        w.writerows(self.points)
        return buf.getvalue()


def tally_counts(docs: Iterable[Document], store: CountStore) -> Counter:
    """Histogram of line-occurrence counts; tallies merge with ``+``."""
    tally: Counter = Counter()
    for doc in docs:
        tally.update(store.lookup_many(doc.lines))
    return tally


def distribution_from_tally(tally: Counter, thresholds: Sequence[int] = THRESHOLDS) -> CountDistribution:
    total = sum(tally.values())
    if total == 0:
        return CountDistribution(tuple((t, 1.0) for t in thresholds), 0)
    counts = np.fromiter(tally.keys(), dtype=np.int64, count=len(tally))
    weights = np.fromiter(tally.values(), dtype=np.int64, count=len(tally))
    order = np.argsort(counts)
    counts, cum = counts[order], np.cumsum(weights[order])
    idx = np.searchsorted(counts, np.asarray(thresholds), side="right")
    below = np.where(idx > 0, cum[np.maximum(idx - 1, 0)], 0)
    return CountDistribution(tuple((int(t), float(b) / total) for t, b in zip(thresholds, below)), total)


def count_distribution(docs: Iterable[Document], store: CountStore) -> CountDistribution:
    """Cumulative fraction of line occurrences whose count is <= each threshold."""
    return distribution_from_tally(tally_counts(docs, store))


def external_tokenizer(cmd: Sequence[str]) -> Callable[[list[str]], int]:
    """Token counter backed by a child process.

    The command receives the lines on standard input, one per line, and must
    print a single integer token count on standard output.
    """
    def count(lines: list[str]) -> int:
        data = "".join(line + "\n" for line in lines).encode("utf-8", "surrogatepass")
        res = subprocess.run(list(cmd), input=data, capture_output=True, check=True)
        return int(res.stdout.decode().strip())

    return count


def token_report(docs: Iterable[Document], sample_rate: float = 1.0, seed: int = 0,
                 tokenizer: Callable[[list[str]], int] | None = None) -> dict:
    """Character and whitespace-token totals, estimated from a shard sample.

    Each distinct shard is drawn once, in first-seen order, with probability
    ``sample_rate``; sampled totals are divided by ``sample_rate``.
    """
    if not 0.0 < sample_rate <= 1.0:
        raise ValueError("sample_rate must be in (0, 1]")
    rng = np.random.default_rng(seed)
    chosen: dict[str, bool] = {}
    sampled = {"docs": 0, "lines": 0, "chars": 0, "ws_tokens": 0}
    tokens = 0
    pending: list[str] = []
    for doc in docs:
        take = chosen.get(doc.shard_id)
        if take is None:
            take = chosen[doc.shard_id] = bool(sample_rate == 1.0 or rng.random() < sample_rate)
        if not take:
            continue
        sampled["docs"] += 1
        sampled["lines"] += len(doc.lines)
        sampled["chars"] += char_count(doc.lines)
        sampled["ws_tokens"] += ws_tokens(doc.lines)
        if tokenizer is not None:
            pending.extend(doc.lines)
            if len(pending) >= 10000:
                tokens += tokenizer(pending)
                pending = []
    if tokenizer is not None and pending:
        tokens += tokenizer(pending)
    scale = 1.0 / sample_rate
    report = {
        "sample_rate": sample_rate,
        "seed": seed,
        "shards_seen": len(chosen),
        "shards_sampled": sum(chosen.values()),
        "sampled": sampled,
        "estimated": {k: v * scale for k, v in sampled.items()},
    }
    if tokenizer is not None:
        report["sampled"]["tokens"] = tokens
        report["estimated"]["tokens"] = tokens * scale
    return report
