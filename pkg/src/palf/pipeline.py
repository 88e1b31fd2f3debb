"""Filter configurations and their application to documents.

A configuration is an ordered list of line stages drawn from ``LD``
(drop lines counted in more than one document), ``TF`` (drop lines without
trailing punctuation), ``PLD`` and ``PTF`` (their pattern-aware
counterparts). Stages run in sequence; the pattern-aware stages recompute
categories on whatever lines the previous stage left. Counts always come
from the store built before filtering.
"""

from __future__ import annotations

import dataclasses
import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from itertools import islice
from typing import Callable, Iterable, Iterator

from .categorizer import (
    DEFAULT_PUNCT, ENGLISH_PLD, KOREAN_PLD, PldThresholds,
    PunctuationSet, ptf_categorize, pld_categorize_counts,
)
from .corpus_io import ENGLISH, KOREAN, LANGUAGES, Document
from .count_store import CountStore
from .langid import LangDecision
from .span_engine import (
    DEFAULT_PTF_K, PLD_ALPHABET, PLD_PATTERNS, PTF_ALPHABET, PatternSet, ptf_patterns, retain,
)

LD, TF, PLD, PTF = "LD", "TF", "PLD", "PTF"
STAGES = (LD, TF, PLD, PTF)
COUNT_STAGES = frozenset({LD, PLD})
LANG_STAGE = "lang"

# the five compared configurations
CONFIGURATIONS = {
    "baseline": (),
    "ld": (LD,),
    "ld-tf": (LD, TF),
    "pld": (PLD,),
    "pld-ptf": (PLD, PTF),
}

LANGUAGE_DEFAULTS = {
    ENGLISH: {"pld": ENGLISH_PLD, "ptf_k": DEFAULT_PTF_K[ENGLISH]},
    KOREAN: {"pld": KOREAN_PLD, "ptf_k": DEFAULT_PTF_K[KOREAN]},
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class FilterConfig:
    language: str = ENGLISH
    stages: tuple[str, ...] = ()
    pld: PldThresholds = ENGLISH_PLD
    ptf_k: int = DEFAULT_PTF_K[ENGLISH]
    punct: PunctuationSet = DEFAULT_PUNCT
    counts_path: str | None = None
    lang_gate: bool = False
    lang_threshold: float | None = None
    pld_patterns: tuple[str, ...] = PLD_PATTERNS
    ptf_patterns: tuple[str, ...] | None = None
    preset: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "stages", tuple(self.stages))
        if self.language not in LANGUAGES:
            raise ConfigError(f"unknown language {self.language!r}")
        unknown = [s for s in self.stages if s not in STAGES]
        if unknown:
            raise ConfigError(f"unknown stages {unknown}; expected a subset of {STAGES}")
        if len(set(self.stages)) != len(self.stages):
            raise ConfigError("a stage may appear only once")
        for first, then in ((PLD, PTF), (LD, TF)):
            if first in self.stages and then in self.stages and \
                    self.stages.index(then) < self.stages.index(first):
                raise ConfigError(f"{then} must not run before {first}")
        if not isinstance(self.ptf_k, int) or self.ptf_k < 0:
            raise ConfigError(f"ptf_k must be a non-negative integer, got {self.ptf_k!r}")
        try:
            self.pld_pattern_set, self.ptf_pattern_set
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    @property
    def needs_counts(self) -> bool:
        return any(s in COUNT_STAGES for s in self.stages)

    @cached_property
    def pld_pattern_set(self) -> PatternSet:
        return PatternSet(self.pld_patterns, PLD_ALPHABET)

    @cached_property
    def ptf_pattern_set(self) -> PatternSet:
        return PatternSet(self.ptf_patterns or ptf_patterns(self.ptf_k), PTF_ALPHABET)

    def to_dict(self) -> dict:
        return {
            "preset": self.preset,
            "language": self.language,
            "stages": list(self.stages),
            "pld_r": self.pld.r,
            "pld_g": self.pld.g,
            "ptf_k": self.ptf_k,
            "punct": sorted(self.punct.terminators),
            "strip_whitespace": self.punct.strip_whitespace,
            "lang_gate": self.lang_gate,
            "lang_threshold": self.lang_threshold,
            "pld_patterns": list(self.pld_pattern_set.patterns),
            "ptf_patterns": list(self.ptf_pattern_set.patterns),
        }


def make_config(language: str = ENGLISH, configuration: str = "baseline", **overrides) -> FilterConfig:
    """Build one of the named configurations with the language's thresholds."""
    if language not in LANGUAGE_DEFAULTS:
        raise ConfigError(f"unknown language {language!r}")
    if configuration not in CONFIGURATIONS:
        raise ConfigError(f"unknown configuration {configuration!r}; "
                          f"expected one of {sorted(CONFIGURATIONS)}")
    kwargs = dict(LANGUAGE_DEFAULTS[language], language=language,
                  stages=CONFIGURATIONS[configuration])
    kwargs.update(overrides)
    return FilterConfig(**kwargs)


PRESETS = {f"{lang}-{name}": (lang, name) for lang in LANGUAGES for name in CONFIGURATIONS}


def preset(name: str) -> FilterConfig:
    """Look up a preset such as ``english-pld`` or ``korean-pld-ptf``."""
    try:
        lang, conf = PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; expected one of {sorted(PRESETS)}") from None
    return make_config(lang, conf, preset=name)


# ---------------------------------------------------------------------------
# config files: flat "key = value" lines; lines starting with '#' are comments


def _parse_bool(key: str, value: str) -> bool:
    v = value.lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"{key}: expected a boolean, got {value!r}")


def _parse_int(key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {value!r}") from None


def _parse_list(value: str, sep: str) -> tuple[str, ...]:
    return tuple(x.strip() for x in value.split(sep) if x.strip())


CONFIG_KEYS = (
    "preset", "language", "stages", "pld_r", "pld_g", "ptf_k", "punct",
    "strip_whitespace", "counts_path", "lang_gate", "lang_threshold",
    "pld_patterns", "ptf_patterns",
)


def parse_config_mapping(text: str) -> dict[str, str]:
    """Read ``key = value`` lines into a mapping, rejecting unknown keys."""
    kv: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        if key not in CONFIG_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in kv:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        kv[key] = value
    return kv


def parse_config(text: str) -> FilterConfig:
    """Parse a configuration file.

    ``stages`` is comma-separated, ``punct`` whitespace-separated and the
    pattern lists semicolon-separated. ``preset`` (if given) supplies the
    starting point, which the remaining keys then override.
    """
    return config_from_mapping(parse_config_mapping(text))


def config_from_mapping(kv: dict[str, str]) -> FilterConfig:
    kv = dict(kv)
    if "preset" in kv:
        base = preset(kv.pop("preset"))
        if "language" in kv and kv["language"] != base.language:
            lang = kv.pop("language")
            base = dataclasses.replace(base, language=lang, **LANGUAGE_DEFAULTS.get(lang, {}))
    else:
        lang = kv.pop("language", ENGLISH)
        base = make_config(lang, "baseline")
    changes: dict = {}
    kv.pop("language", None)
    if "stages" in kv:
        changes["stages"] = tuple(s.upper() for s in _parse_list(kv.pop("stages"), ","))
    r = _parse_int("pld_r", kv.pop("pld_r")) if "pld_r" in kv else base.pld.r
    g = _parse_int("pld_g", kv.pop("pld_g")) if "pld_g" in kv else base.pld.g
    try:
        changes["pld"] = PldThresholds(r, g)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    if "ptf_k" in kv:
        changes["ptf_k"] = _parse_int("ptf_k", kv.pop("ptf_k"))
    terms = set(kv.pop("punct").split()) if "punct" in kv else base.punct.terminators
    strip = (_parse_bool("strip_whitespace", kv.pop("strip_whitespace"))
             if "strip_whitespace" in kv else base.punct.strip_whitespace)
    try:
        changes["punct"] = PunctuationSet(frozenset(terms), strip)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if "counts_path" in kv:
        changes["counts_path"] = kv.pop("counts_path")
    if "lang_gate" in kv:
        changes["lang_gate"] = _parse_bool("lang_gate", kv.pop("lang_gate"))
    if "lang_threshold" in kv:
        try:
            changes["lang_threshold"] = float(kv.pop("lang_threshold"))
        except ValueError:
            raise ConfigError("lang_threshold: expected a number") from None
    if "pld_patterns" in kv:
        changes["pld_patterns"] = _parse_list(kv.pop("pld_patterns"), ";")
    if "ptf_patterns" in kv:
        changes["ptf_patterns"] = _parse_list(kv.pop("ptf_patterns"), ";")
    if kv:
        raise ConfigError(f"unknown keys {sorted(kv)}")
    return dataclasses.replace(base, **changes)


# ---------------------------------------------------------------------------
# applying a configuration

Gate = Callable[[Document], LangDecision]


def check_ready(config: FilterConfig, store: CountStore | None) -> None:
    if config.needs_counts and store is None:
        raise ConfigError(f"stages {list(config.stages)} need a count map")


def filter_lines(config: FilterConfig, lines: list[str], store: CountStore | None,
                 drops: dict[str, int] | None = None) -> list[str]:
    """Run the configured stages over ``lines`` and return the survivors."""
    for stage in config.stages:
        if not lines:
            break
        if stage == LD:
            counts = store.lookup_many(lines)
            kept = [line for line, c in zip(lines, counts) if c <= 1]
        elif stage == TF:
            ends = config.punct.ends_sentence
            kept = [line for line in lines if ends(line)]
        elif stage == PLD:
            cs = pld_categorize_counts(store.lookup_many(lines), config.pld)
            mask = retain(cs, config.pld_pattern_set)
            kept = [line for line, k in zip(lines, mask) if k]
        else:
            mask = retain(ptf_categorize(lines, config.punct), config.ptf_pattern_set)
            kept = [line for line, k in zip(lines, mask) if k]
        if drops is not None:
            drops[stage] = drops.get(stage, 0) + len(lines) - len(kept)
        lines = kept
    return lines


def apply(config: FilterConfig, doc: Document, store: CountStore | None = None,
          gate: Gate | None = None) -> Document | None:
    """Filter one document; None when nothing survives."""
    check_ready(config, store)
    return _apply(config, doc, store, gate)[0]


def _apply(config, doc, store, gate):
    drops: dict[str, int] = {}
    if gate is not None and not gate(doc).keep:
        if doc.lines:
            drops[LANG_STAGE] = len(doc.lines)
        return None, drops, True
    lines = filter_lines(config, list(doc.lines), store, drops)
    if not lines:
        return None, drops, False
    return dataclasses.replace(doc, lines=lines), drops, False


def ws_tokens(lines: Iterable[str]) -> int:
    return sum(len(line.split()) for line in lines)


def char_count(lines: Iterable[str]) -> int:
    return sum(len(line) for line in lines)


@dataclass
class FilterReport:
    docs_in: int = 0
    docs_out: int = 0
    docs_rejected_lang: int = 0
    lines_in: int = 0
    lines_out: int = 0
    chars_in: int = 0
    chars_out: int = 0
    ws_tokens_in: int = 0
    ws_tokens_out: int = 0
    per_stage_drops: dict[str, int] = field(default_factory=dict)

    def record(self, doc: Document, out: Document | None, drops: dict[str, int], rejected: bool):
        self.docs_in += 1
        self.lines_in += len(doc.lines)
        self.chars_in += char_count(doc.lines)
        self.ws_tokens_in += ws_tokens(doc.lines)
        self.docs_rejected_lang += rejected
        for stage, n in drops.items():
            self.per_stage_drops[stage] = self.per_stage_drops.get(stage, 0) + n
        if out is not None:
            self.docs_out += 1
            self.lines_out += len(out.lines)
            self.chars_out += char_count(out.lines)
            self.ws_tokens_out += ws_tokens(out.lines)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["per_stage_drops"] = dict(sorted(self.per_stage_drops.items()))
        return d


_WORKER: tuple = ()


def _init_worker(config, store, gate):
    global _WORKER
    _WORKER = (config, store, gate)


def _work(doc: Document):
    return _apply(_WORKER[0], doc, _WORKER[1], _WORKER[2])


def run_corpus(config: FilterConfig, docs: Iterable[Document], store: CountStore | None = None,
               *, gate: Gate | None = None, workers: int = 1,
               batch_size: int = 2048) -> tuple[Iterator[Document], FilterReport]:
    """Filter a document stream.

    Returns the output iterator and a report that fills in as the iterator
    is consumed. Output order equals input order whatever ``workers`` is;
    the worker processes are forked and share the store read-only.
    """
    check_ready(config, store)
    report = FilterReport()

    def serial():
        for doc in docs:
            out, drops, rejected = _apply(config, doc, store, gate)
            report.record(doc, out, drops, rejected)
            if out is not None:
                yield out

    def parallel():
        ctx = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(workers, mp_context=ctx, initializer=_init_worker,
                                 initargs=(config, store, gate)) as ex:
            it = iter(docs)
            while batch := list(islice(it, batch_size)):
                chunk = max(1, len(batch) // (4 * workers))
                for doc, (out, drops, rejected) in zip(batch, ex.map(_work, batch, chunksize=chunk)):
                    report.record(doc, out, drops, rejected)
                    if out is not None:
                        yield out

    return (parallel() if workers > 1 else serial()), report
