"""Pattern-aware line filtering for web-crawl text corpora."""

from .categorizer import (
    ENGLISH_PLD, KOREAN_PLD, PldThresholds, PunctuationSet, ld_keep, pld_categorize,
    ptf_categorize, tf_keep,
)
from .corpus_io import (
    Document, DocumentSet, ReadStats, group_document_sets, parse_wet_records, read_jsonl,
    write_jsonl,
)
from .count_store import CountStore, build_store, load, merge, save
from .langid import LangDecision, english_gate, korean_gate
from .normalizer import hash_line, normalize_line
from .oracle import brute_force_retain
from .pipeline import FilterConfig, FilterReport, apply, make_config, preset, run_corpus
from .span_engine import PatternSet, pld_retain, ptf_retain, retain
from .stats import count_distribution, token_report

__version__ = "0.1.0"
