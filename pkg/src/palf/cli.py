"""``palf`` command line.

Exit status: 0 on success, 1 for usage or configuration errors, 2 for data
errors (unreadable input, malformed count maps, oracle mismatches).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import shlex
import sys
import time

from . import count_store as cstore
from .corpus_io import (
    LANGUAGES, CorpusFormatError, ReadStats, group_document_sets, read_shards, write_jsonl,
)
from .langid import make_gate
from .oracle import enumerate_retain
from .pipeline import PRESETS, ConfigError, FilterConfig, config_from_mapping, parse_config_mapping, run_corpus
from .span_engine import PLD_PATTERNS, PatternError, pld_retain, ptf_patterns, ptf_retain
from .stats import count_distribution, external_tokenizer, token_report

log = logging.getLogger("palf")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("PALF_WORKERS", "1")))
    except ValueError:
        return 1


def _dump_json(obj, path: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if path and path != "-":
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _guard_outputs(inputs: list[str], *outputs: str | None) -> None:
    ins = {os.path.realpath(p) for p in inputs}
    for out in outputs:
        if out and out != "-" and os.path.realpath(out) in ins:
            raise ConfigError(f"refusing to overwrite input file {out}")


def _score_provider(args):
    if getattr(args, "model", None) is None:
        return None
    try:
        from .langid import fasttext_score_provider
        return fasttext_score_provider(args.model)
    except ImportError:
        raise ConfigError("--model needs the optional 'fasttext' package") from None


def _gate(args, language: str, threshold: float | None):
    try:
        return make_gate(language, threshold, _score_provider(args))
    except ValueError as exc:
        raise ConfigError(f"{exc}; pass --model") from None


def _read_stats_dict(stats: ReadStats) -> dict:
    return {"documents": stats.documents, "skipped": stats.skipped,
            "skip_reasons": dict(sorted(stats.skip_reasons.items()))}


# ---------------------------------------------------------------------------


def cmd_build_counts(args) -> int:
    sets = group_document_sets(list(args.shards), args.lang, args.group_width)
    if not 0 <= args.set < len(sets):
        raise ConfigError(f"--set {args.set} out of range; {len(args.shards)} shards form {len(sets)} set(s)")
    paths = list(sets[args.set].shard_ids)
    _guard_outputs(list(args.shards), args.out)
    if args.partitions < 1:
        raise ConfigError("--partitions must be >= 1")
    gate = _gate(args, args.lang, args.lang_threshold) if args.lang_gate else None
    counting = cstore.OCCURRENCE if args.occurrence_counts else cstore.DOCUMENT
    parts = [cstore.CountStore(document_set=str(args.set), counting=counting)
             for _ in range(args.partitions)]
    stats = ReadStats()
    rejected = 0
    t0 = time.time()
    for j, doc in enumerate(read_shards(paths, stats)):
        if gate is not None and not gate(doc).keep:
            rejected += 1
            continue
        parts[j % args.partitions].count_document(doc)
    store = cstore.merge_all(parts)
    cstore.save_file(store, args.out)
    log.info("counted %d documents (%d rejected by language gate, %d skipped) into %d keys in %.1fs",
             store.total_documents, rejected, stats.skipped, len(store), time.time() - t0)
    if args.report:
        _dump_json({"command": "build-counts", "shards": paths, "language": args.lang,
                    "group_width": args.group_width, "meta": store.meta, "keys": len(store),
                    "lang_rejected": rejected, "read": _read_stats_dict(stats)}, args.report)
    return 0


def _filter_config(args) -> FilterConfig:
    if args.config and args.preset:
        raise ConfigError("give either --config or --preset, not both")
    if args.config:
        with open(args.config, encoding="utf-8") as f:
            kv = parse_config_mapping(f.read())
    else:
        kv = {"preset": args.preset or f"{args.lang or 'english'}-baseline"}
    if args.lang:
        kv["language"] = args.lang
    for key in ("pld_r", "pld_g", "ptf_k", "lang_threshold", "stages"):
        if getattr(args, key) is not None:
            kv[key] = str(getattr(args, key))
    if args.lang_gate:
        kv["lang_gate"] = "true"
    return config_from_mapping(kv)


def cmd_filter(args) -> int:
    if not args.inputs:
        raise UsageError("filter: error: at least one --in file is required")
    if not args.out:
        raise UsageError("filter: error: --out is required")
    config = _filter_config(args)
    _guard_outputs(args.inputs, args.out, args.report)
    counts_path = args.counts or config.counts_path
    store = None
    if config.needs_counts:
        if not counts_path:
            raise ConfigError(f"stages {list(config.stages)} need --counts")
        store = cstore.load_file(counts_path)
    gate = _gate(args, config.language, config.lang_threshold) if config.lang_gate else None
    if args.workers < 1:
        raise ConfigError("--workers must be >= 1")
    stats = ReadStats()
    docs = read_shards(args.inputs, stats)
    out_iter, report = run_corpus(config, docs, store, gate=gate, workers=args.workers)
    tmp = args.out + ".part"
    with open(tmp, "wb") as f:
        write_jsonl(out_iter, f)
    os.replace(tmp, args.out)
    log.info("filter: %d -> %d documents, %d -> %d lines", report.docs_in, report.docs_out,
             report.lines_in, report.lines_out)
    if args.report:
        _dump_json({"command": "filter", "inputs": list(args.inputs), "config": config.to_dict(),
                    "counts": store.meta if store is not None else None,
                    "read": _read_stats_dict(stats), "report": report.to_dict()}, args.report)
    return 0


def cmd_stats(args) -> int:
    tokenizer = external_tokenizer(shlex.split(args.tokenizer_cmd)) if args.tokenizer_cmd else None
    stats = ReadStats()
    try:
        rep = token_report(read_shards(args.inputs, stats), args.sample_rate, args.seed, tokenizer)
    except ValueError as exc:
        if isinstance(exc, CorpusFormatError):
            raise
        raise ConfigError(str(exc)) from None
    rep["read"] = _read_stats_dict(stats)
    _dump_json({"command": "stats", "inputs": list(args.inputs), **rep}, args.out)
    return 0


def cmd_distribution(args) -> int:
    _guard_outputs(args.inputs, args.out, args.csv)
    store = cstore.load_file(args.counts)
    dist = count_distribution(read_shards(args.inputs), store)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as f:
            f.write(dist.to_csv())
    _dump_json({"command": "distribution", "inputs": list(args.inputs), "counts": store.meta,
                **dist.to_dict()}, args.out)
    return 0


def cmd_langid_check(args) -> int:
    _guard_outputs(args.inputs, args.out)
    gate = _gate(args, args.lang, args.lang_threshold)
    kept = total = 0
    out = open(args.out, "w", encoding="utf-8") if args.out and args.out != "-" else sys.stdout
    try:
        for doc in read_shards(args.inputs):
            d = gate(doc)
            total += 1
            kept += d.keep
            out.write(json.dumps({"shard_id": doc.shard_id, "record_id": doc.record_id,
                                  "keep": d.keep, "score": round(d.score, 6)}) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    log.info("langid-check: kept %d of %d documents", kept, total)
    return 0


def oracle_check(max_len: int, ptf_max_len: int, ks: list[int], families: tuple[str, ...]) -> dict:
    results = {}
    if "pld" in families:
        checked = bad = 0
        first = None
        for cs, mask in enumerate_retain("ryg", max_len, PLD_PATTERNS):
            checked += 1
            if pld_retain(cs) != mask:
                bad += 1
                first = first or cs
        results["pld"] = {"max_len": max_len, "strings": checked, "mismatches": bad,
                          "first_mismatch": first}
    if "ptf" in families:
        for k in ks:
            checked = bad = 0
            first = None
            for cs, mask in enumerate_retain("rg", ptf_max_len, ptf_patterns(k)):
                checked += 1
                if ptf_retain(cs, k) != mask:
                    bad += 1
                    first = first or cs
            results[f"ptf_k{k}"] = {"max_len": ptf_max_len, "strings": checked, "mismatches": bad,
                                    "first_mismatch": first}
    return results


def cmd_oracle_check(args) -> int:
    if args.max_len < 0 or (args.ptf_max_len is not None and args.ptf_max_len < 0):
        raise ConfigError("lengths must be >= 0")
    families = ("pld", "ptf") if args.family == "all" else (args.family,)
    ks = [int(k) for k in args.k.split(",")] if args.k else [0, 1, 3, 15]
    t0 = time.time()
    results = oracle_check(args.max_len, args.ptf_max_len if args.ptf_max_len is not None else args.max_len,
                           ks, families)
    mismatches = sum(r["mismatches"] for r in results.values())
    log.info("oracle-check: %d mismatches in %.1fs", mismatches, time.time() - t0)
    _dump_json({"command": "oracle-check", "results": results, "mismatches": mismatches}, args.out)
    return 0 if mismatches == 0 else 2


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="palf", description="Pattern-aware line filtering for web-crawl text.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", parser_class=_Parser, required=True)

    def lang_flags(sp, gate_flag: bool):
        sp.add_argument("--lang", choices=LANGUAGES)
        sp.add_argument("--lang-threshold", type=float)
        sp.add_argument("--model", help="fastText language-id model (english gate)")
        if gate_flag:
            sp.add_argument("--lang-gate", action="store_true",
                            help="drop documents outside the target language first")

    b = sub.add_parser("build-counts", help="count line document-frequencies for one document set")
    lang_flags(b, True)
    b.set_defaults(lang="english")
    b.add_argument("--set", type=int, default=0, help="document set index")
    b.add_argument("--group-width", type=int, default=1000, help="shards per english document set")
    b.add_argument("--out", required=True)
    b.add_argument("--partitions", type=int, default=1, help="independent partial maps merged at the end")
    b.add_argument("--occurrence-counts", action="store_true",
                   help="count every occurrence instead of documents")
    b.add_argument("--report")
    b.add_argument("shards", nargs="+")
    b.set_defaults(func=cmd_build_counts)

    f = sub.add_parser("filter", help="apply a filter configuration to documents")
    lang_flags(f, True)
    f.add_argument("--config")
    f.add_argument("--preset", choices=sorted(PRESETS))
    f.add_argument("--stages", help="comma-separated stage list, e.g. PLD,PTF")
    f.add_argument("--counts")
    f.add_argument("--in", dest="inputs", action="append", default=[])
    f.add_argument("--out")
    f.add_argument("--report")
    f.add_argument("--pld-r", type=int)
    f.add_argument("--pld-g", type=int)
    f.add_argument("--ptf-k", type=int)
    f.add_argument("--workers", type=int, default=_default_workers())
    f.set_defaults(func=cmd_filter)

    s = sub.add_parser("stats", help="character and token totals")
    s.add_argument("--in", dest="inputs", action="append", required=True)
    s.add_argument("--sample-rate", type=float, default=1.0)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--tokenizer-cmd", help="command reading lines on stdin, printing a token count")
    s.add_argument("--out")
    s.set_defaults(func=cmd_stats)

    d = sub.add_parser("distribution", help="cumulative distribution of line counts")
    d.add_argument("--in", dest="inputs", action="append", required=True)
    d.add_argument("--counts", required=True)
    d.add_argument("--out")
    d.add_argument("--csv")
    d.set_defaults(func=cmd_distribution)

    g = sub.add_parser("langid-check", help="per-document language decisions")
    lang_flags(g, False)
    g.set_defaults(lang="korean")
    g.add_argument("--in", dest="inputs", action="append", required=True)
    g.add_argument("--out")
    g.set_defaults(func=cmd_langid_check)

    o = sub.add_parser("oracle-check", help="compare the span scanners with the brute-force oracle")
    o.add_argument("--max-len", type=int, default=10)
    o.add_argument("--ptf-max-len", type=int)
    o.add_argument("--family", choices=("pld", "ptf", "all"), default="all")
    o.add_argument("--k", help="comma-separated PTF k values (default 0,1,3,15)")
    o.add_argument("--out")
    o.set_defaults(func=cmd_oracle_check)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(exc, file=sys.stderr)
        return 1
    except (ConfigError, PatternError) as exc:
        print(f"palf: configuration error: {exc}", file=sys.stderr)
        return 1
    except (CorpusFormatError, cstore.CountStoreError, OSError, UnicodeError) as exc:
        print(f"palf: data error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"palf: configuration error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
