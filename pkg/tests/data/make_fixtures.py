"""Regenerate the Korean fixture shards and the golden CLI outputs.

Run from anywhere: ``python tests/data/make_fixtures.py``. The golden files
should only change when filtering behaviour changes on purpose.
"""

import gzip
import os
import sys

from palf.cli import main
from palf.corpus_io import format_wet_record
from palf.synthetic import synthetic_corpus

HERE = os.path.dirname(os.path.abspath(__file__))
SHARDS = ["ko-00000.wet", "ko-00001.wet.gz"]


def write_shards() -> None:
    docs = synthetic_corpus(80, seed=21, language="korean", docs_per_shard=40, sites=3)
    for i, name in enumerate(SHARDS):
        data = b"".join(format_wet_record(d) for d in docs[i * 40:(i + 1) * 40])
        path = os.path.join(HERE, name)
        if name.endswith(".gz"):
            with open(path, "wb") as raw, gzip.GzipFile(fileobj=raw, mode="wb", mtime=0) as f:
                f.write(data)
        else:
            with open(path, "wb") as f:
                f.write(data)


def golden_commands() -> list[list[str]]:
    return [
        ["build-counts", "--lang", "korean", "--out", "golden-counts.palf", *SHARDS],
        ["filter", "--preset", "korean-pld", "--counts", "golden-counts.palf",
         *[a for s in SHARDS for a in ("--in", s)],
         "--out", "golden-korean-pld.jsonl", "--report", "golden-korean-pld.report.json"],
        ["filter", "--preset", "korean-pld-ptf", "--counts", "golden-counts.palf",
         *[a for s in SHARDS for a in ("--in", s)],
         "--out", "golden-korean-pld-ptf.jsonl", "--report", "golden-korean-pld-ptf.report.json"],
    ]


if __name__ == "__main__":
    write_shards()
    os.chdir(HERE)
    for cmd in golden_commands():
        if main(cmd) != 0:
            sys.exit(f"failed: {cmd}")
