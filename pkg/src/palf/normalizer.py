"""Line normalization and hash keys used for count lookups.

A line is lowercased, every decimal digit becomes ``0``, mapped Unicode
punctuation is folded to ASCII and every whitespace code point becomes a
plain space. The 64-bit key is the big-endian prefix of the SHA1 digest of
the normalized line encoded as UTF-8.

The punctuation table ships as a versioned JSON file; count maps record the
version they were built with.
"""

from __future__ import annotations

import hashlib
import json
from functools import lru_cache
from importlib import resources

PUNCT_TABLE_FILE = "punct_map_v1.json"


@lru_cache(maxsize=None)
def load_punct_table() -> tuple[str, dict[str, str]]:
    """Return ``(version, mapping)`` for the shipped punctuation table."""
    raw = resources.files("palf").joinpath("data").joinpath(PUNCT_TABLE_FILE).read_text("utf-8")
    data = json.loads(raw)
    mapping = {chr(int(k[2:], 16)): v for k, v in data["map"].items()}
    return data["version"], mapping


TABLE_VERSION = load_punct_table()[0]


class _Translation(dict):
    # str.translate table that resolves code points lazily and memoizes them.
    def __init__(self, punct: dict[str, str]):
        super().__init__()
        self._punct = {ord(k): v for k, v in punct.items()}

    def __missing__(self, cp: int) -> str:
        ch = chr(cp)
        if cp in self._punct:
            out = self._punct[cp]
        elif ch.isdecimal():
            out = "0"
        elif ch.isspace():
            out = " "
        else:
            out = ch
        self[cp] = out
        return out


_TRANSLATION = _Translation(load_punct_table()[1])


def normalize_line(raw: str) -> str:
    """Normalize ``raw`` for hashing.

    >>> normalize_line("Hello, World 2024!")
    'hello, world 0000!'
    """
    return raw.lower().translate(_TRANSLATION)


def hash_normalized(normalized: str) -> int:
    digest = hashlib.sha1(normalized.encode("utf-8", "surrogatepass")).digest()
    return int.from_bytes(digest[:8], "big")


def hash_line(raw: str) -> int:
    """64-bit key of ``raw``: first 8 bytes of SHA1(normalize_line(raw))."""
    return hash_normalized(normalize_line(raw))
