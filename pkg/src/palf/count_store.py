"""Per-document-set line counts with saturating 16-bit values.

A count is the number of documents of the set that contain the normalized
line at least once. Stores built over disjoint partitions merge by
saturating addition, and serialize canonically (sorted by key) so that the
merge order never changes the bytes on disk.

Binary layout (all integers little-endian)::

    b"PALF" | u8 version | u32 meta length | meta JSON (UTF-8)
    | u64 entry count | entries: (u64 key, u16 count) * n, ascending key
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .corpus_io import Document
from .normalizer import TABLE_VERSION, hash_line

MAGIC = b"PALF"
FORMAT_VERSION = 1
MAX_COUNT = 0xFFFF
DOCUMENT = "document"
OCCURRENCE = "occurrence"

_ENTRY = np.dtype([("key", "<u8"), ("count", "<u2")])


class CountStoreError(ValueError):
    pass


@dataclass
class CountStore:
    document_set: str = "0"
    normalization: str = TABLE_VERSION
    counting: str = DOCUMENT
    total_documents: int = 0
    entries: dict[int, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def meta(self) -> dict:
        return {
            "document_set": self.document_set,
            "normalization": self.normalization,
            "counting": self.counting,
            "total_documents": self.total_documents,
        }

    def count_document(self, doc: Document | Iterable[str]) -> "CountStore":
        """Add one document; each distinct line key is incremented once.

        With ``counting == "occurrence"`` every line occurrence is counted
        instead.
        """
        lines = doc.lines if isinstance(doc, Document) else doc
        keys = [hash_line(line) for line in lines]
        if self.counting == DOCUMENT:
            keys = set(keys)
        entries = self.entries
        for key in keys:
            c = entries.get(key, 0)
            if c < MAX_COUNT:
                entries[key] = c + 1
        self.total_documents += 1
        return self

    def count(self, key: int) -> int:
        return self.entries.get(key, 0)

    def lookup(self, raw_line: str) -> int:
        return self.entries.get(hash_line(raw_line), 0)

    def lookup_many(self, lines: Iterable[str]) -> list[int]:
        get = self.entries.get
        return [get(hash_line(line), 0) for line in lines]


def build_store(docs: Iterable[Document], document_set: str = "0",
                counting: str = DOCUMENT) -> CountStore:
    store = CountStore(document_set=document_set, counting=counting)
    for doc in docs:
        store.count_document(doc)
    return store


def merge(a: CountStore, b: CountStore) -> CountStore:
    """Saturating per-key sum of two stores built over disjoint documents."""
    for attr in ("document_set", "normalization", "counting"):
        if getattr(a, attr) != getattr(b, attr):
            raise CountStoreError(
                f"cannot merge stores with different {attr}: "
                f"{getattr(a, attr)!r} vs {getattr(b, attr)!r}")
    big, small = (a, b) if len(a) >= len(b) else (b, a)
    entries = dict(big.entries)
    for key, c in small.entries.items():
        entries[key] = min(entries.get(key, 0) + c, MAX_COUNT)
    return CountStore(a.document_set, a.normalization, a.counting,
                      a.total_documents + b.total_documents, entries)


def merge_all(stores: list[CountStore]) -> CountStore:
    """Pairwise tree merge of a non-empty list of stores."""
    if not stores:
        raise CountStoreError("nothing to merge")
    level = list(stores)
    while len(level) > 1:
        level = [merge(level[i], level[i + 1]) if i + 1 < len(level) else level[i]
                 for i in range(0, len(level), 2)]
    return level[0]


def save(store: CountStore) -> bytes:
    meta = json.dumps(store.meta, sort_keys=True, separators=(",", ":")).encode("utf-8")
    arr = np.empty(len(store.entries), dtype=_ENTRY)
    if store.entries:
        arr["key"] = np.fromiter(store.entries.keys(), dtype=np.uint64, count=len(store.entries))
        arr["count"] = np.fromiter(store.entries.values(), dtype=np.uint16, count=len(store.entries))
        arr.sort(order="key")
    header = MAGIC + struct.pack("<BI", FORMAT_VERSION, len(meta)) + meta
    return header + struct.pack("<Q", len(arr)) + arr.tobytes()


def load(data: bytes) -> CountStore:
    if len(data) < 9:
        raise CountStoreError(f"truncated count map header at offset {len(data)}")
    if data[:4] != MAGIC:
        raise CountStoreError("bad magic; not a .palf count map")
    version, meta_len = struct.unpack_from("<BI", data, 4)
    if version != FORMAT_VERSION:
        raise CountStoreError(f"unsupported count map version {version}")
    pos = 9
    if len(data) < pos + meta_len + 8:
        raise CountStoreError(f"truncated count map meta block at offset {len(data)}")
    try:
        meta = json.loads(data[pos:pos + meta_len].decode("utf-8"))
    except ValueError as exc:
        raise CountStoreError(f"bad meta block at offset {pos}: {exc}") from None
    pos += meta_len
    (n,) = struct.unpack_from("<Q", data, pos)
    pos += 8
    need = pos + n * _ENTRY.itemsize
    if len(data) < need:
        raise CountStoreError(
            f"truncated count map: expected {n} entries, data ends at offset {len(data)}")
    if len(data) > need:
        raise CountStoreError(f"trailing bytes after offset {need}")
    arr = np.frombuffer(data, dtype=_ENTRY, count=n, offset=pos)
    keys = arr["key"]
    if n > 1 and not bool(np.all(keys[1:] > keys[:-1])):
        raise CountStoreError("count map entries are not strictly ascending")
    if n and int(arr["count"].min()) == 0:
        raise CountStoreError("count map contains a zero count")
    try:
        return CountStore(
            document_set=str(meta["document_set"]),
            normalization=meta["normalization"],
            counting=meta.get("counting", DOCUMENT),
            total_documents=int(meta["total_documents"]),
            entries=dict(zip(keys.tolist(), arr["count"].tolist())),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CountStoreError(f"incomplete meta block: {exc}") from None


def save_file(store: CountStore, path) -> None:
    with open(path, "wb") as f:
        f.write(save(store))


def load_file(path, expect_normalization: str | None = TABLE_VERSION) -> CountStore:
    """Load a count map, refusing one built with another punctuation table."""
    with open(path, "rb") as f:
        store = load(f.read())
    if expect_normalization is not None and store.normalization != expect_normalization:
        raise CountStoreError(
            f"{path}: built with normalization table {store.normalization!r}, "
            f"this build uses {expect_normalization!r}")
    return store
