"""Reading crawl shards into documents.

Two input formats are supported: the extracted-text records of a WET file
and the newline-delimited JSON format used between pipeline stages. Both
readers tolerate dirty records and tally what they skip in a `ReadStats`.
"""

from __future__ import annotations

import gzip
import json
import os
from dataclasses import dataclass, field
from typing import BinaryIO, Iterable, Iterator

ENGLISH = "english"
KOREAN = "korean"
LANGUAGES = (ENGLISH, KOREAN)
DEFAULT_GROUP_WIDTH = 1000


class CorpusFormatError(ValueError):
    """Raised when a stream cannot be framed any further."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


@dataclass
class Document:
    lines: list[str]
    shard_id: str = ""
    record_id: str = ""
    url: str | None = None

    @property
    def text(self) -> str:
        return "\n".join(self.lines)


@dataclass
class ReadStats:
    documents: int = 0
    skipped: int = 0
    skip_reasons: dict[str, int] = field(default_factory=dict)

    def skip(self, reason: str) -> None:
        self.skipped += 1
        self.skip_reasons[reason] = self.skip_reasons.get(reason, 0) + 1


@dataclass(frozen=True)
class DocumentSet:
    set_index: int
    shard_ids: tuple[str, ...]


def split_payload(text: str) -> list[str]:
    """Split a payload on ``\\n``, dropping one trailing empty line."""
    if not text:
        return []
    lines = text.split("\n")
    if lines[-1] == "":
        lines.pop()
    return lines


# ---------------------------------------------------------------------------
# WET


def _read_header_block(buf: bytes, pos: int) -> tuple[dict[str, str], int] | None:
    """Parse header lines starting at ``pos``; None at clean end of stream."""
    n = len(buf)
    # skip inter-record blank lines
    while pos < n and buf[pos] in (0x0A, 0x0D):
        pos += 1
    if pos >= n:
        return None
    start = pos
    headers: dict[str, str] = {}
    first = True
    while True:
        end = buf.find(b"\n", pos)
        if end < 0:
            raise CorpusFormatError("stream truncated inside record header", start)
        line = buf[pos:end].rstrip(b"\r")
        pos = end + 1
        if not line:
            break
        text = line.decode("utf-8", "replace")
        if first and text.startswith("WARC/"):
            headers["_version"] = text
        elif ":" in text:
            key, _, value = text.partition(":")
            headers[key.strip().lower()] = value.strip()
        else:
            raise CorpusFormatError(f"malformed header line {text[:60]!r}", start)
        first = False
    return headers, pos


def parse_wet_records(
    stream: BinaryIO | bytes,
    shard_id: str = "",
    stats: ReadStats | None = None,
) -> Iterator[Document]:
    """Yield one `Document` per ``conversion`` record of a WET stream.

    Records of other types are passed over silently. Records whose payload is
    not valid UTF-8 or is cut short are skipped and tallied in ``stats``.
    A stream that ends inside a header block, or a header without a usable
    Content-Length, raises `CorpusFormatError` with the byte offset.
    """
    buf = stream if isinstance(stream, (bytes, bytearray)) else stream.read()
    stats = stats if stats is not None else ReadStats()
    pos = 0
    while True:
        parsed = _read_header_block(buf, pos)
        if parsed is None:
            return
        headers, body = parsed
        try:
            length = int(headers["content-length"])
            if length < 0:
                raise ValueError(length)
        except (KeyError, ValueError):
            raise CorpusFormatError("record without a valid Content-Length", pos) from None
        payload = buf[body:body + length]
        pos = body + length
        if len(payload) < length:
            stats.skip("truncated_payload")
            return
        if headers.get("warc-type", "").lower() != "conversion":
            continue
        try:
            text = payload.decode("utf-8")
        except UnicodeDecodeError:
            stats.skip("invalid_utf8")
            continue
        stats.documents += 1
        yield Document(
            lines=split_payload(text),
            shard_id=shard_id,
            record_id=headers.get("warc-record-id", ""),
            url=headers.get("warc-target-uri"),
        )


def format_wet_record(doc: Document, record_type: str = "conversion") -> bytes:
    """Serialize a document as a minimal WET record (used for fixtures)."""
    payload = "".join(line + "\n" for line in doc.lines).encode("utf-8")
    return frame_wet_record(payload, doc.record_id, doc.url, record_type)


def frame_wet_record(payload: bytes, record_id: str, url: str | None = None,
                     record_type: str = "conversion") -> bytes:
    head = ["WARC/1.0", f"WARC-Type: {record_type}"]
    if url is not None:
        head.append(f"WARC-Target-URI: {url}")
    head += [f"WARC-Record-ID: {record_id}", "Content-Type: text/plain",
             f"Content-Length: {len(payload)}"]
    return ("\r\n".join(head) + "\r\n\r\n").encode("utf-8") + payload + b"\r\n\r\n"


# ---------------------------------------------------------------------------
# JSONL


def document_to_json(doc: Document) -> str:
    obj: dict = {"lines": doc.lines, "shard_id": doc.shard_id, "record_id": doc.record_id}
    if doc.url is not None:
        obj["url"] = doc.url
    return json.dumps(obj, ensure_ascii=False)


def read_jsonl(stream: BinaryIO | Iterable[bytes], stats: ReadStats | None = None,
               shard_id: str | None = None) -> Iterator[Document]:
    """Yield documents from newline-delimited JSON.

    Lines that fail to parse, or lack a ``lines`` array of strings, are
    skipped and tallied. ``shard_id`` fills in records that carry none.
    """
    stats = stats if stats is not None else ReadStats()
    for raw in stream:
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except (ValueError, UnicodeDecodeError):
            stats.skip("malformed_json")
            continue
        lines = obj.get("lines") if isinstance(obj, dict) else None
        if not isinstance(lines, list) or not all(isinstance(x, str) for x in lines):
            stats.skip("missing_lines")
            continue
        if any("\n" in x for x in lines):
            stats.skip("newline_in_line")
            continue
        stats.documents += 1
        yield Document(
            lines=lines,
            shard_id=str(obj.get("shard_id", shard_id or "")),
            record_id=str(obj.get("record_id", "")),
            url=obj.get("url"),
        )


def write_jsonl(docs: Iterable[Document], stream: BinaryIO) -> int:
    """Write documents in canonical JSONL form; returns the count written."""
    n = 0
    for doc in docs:
        stream.write(document_to_json(doc).encode("utf-8", "surrogatepass") + b"\n")
        n += 1
    return n


# ---------------------------------------------------------------------------
# Files and document sets


def shard_id_from_path(path: str | os.PathLike) -> str:
    name = os.path.basename(os.fspath(path))
    for suffix in (".gz", ".wet", ".warc", ".jsonl", ".json"):
        if name.endswith(suffix):
            name = name[: -len(suffix)]
    return name


def _open_binary(path: str | os.PathLike) -> BinaryIO:
    f = open(path, "rb")
    if f.peek(2)[:2] == b"\x1f\x8b":
        return gzip.open(f)  # type: ignore[return-value]
    return f


def is_wet_path(path: str | os.PathLike) -> bool:
    name = os.fspath(path).lower()
    if name.endswith(".gz"):
        name = name[:-3]
    return name.endswith((".wet", ".warc"))


def read_shard(path: str | os.PathLike, stats: ReadStats | None = None) -> Iterator[Document]:
    """Read a WET or JSONL shard file, decompressing gzip transparently."""
    sid = shard_id_from_path(path)
    with _open_binary(path) as f:
        if is_wet_path(path):
            yield from parse_wet_records(f, shard_id=sid, stats=stats)
        else:
            yield from read_jsonl(f, stats=stats, shard_id=sid)


def read_shards(paths: Iterable[str | os.PathLike], stats: ReadStats | None = None) -> Iterator[Document]:
    for path in paths:
        yield from read_shard(path, stats)


def group_document_sets(shard_ids: list[str], language: str,
                        width: int = DEFAULT_GROUP_WIDTH) -> list[DocumentSet]:
    """Group an ordered shard list into document sets.

    English uses consecutive groups of ``width`` shards (the last one may be
    partial); Korean uses the whole snapshot as a single set.
    """
    if not shard_ids:
        raise ValueError("cannot group an empty shard list")
    if language == KOREAN:
        return [DocumentSet(0, tuple(shard_ids))]
    if language != ENGLISH:
        raise ValueError(f"unknown language {language!r}")
    if width < 1:
        raise ValueError("group width must be positive")
    return [
        DocumentSet(i, tuple(shard_ids[start:start + width]))
        for i, start in enumerate(range(0, len(shard_ids), width))
    ]
