"""Brute-force reference for span retention.

Every interval ``[a, b]`` of the category string is tested for a full match
against each pattern, and the mask is the union of matching intervals. The
full-match test is a recursive evaluation of regex derivatives over a
hash-consed syntax tree; nothing here is shared with `palf.span_engine`.

Walking the derivative forward from a start position tests every interval
starting there in one pass; the walk stops once the derivative can match
nothing, which cannot hide a match.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

ORACLE_LIMIT = 4096

# Node ids index into _NODES; each node is a tuple whose children are ids.
_NODES: list[tuple] = []
_IDS: dict[tuple, int] = {}


def _node(t: tuple) -> int:
    i = _IDS.get(t)
    if i is None:
        i = _IDS[t] = len(_NODES)
        _NODES.append(t)
    return i


NOTHING = _node(("nothing",))
EMPTY = _node(("empty",))


def _sym(chars: frozenset) -> int:
    return _node(("sym", chars)) if chars else NOTHING


def _seq(a: int, b: int) -> int:
    if a == NOTHING or b == NOTHING:
        return NOTHING
    if a == EMPTY:
        return b
    if b == EMPTY:
        return a
    if _NODES[a][0] == "seq":  # right-associate
        _, x, y = _NODES[a]
        return _seq(x, _seq(y, b))
    return _node(("seq", a, b))


def _or(*parts: int) -> int:
    flat: set[int] = set()
    for p in parts:
        if _NODES[p][0] == "or":
            flat.update(_NODES[p][1])
        elif p != NOTHING:
            flat.add(p)
    if not flat:
        return NOTHING
    if len(flat) == 1:
        return next(iter(flat))
    return _node(("or", frozenset(flat)))


def _star(a: int) -> int:
    if a in (NOTHING, EMPTY):
        return EMPTY
    if _NODES[a][0] == "star":
        return a
    return _node(("star", a))


def _times(a: int, lo: int, hi: int | None) -> int:
    out = EMPTY
    for _ in range(lo):
        out = _seq(out, a)
    if hi is None:
        return _seq(out, _star(a))
    tail = EMPTY
    for _ in range(hi - lo):
        tail = _or(EMPTY, _seq(a, tail))
    return _seq(out, tail)


# --- parsing (recursive descent) --------------------------------------------


def compile_pattern(pattern: str) -> int:
    pos = 0

    def peek():
        return pattern[pos] if pos < len(pattern) else ""

    def expr() -> int:
        nonlocal pos
        node = term()
        while peek() == "|":
            pos += 1
            node = _or(node, term())
        return node

    def term() -> int:
        node = EMPTY
        while peek() not in ("", "|", ")"):
            node = _seq(node, factor())
        return node

    def factor() -> int:
        nonlocal pos
        node = base()
        while peek() in ("*", "+", "?", "{"):
            c = peek()
            pos += 1
            if c == "*":
                node = _star(node)
            elif c == "+":
                node = _seq(node, _star(node))
            elif c == "?":
                node = _or(EMPTY, node)
            else:
                end = pattern.index("}", pos)
                lo_s, comma, hi_s = pattern[pos:end].partition(",")
                lo = int(lo_s) if lo_s else 0
                hi = (int(hi_s) if hi_s else None) if comma else lo
                pos = end + 1
                node = _times(node, lo, hi)
        return node

    def base() -> int:
        nonlocal pos
        c = peek()
        if c == "(":
            pos += 1
            if pattern.startswith("?:", pos):
                pos += 2
            node = expr()
            if peek() != ")":
                raise ValueError(f"unbalanced parenthesis in {pattern!r}")
            pos += 1
            return node
        if c == "[":
            end = pattern.index("]", pos)
            chars = frozenset(pattern[pos + 1:end])
            pos = end + 1
            return _sym(chars)
        if not c or c in ")*+?{":
            raise ValueError(f"unexpected {c!r} at {pos} in {pattern!r}")
        pos += 1
        return _sym(frozenset(c))

    node = expr()
    if pos != len(pattern):
        raise ValueError(f"trailing input at {pos} in {pattern!r}")
    return node


# --- derivatives ------------------------------------------------------------

_NULLABLE: dict[int, bool] = {}
_DERIV: dict[tuple[int, str], int] = {}


def nullable(n: int) -> bool:
    r = _NULLABLE.get(n)
    if r is None:
        t = _NODES[n]
        kind = t[0]
        if kind in ("empty", "star"):
            r = True
        elif kind in ("nothing", "sym"):
            r = False
        elif kind == "seq":
            r = nullable(t[1]) and nullable(t[2])
        else:
            r = any(nullable(x) for x in t[1])
        _NULLABLE[n] = r
    return r


def derive(n: int, c: str) -> int:
    key = (n, c)
    r = _DERIV.get(key)
    if r is None:
        t = _NODES[n]
        kind = t[0]
        if kind in ("nothing", "empty"):
            r = NOTHING
        elif kind == "sym":
            r = EMPTY if c in t[1] else NOTHING
        elif kind == "seq":
            r = _seq(derive(t[1], c), t[2])
            if nullable(t[1]):
                r = _or(r, derive(t[2], c))
        elif kind == "star":
            r = _seq(derive(t[1], c), n)
        else:
            r = _or(*(derive(x, c) for x in t[1]))
        _DERIV[key] = r
    return r


def full_match(pattern: str | int, s: str) -> bool:
    n = compile_pattern(pattern) if isinstance(pattern, str) else pattern
    for c in s:
        n = derive(n, c)
        if n == NOTHING:
            return False
    return nullable(n)


# --- retention ----------------------------------------------------------------


def brute_force_retain(cs: str, patterns: Sequence[str], limit: int = ORACLE_LIMIT) -> list[bool]:
    """Union of all intervals of ``cs`` that fully match some pattern."""
    if len(cs) > limit:
        raise ValueError(f"string of length {len(cs)} exceeds oracle limit {limit}")
    roots = [compile_pattern(p) for p in patterns]
    n = len(cs)
    kept = [False] * n
    for root in roots:
        for a in range(n):
            node = root
            for b in range(a, n):
                node = derive(node, cs[b])
                if node == NOTHING:
                    break
                if nullable(node):
                    for i in range(a, b + 1):
                        kept[i] = True
    return kept


def enumerate_retain(alphabet: str, max_len: int, patterns: Sequence[str]) -> Iterator[tuple[str, list[bool]]]:
    """Yield ``(s, brute_force_retain(s, patterns))`` for all strings up to ``max_len``.

    Same evaluation as `brute_force_retain`, but strings are generated depth
    first so each prefix's live derivatives are reused by its extensions.
    """
    roots = [compile_pattern(p) for p in patterns]

    def walk(s: str, live: list[tuple[int, int]], ends: list[int]):
        # live: (start, node) pairs still able to match; ends[a]: max matched end from a
        kept = [False] * len(s)
        limit = 0
        for i in range(len(s)):
            if ends[i] > limit:
                limit = ends[i]
            kept[i] = i < limit
        yield s, kept
        if len(s) == max_len:
            return
        b = len(s)
        for c in alphabet:
            new_live = []
            new_ends = ends + [0]
            for a, node in itertools.chain(live, ((b, r) for r in roots)):
                d = derive(node, c)
                if d == NOTHING:
                    continue
                new_live.append((a, d))
                if nullable(d):
                    new_ends[a] = b + 1
            yield from walk(s + c, new_live, new_ends)

    yield from walk("", [], [])
