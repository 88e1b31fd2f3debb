"""Span retention over category strings.

A line survives when some contiguous run of lines containing it fully
matches one of the retention patterns. For the built-in pattern sets this
is computed in linear time from the run-length structure of the string:

* PLD: every run of two or more ``g`` is kept. Runs of ``g`` joined by
  gaps that are all ``y`` (any length), or by gaps of at most three
  ``y``/``r`` symbols, form chains; within a chain everything between the
  first and the last ``g``-run of length >= 2 is kept.
* PTF: every ``g`` is kept, and so is every run of at most ``k`` ``r``
  symbols that has a ``g`` on both sides.

Custom pattern sets go through a small automaton-based matcher over the
same regex subset (literals, ``[...]`` classes, groups, ``|``, ``*``,
``+``, ``?`` and ``{m}``, ``{m,}``, ``{,n}``, ``{m,n}``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

PLD_ALPHABET = "ryg"
PTF_ALPHABET = "rg"

PLD_PATTERNS = (
    "g{2,}",
    "g{2,}(y+g{1,})+g",
    "g{2,}([yr]{0,3}g{1,})+g",
)
PLD_MAX_MIXED_GAP = 3

DEFAULT_PTF_K = {"english": 3, "korean": 15}


def ptf_patterns(k: int) -> tuple[str, str]:
    return ("g+", f"g+r{{,{k}}}g+")


class PatternError(ValueError):
    pass


def _check_alphabet(cs: str, alphabet: str) -> None:
    bad = set(cs) - set(alphabet)
    if bad:
        raise ValueError(f"symbols {sorted(bad)} outside alphabet {alphabet!r}")


def _runs(cs: str, symbol: str) -> list[tuple[int, int]]:
    return [m.span() for m in re.finditer(re.escape(symbol) + "+", cs)]


def pld_retain(cs: str) -> list[bool]:
    """Retention mask for a {r, y, g} category string under the PLD patterns."""
    _check_alphabet(cs, PLD_ALPHABET)
    kept = [False] * len(cs)
    runs = _runs(cs, "g")
    for s, e in runs:
        if e - s >= 2:
            kept[s:e] = [True] * (e - s)

    def yellow_gap(gap: str) -> bool:
        return "r" not in gap

    def short_gap(gap: str) -> bool:
        return len(gap) <= PLD_MAX_MIXED_GAP

    for gap_ok in (yellow_gap, short_gap):
        i = 0
        while i < len(runs):
            j = i
            while j + 1 < len(runs) and gap_ok(cs[runs[j][1]:runs[j + 1][0]]):
                j += 1
            anchors = [t for t in range(i, j + 1) if runs[t][1] - runs[t][0] >= 2]
            if len(anchors) >= 2:
                a, b = runs[anchors[0]][0], runs[anchors[-1]][1]
                kept[a:b] = [True] * (b - a)
            i = j + 1
    return kept


def ptf_retain(cs: str, k: int) -> list[bool]:
    """Retention mask for a {r, g} category string under the PTF patterns."""
    if k < 0:
        raise ValueError("k must be >= 0")
    _check_alphabet(cs, PTF_ALPHABET)
    n = len(cs)
    kept = [c == "g" for c in cs]
    for s, e in _runs(cs, "r"):
        if s > 0 and e < n and e - s <= k:
            kept[s:e] = [True] * (e - s)
    return kept


# ---------------------------------------------------------------------------
# generic matcher for custom pattern sets


class _Parser:
    def __init__(self, pattern: str):
        self.p = pattern
        self.i = 0

    def error(self, msg: str) -> PatternError:
        return PatternError(f"{msg} at position {self.i} in {self.p!r}")

    def peek(self) -> str | None:
        return self.p[self.i] if self.i < len(self.p) else None

    def parse(self):
        node = self.alt()
        if self.i != len(self.p):
            raise self.error("unexpected character")
        return node

    def alt(self):
        branches = [self.concat()]
        while self.peek() == "|":
            self.i += 1
            branches.append(self.concat())
        return branches[0] if len(branches) == 1 else ("alt", branches)

    def concat(self):
        items = []
        while self.peek() not in (None, "|", ")"):
            items.append(self.repeat())
        return ("cat", items)

    def repeat(self):
        node = self.atom()
        while True:
            c = self.peek()
            if c == "*":
                self.i += 1
                node = ("rep", node, 0, None)
            elif c == "+":
                self.i += 1
                node = ("rep", node, 1, None)
            elif c == "?":
                self.i += 1
                node = ("rep", node, 0, 1)
            elif c == "{":
                close = self.p.find("}", self.i)
                if close < 0:
                    raise self.error("unterminated '{'")
                body = self.p[self.i + 1:close]
                m = re.fullmatch(r"(\d*)(,?)(\d*)", body)
                if not m or (not m.group(1) and not m.group(3)):
                    raise self.error(f"bad repetition {{{body}}}")
                lo = int(m.group(1) or 0)
                hi = int(m.group(3)) if m.group(3) else (None if m.group(2) else lo)
                if hi is not None and hi < lo:
                    raise self.error("repetition bounds out of order")
                self.i = close + 1
                node = ("rep", node, lo, hi)
            else:
                return node

    def atom(self):
        c = self.peek()
        if c == "(":
            self.i += 1
            if self.p.startswith("?:", self.i):
                self.i += 2
            node = self.alt()
            if self.peek() != ")":
                raise self.error("missing ')'")
            self.i += 1
            return node
        if c == "[":
            close = self.p.find("]", self.i)
            if close < 0:
                raise self.error("unterminated '['")
            chars = frozenset(self.p[self.i + 1:close])
            if not chars:
                raise self.error("empty character class")
            self.i = close + 1
            return ("chars", chars)
        if c is None or c in "*+?{}])|\\.^$":
            raise self.error(f"unsupported or misplaced {c!r}")
        self.i += 1
        return ("chars", frozenset(c))


def _chars_of(node) -> set[str]:
    kind = node[0]
    if kind == "chars":
        return set(node[1])
    if kind in ("cat", "alt"):
        return set().union(*(_chars_of(x) for x in node[1]))
    return _chars_of(node[1])


class _Automaton:
    """Thompson NFA with a lazily built DFA on top."""

    def __init__(self, node):
        self.eps: list[list[int]] = []
        self.edges: list[list[tuple[frozenset, int]]] = []
        start, self.accept = self._build(node)
        self.start = self._closure({start})
        self._delta: dict[tuple[frozenset, str], frozenset] = {}

    def _state(self) -> int:
        self.eps.append([])
        self.edges.append([])
        return len(self.eps) - 1

    def _build(self, node) -> tuple[int, int]:
        kind = node[0]
        s = self._state()
        if kind == "chars":
            e = self._state()
            self.edges[s].append((node[1], e))
            return s, e
        if kind == "cat":
            cur = s
            for item in node[1]:
                a, b = self._build(item)
                self.eps[cur].append(a)
                cur = b
            return s, cur
        if kind == "alt":
            e = self._state()
            for item in node[1]:
                a, b = self._build(item)
                self.eps[s].append(a)
                self.eps[b].append(e)
            return s, e
        _, inner, lo, hi = node
        cur = s
        for _ in range(lo):
            a, b = self._build(inner)
            self.eps[cur].append(a)
            cur = b
        e = self._state()
        self.eps[cur].append(e)
        if hi is None:
            a, b = self._build(inner)
            self.eps[cur].append(a)
            self.eps[b].append(cur)
        else:
            for _ in range(hi - lo):
                a, b = self._build(inner)
                self.eps[cur].append(a)
                self.eps[b].append(e)
                cur = b
        return s, e

    def _closure(self, states) -> frozenset:
        seen = set(states)
        stack = list(states)
        while stack:
            for t in self.eps[stack.pop()]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)

    def step(self, states: frozenset, ch: str) -> frozenset:
        key = (states, ch)
        nxt = self._delta.get(key)
        if nxt is None:
            moved = {t for s in states for chars, t in self.edges[s] if ch in chars}
            nxt = self._delta[key] = self._closure(moved)
        return nxt


@dataclass(frozen=True)
class PatternSet:
    """Retention patterns over a category alphabet (full-match semantics)."""

    patterns: tuple[str, ...]
    alphabet: str
    _automata: tuple = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "patterns", tuple(self.patterns))
        if not self.patterns:
            raise PatternError("a pattern set needs at least one pattern")
        automata = []
        for pat in self.patterns:
            node = _Parser(pat).parse()
            extra = _chars_of(node) - set(self.alphabet)
            if extra:
                raise PatternError(f"pattern {pat!r} uses symbols {sorted(extra)} "
                                   f"outside alphabet {self.alphabet!r}")
            automata.append(_Automaton(node))
        object.__setattr__(self, "_automata", tuple(automata))


PLD_PATTERN_SET = PatternSet(PLD_PATTERNS, PLD_ALPHABET)


def ptf_pattern_set(k: int) -> PatternSet:
    return PatternSet(ptf_patterns(k), PTF_ALPHABET)


def match_retain(cs: str, pattern_set: PatternSet) -> list[bool]:
    """Retention mask computed with the automaton matcher (any pattern set)."""
    _check_alphabet(cs, pattern_set.alphabet)
    n = len(cs)
    reach = [0] * n
    for auto in pattern_set._automata:
        for a in range(n):
            states = auto.start
            for b in range(a, n):
                states = auto.step(states, cs[b])
                if not states:
                    break
                if auto.accept in states and b + 1 > reach[a]:
                    reach[a] = b + 1
    kept = [False] * n
    limit = 0
    for i in range(n):
        limit = max(limit, reach[i])
        kept[i] = i < limit
    return kept


_PTF_RE = re.compile(r"g\+r\{,(\d+)\}g\+")


def retain(cs: str, pattern_set: PatternSet) -> list[bool]:
    """Retention mask, using the linear scanners for the built-in sets."""
    if pattern_set.patterns == PLD_PATTERNS and pattern_set.alphabet == PLD_ALPHABET:
        return pld_retain(cs)
    if len(pattern_set.patterns) == 2 and pattern_set.patterns[0] == "g+":
        m = _PTF_RE.fullmatch(pattern_set.patterns[1])
        if m and pattern_set.alphabet == PTF_ALPHABET:
            return ptf_retain(cs, int(m.group(1)))
    return match_retain(cs, pattern_set)
