"""
Checking the span scanners against the oracle
=============================================

The production scanners are linear in the number of lines. The oracle tests
every interval with regex derivatives. Both must agree on every string.
"""

import time

from palf.oracle import brute_force_retain, enumerate_retain
from palf.span_engine import PLD_PATTERNS, PatternSet, match_retain, pld_retain, ptf_patterns, ptf_retain

cs = "rrrrygggggggggrgygg"
print(cs)
print(pld_retain(cs) == brute_force_retain(cs, PLD_PATTERNS))

t0 = time.perf_counter()
bad = sum(pld_retain(s) != m for s, m in enumerate_retain("ryg", 9, PLD_PATTERNS))
print("pld mismatches up to length 9:", bad, f"{time.perf_counter() - t0:.1f}s")

for k in (0, 1, 3):
    bad = sum(ptf_retain(s, k) != m for s, m in enumerate_retain("rg", 12, ptf_patterns(k)))
    print(f"ptf k={k} mismatches up to length 12:", bad)

# Custom pattern sets go through the automaton matcher instead.
custom = PatternSet(("g{3,}", "g+yg+"), "ryg")
s = "gygggrgyg"
print(s, match_retain(s, custom) == brute_force_retain(s, custom.patterns))
