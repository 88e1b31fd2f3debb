"""
Pattern-aware filtering of a single page
========================================

Compare plain line dedup and trailing-punctuation filtering with their
pattern-aware versions on one synthetic page.
"""

from palf import count_store
from palf.categorizer import ENGLISH_PLD, pld_categorize, ptf_categorize
from palf.pipeline import CONFIGURATIONS, apply, make_config
from palf.span_engine import pld_retain, ptf_retain
from palf.synthetic import synthetic_corpus

docs = synthetic_corpus(2000, seed=3)
store = count_store.build_store(docs)
doc = docs[5]

# One symbol per line: r for boilerplate, y for repeated, g for distinctive.
cs = pld_categorize(doc, store, ENGLISH_PLD)
print(cs)
print("".join("k" if keep else "." for keep in pld_retain(cs)))

# The punctuation view: g ends a sentence, r does not.
ps = ptf_categorize(doc)
print(ps)
print("".join("k" if keep else "." for keep in ptf_retain(ps, 3)))

# Same page through each configuration.
for name in CONFIGURATIONS:
    out = apply(make_config("english", name), doc, store)
    lines = out.lines if out else []
    print(f"--- {name}: {len(lines)} of {len(doc.lines)} lines")
    for line in lines[:6]:
        print("   ", line[:70])
