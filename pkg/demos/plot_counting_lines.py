"""
Counting lines across a document set
====================================

Build a document-frequency count map from a small synthetic crawl, save it
in the binary format and look a few lines up again.
"""

import os
import tempfile

from palf import count_store
from palf.synthetic import synthetic_corpus

# A few hundred pages from a handful of sites. Navigation and footer lines
# repeat across pages; sentences in the body are unique.
docs = synthetic_corpus(400, seed=1)
print(docs[0].text[:400])

# Each page counts a line at most once, whatever its casing or digits.
store = count_store.build_store(docs)
print(len(store), "distinct normalized lines over", store.total_documents, "documents")

for line in ["Home", "HOME", "Share this:", docs[0].lines[-2], docs[0].lines[-3]]:
    print(f"{store.lookup(line):6d}  {line[:60]!r}")

# Partial maps built on disjoint slices merge to the same map.
parts = [count_store.build_store(docs[i::4]) for i in range(4)]
assert count_store.merge_all(parts).entries == store.entries

path = os.path.join(tempfile.mkdtemp(), "counts.palf")
count_store.save_file(store, path)
print(path, os.path.getsize(path), "bytes", count_store.load_file(path).meta)
