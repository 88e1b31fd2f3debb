"""Seeded synthetic web-like corpora for tests, demos and benchmarks.

Each document mimics a crawled page: navigation boilerplate shared by a
site and by the whole crawl, a title, paragraphs of unique sentences with
section headers drawn from a shared pool, and a footer with an isolated
byline between boilerplate lines.
"""

from __future__ import annotations

import random

from .corpus_io import ENGLISH, KOREAN, Document

_GLOBAL_NAV = ["Home", "About", "Contact", "Privacy Policy", "Log in", "Search"]
_GLOBAL_FOOT = ["Share this:", "Related posts", "Leave a comment",
                "We use cookies to improve your experience. Accept"]
_HEADERS_EN = ["Ingredients", "You will need:", "Overview", "Handle", "Other Considerations",
               "Step 1", "Step 2", "Step 3", "Conclusion", "Final thoughts", "Pros", "Cons",
               "Features", "Specifications", "How it works", "Why it matters", "Tips",
               "Background", "Summary", "Introduction"]
_HEADERS_KO = ["재료", "준비물", "개요", "결론", "특징", "사용 방법", "주의 사항", "요약", "소개",
               "장점", "단점", "참고"]


class _Words:
    def __init__(self, rng: random.Random, language: str):
        self.rng = rng
        self.language = language

    def word(self) -> str:
        rng = self.rng
        if self.language == KOREAN:
            return "".join(chr(rng.randrange(0xAC00, 0xD7A4)) for _ in range(rng.randint(1, 4)))
        return "".join(rng.choice("abcdefghijklmnopqrstuvwxyz") for _ in range(rng.randint(2, 9)))

    def phrase(self, lo: int, hi: int) -> str:
        return " ".join(self.word() for _ in range(self.rng.randint(lo, hi)))

    def sentence(self) -> str:
        s = self.phrase(6, 18)
        end = "다." if self.language == KOREAN else self.rng.choice(".....?!")
        return s[0].upper() + s[1:] + end


def synthetic_corpus(n_docs: int, seed: int = 0, language: str = ENGLISH,
                     docs_per_shard: int = 100, sites: int | None = None) -> list[Document]:
    """Generate ``n_docs`` documents, deterministic in ``seed``."""
    rng = random.Random(seed)
    words = _Words(rng, language)
    n_sites = sites or max(1, n_docs // 40)
    site_nav = [[f"{words.phrase(1, 2).title()} Menu {i}" for _ in range(rng.randint(2, 4))]
                for i in range(n_sites)]
    site_foot = [f"Copyright {words.word().title()} Media. All rights reserved." for _ in range(n_sites)]
    headers = _HEADERS_KO if language == KOREAN else _HEADERS_EN
    docs = []
    for d in range(n_docs):
        site = rng.randrange(n_sites)
        lines = list(rng.sample(_GLOBAL_NAV, rng.randint(2, 4))) + site_nav[site]
        lines.append(words.phrase(3, 7).title())  # title, unique, no terminator
        for _ in range(rng.randint(2, 5)):
            if rng.random() < 0.6:
                lines.append(rng.choice(headers))
            lines.extend(words.sentence() for _ in range(rng.randint(2, 5)))
            if rng.random() < 0.3:
                # a short unpunctuated list inside the body
                lines.extend(words.phrase(2, 5) for _ in range(rng.randint(1, 5)))
                lines.append(words.sentence())
        lines.extend(rng.sample(_GLOBAL_FOOT, 2))
        lines.append(f"Posted by {words.phrase(12, 20)}")  # isolated unique byline
        lines.append(site_foot[site])
        if rng.random() < 0.5:
            lines.append("")
        docs.append(Document(lines=lines, shard_id=f"shard-{d // docs_per_shard:05d}",
                             record_id=f"<urn:synthetic:{seed}:{d}>",
                             url=f"https://site{site}.example/{d}"))
    return docs


def random_category_string(rng: random.Random, length: int, alphabet: str = "ryg") -> str:
    return "".join(rng.choice(alphabet) for _ in range(length))
