import random

import pytest
from hypothesis import given, strategies as st

from worked_examples import QUILT_PAGE, BAT_PAGE, BAT_GUIDE, bat_document, bat_store, guide_document
from palf.categorizer import (
    ENGLISH_PLD, KOREAN_PLD, PLD_G_GRID, PLD_R_GRID, PldThresholds, PunctuationSet,
    ld_keep, pld_categorize, pld_categorize_counts, ptf_categorize, tf_keep,
)
from palf.count_store import CountStore
from palf.normalizer import hash_line


def test_bat_page_categories():
    expected = "".join(cat for _, _, cat in BAT_PAGE)
    assert pld_categorize(bat_document(), bat_store(), ENGLISH_PLD) == expected


def test_bat_page_shown_rows():
    # rows 3, 5, 6, 15, 17
    assert pld_categorize_counts([3533305, 6, 1, 1608, 391], ENGLISH_PLD) == "rygry"


@pytest.mark.parametrize("th,counts,expect", [
    (ENGLISH_PLD, [1, 2, 1000, 1001, 0], "gyyrg"),
    (KOREAN_PLD, [51, 50, 4, 3, 1], "ryygg"),
])
def test_threshold_boundaries(th, counts, expect):
    assert pld_categorize_counts(counts, th) == expect


def test_threshold_validation():
    with pytest.raises(ValueError):
        PldThresholds(3, 3)
    with pytest.raises(ValueError):
        PldThresholds(10, 0)
    for r in PLD_R_GRID:
        for g in PLD_G_GRID:
            PldThresholds(r, g)


@given(st.lists(st.integers(0, 70000), max_size=50), st.sampled_from(PLD_R_GRID), st.sampled_from(PLD_G_GRID))
def test_pld_monotone(counts, r, g):
    th = PldThresholds(r, g)
    rank = {"g": 0, "y": 1, "r": 2}
    cs = pld_categorize_counts(counts, th)
    assert len(cs) == len(counts) and set(cs) <= set("ryg")
    pairs = sorted(zip(counts, cs))
    assert all(rank[a[1]] <= rank[b[1]] for a, b in zip(pairs, pairs[1:]))


def test_bat_guide_categories():
    assert ptf_categorize(guide_document()) == "grgrrrg"


def test_quilt_page_punctuation():
    for line, _, punc in QUILT_PAGE:
        assert tf_keep(line) is punc, line
    assert ptf_categorize(["T-SHIRT QUILTS"]) == "r"


def test_trailing_whitespace():
    assert tf_keep("done.   ")
    assert not tf_keep("done.   ", PunctuationSet(strip_whitespace=False))
    assert not tf_keep("")
    assert not tf_keep("   ")
    assert tf_keep('he said "hi"') and tf_keep("it's 'ok'")


def test_custom_terminators():
    ko = PunctuationSet(frozenset({".", "。", "다"}))
    assert tf_keep("끝났다", ko) and tf_keep("끝。", ko) and not tf_keep("끝!", ko)
    multi = PunctuationSet(frozenset({"...", "?!"}))
    assert tf_keep("well...", multi) and tf_keep("what?!", multi) and not tf_keep("end.", multi)
    with pytest.raises(ValueError):
        PunctuationSet(frozenset())


def test_categories_use_raw_line():
    # the ideographic full stop maps to '.' for hashing but is not a default terminator
    assert not tf_keep("끝。")


def test_ld_keep():
    s = CountStore()
    s.entries[hash_line("one")] = 1
    s.entries[hash_line("two")] = 2
    assert ld_keep("one", s) and not ld_keep("two", s) and ld_keep("absent", s)


def test_ptf_and_tf_agree():
    rng = random.Random(5)
    alphabet = list("ab .?!\"' \t:;")
    for _ in range(2000):
        line = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 6)))
        assert (ptf_categorize([line]) == "g") == tf_keep(line)


def test_english_green_equals_ld_keep():
    for c in range(0, 5000, 7):
        assert (pld_categorize_counts([c], ENGLISH_PLD) == "g") == (c <= 1)
