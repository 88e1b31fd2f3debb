import pytest
from hypothesis import given, strategies as st

from palf.corpus_io import Document
from palf.langid import english_gate, hangul_ratio, korean_gate, make_gate


def doc(*lines):
    return Document(list(lines))


@pytest.mark.parametrize("score,keep", [(0.65, True), (0.649, False), (1.0, True), (0.0, False)])
def test_english_threshold(score, keep):
    d = english_gate(doc("some text"), lambda _: score)
    assert d.keep is keep and d.score == score


def test_english_provider_failure_rejects():
    def boom(_):
        raise RuntimeError("model missing")

    d = english_gate(doc("x"), boom)
    assert not d.keep and d.error == "RuntimeError"
    assert not english_gate(doc("x"), lambda _: 1.5).keep


def test_english_provider_sees_joined_text():
    seen = []
    english_gate(doc("a", "b"), lambda t: seen.append(t) or 0.9)
    assert seen == ["a\nb"]


def test_korean_examples():
    assert korean_gate(doc("가나다")) .score == 1.0
    d = korean_gate(doc("가bcdefghij"))
    assert d.score == pytest.approx(0.1) and d.keep
    assert not korean_gate(doc("가bcdefghijk")).keep
    assert korean_gate(doc("abcdefghij")).score == 0.0
    assert not korean_gate(doc("   ", "")).keep
    assert not korean_gate(doc()).keep


def test_jamo_do_not_count():
    assert hangul_ratio("ㄱㄴㄷ") == 0.0
    assert hangul_ratio("힣") == 1.0


@given(st.text(), st.lists(st.sampled_from([" ", "\t", "　", " "]), max_size=5), st.integers(0, 50))
def test_korean_whitespace_invariance(text, spaces, at):
    at = min(at, len(text))
    padded = text[:at] + "".join(spaces) + text[at:]
    assert korean_gate(doc(padded)) == korean_gate(doc(text))
    assert korean_gate(doc(text)) == korean_gate(doc(text))


def test_make_gate():
    assert make_gate("korean")(doc("한국어 문서")).keep
    assert make_gate("english", 0.5, lambda _: 0.6)(doc("x")).keep
    with pytest.raises(ValueError):
        make_gate("english")
