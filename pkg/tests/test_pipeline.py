import dataclasses

import pytest

from worked_examples import BAT_KEPT_ROWS, bat_document, bat_store, guide_document
from palf.categorizer import PldThresholds
from palf.corpus_io import Document
from palf.count_store import build_store
from palf.pipeline import (
    CONFIGURATIONS, PRESETS, ConfigError, FilterConfig, apply, make_config, parse_config, preset,
    run_corpus,
)
from palf.langid import make_gate
from palf.synthetic import synthetic_corpus


def test_bat_page_pld():
    doc = bat_document()
    out = apply(preset("english-pld"), doc, bat_store())
    assert out.lines == [doc.lines[i - 1] for i in BAT_KEPT_ROWS]


def test_bat_guide_ptf():
    doc = guide_document()
    assert apply(FilterConfig(stages=("PTF",), ptf_k=3), doc).lines == doc.lines


def test_baseline_unchanged():
    doc = guide_document()
    out = apply(preset("english-baseline"), doc)
    assert out == doc and out is not doc


def test_empty_documents_dropped():
    assert apply(preset("english-baseline"), Document([])) is None
    assert apply(FilterConfig(stages=("TF",)), Document(["no punctuation"])) is None


def test_missing_store_is_config_error():
    with pytest.raises(ConfigError):
        apply(preset("english-ld"), Document(["x"]))
    with pytest.raises(ConfigError):
        run_corpus(preset("korean-pld"), [], None)


def test_stage_order_rules():
    with pytest.raises(ConfigError):
        FilterConfig(stages=("PTF", "PLD"))
    with pytest.raises(ConfigError):
        FilterConfig(stages=("TF", "LD"))
    with pytest.raises(ConfigError):
        FilterConfig(stages=("PLD", "PLD"))
    with pytest.raises(ConfigError):
        FilterConfig(stages=("XX",))
    FilterConfig(stages=("PLD", "TF"))


def test_presets_cover_configurations():
    assert set(PRESETS) == {f"{l}-{c}" for l in ("english", "korean") for c in CONFIGURATIONS}
    assert preset("english-pld").pld == PldThresholds(1000, 1)
    assert preset("korean-pld").pld == PldThresholds(50, 3)
    assert preset("korean-pld-ptf").ptf_k == 15 and preset("english-pld-ptf").ptf_k == 3


def test_ptf_recomputed_after_pld():
    # PLD removes the isolated line between the two blocks; PTF then sees the
    # unpunctuated header directly after a sentence
    lines = ["A one.", "A two.", "Header", "Boiler", "B one.", "B two."]
    counts = {"Header": 1, "Boiler": 5000}
    store = build_store([])
    from palf.normalizer import hash_line
    for line in lines:
        store.entries[hash_line(line)] = counts.get(line, 1)
    cfg = make_config("english", "pld-ptf", ptf_k=1)
    out = apply(cfg, Document(lines), store)
    # PLD keeps all (gap "gr" inside g-runs is short), PTF drops the two-line red run
    assert out.lines == ["A one.", "A two.", "B one.", "B two."]
    out2 = apply(dataclasses.replace(cfg, ptf_k=2), Document(lines), store)
    assert out2.lines == lines


def test_parse_config():
    cfg = parse_config("""
        # comment
        preset = korean-pld-ptf
        ptf_k = 7
        punct = . ? ! " ' 。
        strip_whitespace = false
        counts_path = counts.palf
    """)
    assert cfg.language == "korean" and cfg.stages == ("PLD", "PTF") and cfg.ptf_k == 7
    assert "。" in cfg.punct.terminators and not cfg.punct.strip_whitespace
    assert cfg.counts_path == "counts.palf" and cfg.pld == PldThresholds(50, 3)
    cfg = parse_config("language = korean\nstages = pld\npld_r = 100\npld_g = 5\n")
    assert cfg.stages == ("PLD",) and cfg.pld == PldThresholds(100, 5) and cfg.ptf_k == 15


@pytest.mark.parametrize("text", [
    "bogus = 1", "stages = PTF, PLD", "pld_r = 2\npld_g = 3", "ptf_k = -1", "ptf_k = x",
    "no equals sign", "preset = nope", "pld_patterns = g{2", "language = french",
    "ptf_k = 1\nptf_k = 2",
])
def test_parse_config_errors(text):
    with pytest.raises(ConfigError):
        parse_config(text)


def test_custom_patterns_from_config():
    cfg = parse_config("stages = PTF\nptf_patterns = g+; g+r{,1}g+")
    assert apply(cfg, Document(["a.", "b", "c."])).lines == ["a.", "b", "c."]
    assert apply(cfg, Document(["a.", "b", "b2", "c."])).lines == ["a.", "c."]


def test_run_corpus_report():
    docs = [Document(["Keep me.", "drop me"], "s", "1"), Document(["nothing here"], "s", "2")]
    out, rep = run_corpus(FilterConfig(stages=("TF",)), docs)
    out = list(out)
    assert [d.record_id for d in out] == ["1"]
    assert (rep.docs_in, rep.docs_out, rep.lines_in, rep.lines_out) == (2, 1, 3, 1)
    assert rep.ws_tokens_in == 6 and rep.ws_tokens_out == 2
    assert rep.chars_out == len("Keep me.")
    assert sum(rep.per_stage_drops.values()) == rep.lines_in - rep.lines_out


def test_run_corpus_empty():
    out, rep = run_corpus(preset("english-baseline"), [])
    assert list(out) == [] and rep.to_dict()["docs_in"] == 0


def test_lang_gate_in_pipeline():
    docs = [Document(["안녕하세요 반갑습니다."]), Document(["hello there."])]
    cfg = dataclasses.replace(preset("korean-baseline"), lang_gate=True)
    out, rep = run_corpus(cfg, docs, gate=make_gate("korean"))
    assert len(list(out)) == 1 and rep.docs_rejected_lang == 1
    assert rep.per_stage_drops == {"lang": 1}


def test_report_invariants_on_synthetic():
    docs = synthetic_corpus(300, seed=2)
    store = build_store(docs)
    for name in CONFIGURATIONS:
        out, rep = run_corpus(make_config("english", name), docs, store)
        out = list(out)
        assert rep.docs_out == len(out) <= rep.docs_in
        assert rep.lines_out <= rep.lines_in and rep.chars_out <= rep.chars_in
        assert sum(rep.per_stage_drops.values()) == rep.lines_in - rep.lines_out


def test_pld_kept_lines_are_distinct_or_embedded():
    docs = synthetic_corpus(300, seed=4)
    store = build_store(docs)
    from palf.categorizer import pld_categorize
    from palf.span_engine import pld_retain
    cfg = preset("english-pld")
    for doc in docs:
        cs = pld_categorize(doc, store, cfg.pld)
        mask = pld_retain(cs)
        counts = store.lookup_many(doc.lines)
        for i, k in enumerate(mask):
            if k and counts[i] > 1:
                # embedded: distinctive lines exist on both sides within the block
                assert "g" in cs[:i] and "g" in cs[i + 1:]
        out = apply(cfg, doc, store)
        assert (out.lines if out else []) == [l for l, k in zip(doc.lines, mask) if k]


def test_tf_subset_of_ptf_per_document():
    docs = synthetic_corpus(200, seed=9)
    tf, ptf = FilterConfig(stages=("TF",)), FilterConfig(stages=("PTF",), ptf_k=3)
    for doc in docs:
        a, b = apply(tf, doc), apply(ptf, doc)
        assert set(a.lines if a else []) <= set(b.lines if b else [])


def test_workers_match_serial():
    docs = synthetic_corpus(200, seed=5)
    store = build_store(docs)
    cfg = preset("english-pld-ptf")
    serial, r1 = run_corpus(cfg, docs, store)
    serial = list(serial)
    par, r2 = run_corpus(cfg, docs, store, workers=3, batch_size=64)
    assert list(par) == serial and r1 == r2
