"""The bundled identity corpus: structural sanity, harness behavior on a
corrupted entry, and spot verification of one entry per kind.  The full
corpus is replayed by the acceptance suite."""

import pytest

from shufflefp import golden

KINDS = {
    "sigma_inv_rational",
    "iteration",
    "iteration_denominator",
    "algebraic_relation",
    "closed_form",
    "variant_image",
    "fixed_point",
}


def test_corpus_structure():
    entries = golden.load_corpus()
    assert len(entries) >= 70
    ids = [e["id"] for e in entries]
    assert len(ids) == len(set(ids))
    for e in entries:
        assert e["kind"] in KINDS
        assert e["p"] in (2, 3, 5)
        assert e["section"]


def test_every_kind_is_represented():
    kinds = {e["kind"] for e in golden.load_corpus()}
    assert kinds == KINDS


def test_one_entry_per_kind_verifies():
    entries = golden.load_corpus()
    seen = set()
    picks = []
    for e in entries:
        if e["kind"] not in seen and e.get("order", 0) <= 1024:
            seen.add(e["kind"])
            picks.append(e)
    for e in picks:
        report = golden.verify_entry(e)
        assert report["ok"], report


def test_corrupted_expected_value_fails_with_divergence():
    entry = {
        "id": "fixture_corrupt",
        "section": "fixture",
        "kind": "variant_image",
        "p": 2,
        "input": "inv_1px",
        "expected": "tm_pair",  # deliberately wrong
        "order": 64,
    }
    report = golden.verify_entry(entry)
    assert not report["ok"]
    assert report["first_divergence"] is not None


def test_corrupted_rational_identity_fails():
    entry = {
        "id": "fixture_wrong_fraction",
        "section": "fixture",
        "kind": "sigma_inv_rational",
        "p": 2,
        "input": "1+X",
        "expected": "1/(1+X+X^2)",
    }
    report = golden.verify_entry(entry)
    assert not report["ok"]


def test_verify_all_filters():
    one = golden.verify_all(ids={"sigma_inv_1px"})
    assert len(one) == 1 and one[0]["ok"]
    section = golden.verify_all(sections={"variant-form"})
    assert section and all(r["ok"] for r in section)
    assert golden.verify_all(ids={"no_such_id"}) == []


def test_reports_carry_method_and_timing():
    report = golden.verify_all(ids={"sigma_inv_1px"})[0]
    assert report["method"] == "degree_bound_certification"
    assert report["timing_ms"] >= 0
    assert "order_checked" in report
