import json

from starlab.gallery import from_spec
from starlab.report import SCHEMA_VERSION, analyze, failures, run_checks, tally, flatten


def test_analyze_z6():
    rep = analyze(from_spec("zn:6"))
    assert rep["schema_version"] == SCHEMA_VERSION
    assert rep["lattices"]["perp"] == {"size": 4, "orthomodular": True, "modular": True,
                                      "centre_size": 4, "axioms": "pass"}
    assert rep["summary"]["fail"] == 0
    assert "timing" not in rep
    json.dumps(rep)


def test_analyze_is_deterministic_and_timing_opt_in():
    a = json.dumps(analyze(from_spec("bool:2")))
    b = json.dumps(analyze(from_spec("bool:2")))
    assert a == b
    assert set(analyze(from_spec("zn:6"), timing=True)["timing"]) == {
        "semigroup", "subsets", "polarity", "structure", "equivalence", "decomposition"}


def test_improper_report_is_all_gated():
    S = from_spec("matring:2,2")
    rep = analyze(S)
    assert rep["semigroup"]["proper"] is False
    assert rep["semigroup"]["improper_witness"] is not None
    assert rep["summary"]["fail"] == 0
    assert not failures(S)


def test_large_instance_uses_sampled_correspondence():
    groups = run_checks(from_spec("zn:17"))
    assert [r.name for r in groups["subsets"]] == ["sampled_correspondence"]
    assert tally(flatten(groups))["fail"] == 0
