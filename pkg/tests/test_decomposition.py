import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from starlab import bits
from starlab.decomposition import (
    DECOMPOSERS,
    KINDS,
    decomposition_check,
    decomposition_suite,
    finite_decomposition,
    type_I1_decomposition,
    type_III_decomposition,
    verify_decomposition,
)
from starlab.errors import HypothesisNotMet
from starlab.fuzz import random_instance
from starlab.gallery import from_spec
from starlab.semigroup import is_proper

instances = st.integers(0, 2**32).map(lambda seed: random_instance(random.Random(seed)))


@settings(max_examples=40, deadline=None)
@given(instances, st.sampled_from(KINDS))
def test_candidates_match_definition_oracle(S, kind):
    try:
        res = DECOMPOSERS[kind](S)
    except HypothesisNotMet:
        return
    assert res.unique and verify_decomposition(S, res)
    assert [oracles.to_set(res.A)] == oracles.decomposition(S, kind)


@pytest.mark.parametrize("spec", ["zn:6", "zn:30", "bool:2", "bool:3", "znring:10", "matring:2,3"])
def test_decompositions_unique_on_gallery(spec):
    S = from_spec(spec)
    for r in decomposition_suite(S):
        assert not r.failed, r.to_dict()
    res = decomposition_suite(S)
    if res[0] and res[1]:
        assert res[1].stats["inside_type_I"]


def test_commutative_instance_is_all_type_I1():
    # every annihilator of Z_30 is finite, so A is the whole semigroup
    S = from_spec("zn:30")
    r = type_I1_decomposition(S)
    assert r.A == S.full
    assert finite_decomposition(S).A == S.full


def test_bool3_finite_part_is_trivial():
    # regression values from the exhaustive sweep over P^nabla = {{0}, S}
    S = from_spec("bool:3")
    assert type_I1_decomposition(S).A == S.zero_mask
    assert finite_decomposition(S).A == S.zero_mask
    assert type_III_decomposition(S).A == S.full
    assert decomposition_check(S, "type_III")


def test_improper_raises_hypothesis_not_met():
    S = from_spec("zn:4")
    assert not is_proper(S)
    for fn in DECOMPOSERS.values():
        with pytest.raises(HypothesisNotMet) as exc:
            fn(S)
        assert exc.value.failed == ["proper"]


def test_result_serializes():
    d = type_I1_decomposition(from_spec("zn:6")).to_dict()
    assert d["A"] == list(range(6)) and d["unique"] and d["candidates"] == [d["A"]]
    assert bits.indices(bits.from_indices(d["A"])) == d["A"]
