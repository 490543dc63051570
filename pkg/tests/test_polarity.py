import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from starlab import bits
from starlab.errors import CapExceeded, ForeignElement
from starlab.fuzz import random_instance
from starlab.gallery import from_spec
from starlab.polarity import (
    KINDS,
    all_polars,
    build_relation,
    centre,
    check_modular,
    check_orthomodular,
    closed_lattice,
    del_relation_check,
    hasse_edges,
    intersection_closure,
    lbotprp_check,
    lperpequiv_check,
    nabla_sup_check,
    proper_product_check,
    to_dot,
    triequiv_check,
)
from starlab.semigroup import is_proper

instances = st.integers(0, 2**32).map(lambda seed: random_instance(random.Random(seed)))


@settings(max_examples=40, deadline=None)
@given(instances, st.sampled_from(KINDS), st.integers(0, 2**6 - 1), st.integers(0, 2**6 - 1))
def test_galois_laws(S, kind, T, U):
    rel = build_relation(S, kind, check=False)
    T &= S.full
    U &= S.full
    if T & ~U == 0:
        assert rel.polar(U) & ~rel.polar(T) == 0  # order reversing
    assert T & ~rel.closure(T) == 0  # extensive
    assert rel.polar(rel.closure(T)) == rel.polar(T)  # triple polar
    assert rel.closure(rel.closure(T)) == rel.closure(T)


@settings(max_examples=30, deadline=None)
@given(instances, st.sampled_from(KINDS))
def test_relation_and_closed_family_match_oracle(S, kind):
    rel = build_relation(S, kind, check=False)
    assert rel.matrix.tolist() == oracles.relation_table(S, kind)
    lat = closed_lattice(S, kind, check=False)
    assert {oracles.to_set(m) for m in lat.closed} == oracles.closed_family(S, kind)


@settings(max_examples=30, deadline=None)
@given(instances)
def test_all_polars_vector_matches_scalar(S):
    rel = build_relation(S, "perp", check=False)
    vec = all_polars(S, "perp")
    assert [int(v) for v in vec] == [rel.polar(T) for T in range(1 << S.n)]


@settings(max_examples=40, deadline=None)
@given(instances)
def test_lattice_axioms_on_proper_instances(S):
    if not is_proper(S):
        return
    for kind in KINDS:
        lat = closed_lattice(S, kind)
        assert lat.axioms, lat.axioms.to_dict()


def test_z6_golden_lattice():
    S = from_spec("zn:6")
    lat = closed_lattice(S, "perp")
    assert [bits.indices(m) for m in lat.closed] == [[0], [0, 3], [0, 2, 4], [0, 1, 2, 3, 4, 5]]
    assert check_orthomodular(lat) and check_modular(lat)
    assert centre(lat) == lat.closed
    assert len(hasse_edges(lat)) == 4


def test_z6_dot_is_stable():
    dot = to_dot(closed_lattice(from_spec("zn:6"), "perp"))
    assert dot == (
        'digraph "zn:6 perp" {\n'
        "  rankdir=BT;\n"
        "  node [shape=box];\n"
        '  n0 [label="{0}"];\n'
        '  n1 [label="{0,3}"];\n'
        '  n2 [label="{0,2,4}"];\n'
        '  n3 [label="{0,1,2,3,4,5}"];\n'
        "  n0 -> n1;\n  n0 -> n2;\n  n1 -> n3;\n  n2 -> n3;\n}\n"
    )
    assert dot == to_dot(closed_lattice(from_spec("zn:6"), "perp"))


def test_lattice_operations_and_foreign_elements():
    lat = closed_lattice(from_spec("zn:6"), "perp")
    a, b = bits.from_indices([0, 3]), bits.from_indices([0, 2, 4])
    assert lat.ortho(a) == b
    assert lat.join(a, b) == lat.top
    assert lat.meet(a, b) == 1
    assert lat.sup([a, b]) == lat.top and lat.inf([a, b]) == 1
    assert lat.interval(1, a) == [1, a]
    with pytest.raises(ForeignElement):
        lat.ortho(bits.from_indices([0, 1]))


def test_orthomodular_matches_oracle(proper_small):
    lat = closed_lattice(proper_small, "perp")
    fam = [oracles.to_set(m) for m in lat.closed]
    ortho = lambda A: oracles.to_set(lat.ortho(bits.from_indices(sorted(A))))
    assert bool(check_orthomodular(lat)) == oracles.orthomodular(fam, ortho)


def test_intersection_closure_cap():
    with pytest.raises(CapExceeded):
        intersection_closure([1 << i ^ 0xFF for i in range(8)], 0xFF, cap=10)


def test_nabla_family_properties_from_text(proper_small):
    # T^nabla = T^perp = T^L for every T in P^nabla, and P^nabla sits in P^perp
    S = proper_small
    N = closed_lattice(S, "nabla")
    Pp = closed_lattice(S, "perp")
    for kind in ("perp", "L"):
        rel = build_relation(S, kind)
        assert all(rel.polar(T) == N.relation.polar(T) for T in N.closed)
    assert set(N.closed) <= set(Pp.closed)


@pytest.mark.parametrize("spec", ["zn:6", "zn:30", "bool:2", "znring:10", "matring:2,3", "zn:2*bool:2"])
def test_theorem_checks_on_gallery(spec):
    S = from_spec(spec)
    for check in (triequiv_check, proper_product_check, lperpequiv_check, nabla_sup_check, lbotprp_check):
        r = check(S)
        assert r, r.to_dict()
    assert del_relation_check(closed_lattice(S, "perp"), build_relation(S, "nabla"))


def test_lbotprp_sampled_mode_matches_exhaustive():
    S = from_spec("zn:10")
    assert lbotprp_check(S, exhaustive_cap=12).stats["mode"] == "exhaustive"
    assert lbotprp_check(S, exhaustive_cap=4, samples=64).stats["mode"] == "sampled"


def test_improper_instances_are_gated():
    S = from_spec("zn:4")
    for check in (proper_product_check, lperpequiv_check, lbotprp_check):
        assert check(S).status == "hypothesis_not_met"


def test_bot4_equals_perp_on_proper(proper_small):
    S = proper_small
    assert closed_lattice(S, "bot4").closed == closed_lattice(S, "perp").closed
