import numpy as np
import pytest

from starlab import bits
from starlab.errors import AxiomViolation, CapExceeded, IndexOutOfRange
from starlab.semigroup import (
    StarSemigroup,
    cancellation_properness_check,
    check_positive_powers,
    check_star_cancellation,
    classify_elements,
    direct_product,
    gen_boolean_matrices,
    gen_matrix_ring,
    gen_zn_mult,
    gen_zn_ring,
    improper_witness,
    is_proper,
    qpns_counterexample,
    relabel,
    unitize,
    validate,
)

import oracles


@pytest.mark.parametrize("n", range(1, 31))
def test_zn_valid_and_proper_iff_squarefree(n):
    S = validate(gen_zn_mult(n))
    assert is_proper(S) == oracles.squarefree(n) == oracles.is_proper(S)


def test_matrix_generators_validate():
    for S in (gen_boolean_matrices(2), gen_boolean_matrices(3), gen_matrix_ring(2, 2), gen_matrix_ring(2, 3)):
        validate(S)
    assert gen_boolean_matrices(3).n == 512


def test_boolean_matrix_product_matches_direct_computation():
    S = gen_boolean_matrices(2)
    # index = 8a + 4b + 2c + d for [[a, b], [c, d]]
    def mat(i):
        return np.array([[i >> 3 & 1, i >> 2 & 1], [i >> 1 & 1, i & 1]])

    for x in range(16):
        for y in range(16):
            prod = (mat(x) @ mat(y) > 0).astype(int)
            assert int(S.mul[x, y]) == int(prod.flatten() @ [8, 4, 2, 1])
        assert int(S.star[x]) == int(mat(x).T.flatten() @ [8, 4, 2, 1])


def test_cap_exceeded():
    with pytest.raises(CapExceeded):
        gen_matrix_ring(3, 2, cap=100)


def test_validate_reports_associativity_witness():
    # x*y = y on {0,1,2} except products with 0; broken at one cell
    mul = [[0, 0, 0], [0, 1, 2], [0, 2, 0]]
    mul[2][2] = 1
    mul[1][2] = 1
    with pytest.raises(AxiomViolation) as exc:
        validate(mul, [0, 1, 2], 0)
    kinds = [k for k, _ in exc.value.violations]
    assert "associativity" in kinds


def test_validate_bad_involution_and_ranges():
    with pytest.raises(AxiomViolation) as exc:
        validate([[0, 0], [0, 1]], [1, 1], 0)
    assert "involution" in [k for k, _ in exc.value.violations]
    with pytest.raises(IndexOutOfRange):
        validate([[0, 5], [0, 1]], [0, 1], 0)
    with pytest.raises(IndexOutOfRange):
        validate([[0, 0], [0, 1]], [0, 1], 7)


def test_improper_witness_z4():
    S = gen_zn_mult(4)
    assert improper_witness(S) == 2  # 2*2 = 4 = 0
    assert not is_proper(S)


def test_classify_elements_z6():
    c = classify_elements(gen_zn_mult(6))
    assert bits.indices(c.positives) == sorted(oracles.positives(gen_zn_mult(6))) == [0, 1, 3, 4]
    assert bits.indices(c.projections) == [0, 1, 3, 4]
    assert c.additive_positives is None
    r = classify_elements(gen_zn_ring(6))
    assert bits.indices(r.additive_positives) == list(range(6))


def test_positive_powers_everywhere(proper_small):
    assert check_positive_powers(proper_small)


def test_cancellation_reports_both_bits():
    # Z_4: 2*2 = 2*0 = 0*0 = 0, so cancellation fails, and Z_4 is improper
    S = gen_zn_mult(4)
    assert not check_star_cancellation(S)
    r = cancellation_properness_check(S)
    assert r and r.stats == {"cancellation": False, "proper": False, "cancellation_witness": [0, 2]}
    # whenever cancellation holds, properness follows
    for n in (2, 3, 5, 6, 10):
        S = gen_zn_mult(n)
        r = cancellation_properness_check(S)
        assert r
        if r.stats["cancellation"]:
            assert r.stats["proper"]


def test_unitize_adds_identity():
    U = unitize(gen_zn_mult(4))
    e = 4
    assert (U.mul[e, :] == np.arange(5)).all() and (U.mul[:, e] == np.arange(5)).all()
    validate(U)


def test_direct_product_and_relabel():
    S = direct_product(gen_zn_mult(2), gen_boolean_matrices(1))
    validate(S)
    assert S.n == 4 and is_proper(S)
    rng = np.random.default_rng(1)
    perm = rng.permutation(S.n)
    T = relabel(S, perm)
    validate(T)
    for a in range(S.n):
        for b in range(S.n):
            assert T.mul[perm[a], perm[b]] == perm[S.mul[a, b]]


def test_qpns_example_from_text():
    # q p^n s = 0 exactly when n = 1
    assert qpns_counterexample(6) == [n == 1 for n in range(7)]
    with pytest.raises(ValueError):
        qpns_counterexample(-1)


def test_equality_is_structural():
    assert gen_zn_mult(6) == gen_zn_mult(6)
    assert gen_zn_mult(6) != gen_zn_ring(6)
    assert isinstance(gen_zn_mult(6), StarSemigroup)
