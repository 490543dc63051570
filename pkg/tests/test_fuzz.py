import random

import numpy as np

from starlab import bits
from starlab.fuzz import brandt, fuzz_instances, null_semigroup, restrict, star_closure
from starlab.gallery import from_spec
from starlab.semigroup import is_proper, relabel, validate
from starlab.subsets import P, holds


def test_instances_are_valid_small_and_seeded():
    a = list(fuzz_instances(200, seed=7))
    b = list(fuzz_instances(200, seed=7))
    assert a == b
    assert all(1 <= S.n <= 6 for S in a)
    for S in a:
        validate(S)
    assert any(not is_proper(S) for S in a) and any(is_proper(S) for S in a)


def test_star_closure_is_a_star_subsemigroup():
    S = from_spec("bool:2")
    T = star_closure(S, [6], limit=16)
    assert holds(S, P.star_subsemigroup, T) and T & S.zero_mask
    assert star_closure(S, [6, 9, 5], limit=2) is None


def test_restrict_keeps_ring_only_when_closed():
    S = from_spec("znring:6")
    R = restrict(S, bits.from_indices([0, 3]))
    assert R.ring is not None and validate(R)
    Z = restrict(S, bits.from_indices([0, 1]))
    assert Z.ring is None


def test_brandt_and_null_semigroups():
    B = validate(brandt(2))
    assert B.n == 5 and is_proper(B)
    N = validate(null_semigroup(4, random.Random(0)))
    assert not is_proper(N) or N.n == 1


def test_relabel_invariance_of_lattice_sizes():
    from starlab.polarity import closed_lattice

    S = from_spec("bool:2")
    T = relabel(S, np.random.default_rng(3).permutation(S.n))
    for kind in ("perp", "nabla", "L"):
        assert len(closed_lattice(S, kind)) == len(closed_lattice(T, kind))
