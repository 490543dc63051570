"""Seeded random small *-semigroups.

Random tables are almost never associative, so instances are grown instead:
a random seed set inside a pool semigroup is closed under product and star
(always valid), then randomly relabelled.  A share of zero-multiplication
semigroups with a random involution adds improper instances.
"""

from __future__ import annotations

import random
from typing import Iterator, Optional

import numpy as np

from . import bits
from .semigroup import RingExtension, StarSemigroup, relabel, validate

POOL_SPECS = ("bool:2", "bool:3", "matring:2,2", "matring:2,3", "zn:30", "zn:12", "zn:2*bool:2", "brandt:2", "brandt:3")


def brandt(k: int) -> StarSemigroup:
    """Brandt semigroup B_k: matrix units e_ij plus zero, star swaps indices."""
    n = k * k + 1
    mul = np.zeros((n, n), dtype=np.int64)
    star = np.zeros(n, dtype=np.int64)
    for i in range(k):
        for j in range(k):
            a = 1 + i * k + j
            star[a] = 1 + j * k + i
            for l in range(k):
                mul[a, 1 + j * k + l] = 1 + i * k + l
    return StarSemigroup(n, mul, star, 0, name=f"brandt:{k}")


def _pool(spec: str) -> StarSemigroup:
    if spec.startswith("brandt:"):
        return brandt(int(spec.split(":")[1]))
    from .gallery import from_spec

    return from_spec(spec)


def star_closure(S: StarSemigroup, seeds, limit: int) -> Optional[int]:
    """Smallest *-subsemigroup with zero containing ``seeds``; None past ``limit``."""
    T = S.zero_mask | bits.from_indices(seeds)
    T |= S.star_of(T)
    while True:
        new = T | S.product_set(T, T)
        new |= S.star_of(new)
        if bits.popcount(new) > limit:
            return None
        if new == T:
            return T
        T = new


def restrict(S: StarSemigroup, T: int, name: str = "") -> StarSemigroup:
    """The *-subsemigroup on T, reindexed 0..|T|-1 in increasing order."""
    idx = np.array(bits.indices(T), dtype=np.int64)
    pos = np.full(S.n, -1, dtype=np.int64)
    pos[idx] = np.arange(len(idx))
    mul = pos[S.mul[np.ix_(idx, idx)]]
    ring = None
    if S.ring is not None:
        add = pos[S.ring.add[np.ix_(idx, idx)]]
        neg = pos[S.ring.neg[idx]]
        if (add >= 0).all() and (neg >= 0).all():
            ring = RingExtension(add, neg)
    return StarSemigroup(len(idx), mul, pos[S.star[idx]], int(pos[S.zero]), ring, name)


def null_semigroup(n: int, rng: random.Random) -> StarSemigroup:
    """All products zero; the involution is a random product of transpositions."""
    star = list(range(n))
    rest = list(range(1, n))
    rng.shuffle(rest)
    while len(rest) >= 2 and rng.random() < 0.6:
        a, b = rest.pop(), rest.pop()
        star[a], star[b] = b, a
    return StarSemigroup(n, np.zeros((n, n), dtype=np.int64), star, 0, name=f"null:{n}")


def random_instance(rng: random.Random, max_n: int = 6, pools=None) -> StarSemigroup:
    pools = pools or _pools()
    if rng.random() < 0.05:
        S = null_semigroup(rng.randint(1, max_n), rng)
        origin = S.name
    else:
        while True:
            spec = rng.choice(sorted(pools))
            P = pools[spec]
            seeds = [rng.randrange(P.n) for _ in range(rng.randint(1, 3))]
            T = star_closure(P, seeds, max_n)
            if T is not None:
                break
        S = restrict(P, T)
        origin = f"{spec}<{','.join(map(str, sorted(bits.indices(T))))}>"
    perm = list(range(S.n))
    rng.shuffle(perm)
    out = relabel(S, perm)
    return validate(StarSemigroup(out.n, out.mul, out.star, out.zero, out.ring, f"fuzz[{origin}]"))


_POOL_CACHE: dict = {}


def _pools() -> dict:
    if not _POOL_CACHE:
        for spec in POOL_SPECS:
            _POOL_CACHE[spec] = _pool(spec)
    return _POOL_CACHE


def fuzz_instances(count: int, seed: int, max_n: int = 6) -> Iterator[StarSemigroup]:
    rng = random.Random(seed)
    pools = _pools()
    for _ in range(count):
        yield random_instance(rng, max_n, pools)

