"""Finite *-semigroups: construction, validation, properness and element classes.

A *-semigroup is stored as a multiplication table over the carrier 0..n-1,
an involution ``star`` and a designated absorbing ``zero``.  Subsets of the
carrier are Python int bitmasks (see :mod:`starlab.bits`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from . import bits
from .checks import CheckResult, failed, passed
from .errors import AxiomViolation, CapExceeded, IndexOutOfRange

DEFAULT_CARRIER_CAP = 512


def _frozen(a, dtype=np.int64) -> np.ndarray:
    arr = np.array(a, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class RingExtension:
    add: np.ndarray
    neg: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "add", _frozen(self.add))
        object.__setattr__(self, "neg", _frozen(self.neg))


@dataclass(frozen=True, eq=False)
class StarSemigroup:
    """Finite semigroup with involution and designated zero.

    Instances are immutable; derived tables are cached on first use.  Use
    :func:`validate` to obtain an instance whose axioms have been checked.
    """

    n: int
    mul: np.ndarray
    star: np.ndarray
    zero: int
    ring: Optional[RingExtension] = None
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "mul", _frozen(self.mul))
        object.__setattr__(self, "star", _frozen(self.star))
        object.__setattr__(self, "zero", int(self.zero))
        object.__setattr__(self, "n", int(self.n))

    def __repr__(self) -> str:
        ring = ", ring" if self.ring is not None else ""
        return f"StarSemigroup({self.name or '?'}, n={self.n}{ring})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, StarSemigroup):
            return NotImplemented
        same = (
            self.n == other.n
            and self.zero == other.zero
            and np.array_equal(self.mul, other.mul)
            and np.array_equal(self.star, other.star)
        )
        if not same or (self.ring is None) != (other.ring is None):
            return False
        if self.ring is None:
            return True
        return np.array_equal(self.ring.add, other.ring.add) and np.array_equal(
            self.ring.neg, other.ring.neg
        )

    __hash__ = object.__hash__

    # -- derived tables -------------------------------------------------

    @cached_property
    def full(self) -> int:
        return bits.full_mask(self.n)

    @cached_property
    def zero_mask(self) -> int:
        return 1 << self.zero

    @cached_property
    def squares(self) -> np.ndarray:
        """``squares[s] = s* s``."""
        idx = np.arange(self.n)
        return _frozen(self.mul[self.star, idx])

    @cached_property
    def positives(self) -> int:
        return bits.from_indices(np.unique(self.squares))

    @cached_property
    def positive_indices(self) -> np.ndarray:
        return _frozen(bits.indices(self.positives))

    @cached_property
    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def mask_bool(self, mask: int) -> np.ndarray:
        return bits.to_bool(mask, self.n)

    def star_of(self, mask: int) -> int:
        """The image ``T*`` of a subset."""
        return bits.from_bool(self.mask_bool(mask)[self.star])

    def product_set(self, left: int, right: int) -> int:
        """The product set ``{xy : x in left, y in right}``."""
        li = bits.indices(left)
        ri = bits.indices(right)
        if not li or not ri:
            return 0
        return bits.from_indices(np.unique(self.mul[np.ix_(li, ri)]))

    def power_cycle(self, s: int) -> list[int]:
        """Powers s, s^2, ... up to the first repeat."""
        seen: list[int] = []
        x = s
        while x not in seen:
            seen.append(x)
            x = int(self.mul[x, s])
        return seen


@dataclass(frozen=True)
class ElementClasses:
    positives: int
    self_adjoints: int
    idempotents: int
    projections: int
    additive_positives: Optional[int] = None


# -- validation ---------------------------------------------------------


def _first(mask: np.ndarray):
    hit = np.argwhere(mask)
    return tuple(int(v) for v in hit[0]) if len(hit) else None


def axiom_violations(mul, star, zero, ring: Optional[RingExtension] = None) -> list:
    """Every violated law as ``(kind, witness)``; empty when the tables are valid.

    Raises IndexOutOfRange for ragged tables or indices outside the carrier.
    """
    mul = np.asarray(mul)
    star = np.asarray(star)
    n = len(star)
    if mul.shape != (n, n):
        raise IndexOutOfRange(f"mul table has shape {mul.shape}, expected {(n, n)}")
    for label, arr in (("mul", mul), ("star", star)):
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise IndexOutOfRange(f"{label} has entries outside 0..{n - 1}")
    if not 0 <= zero < n:
        raise IndexOutOfRange(f"zero index {zero} outside 0..{n - 1}")

    out = []
    bad = None
    for a in range(n):
        lhs = mul[mul[a, :], :]
        rhs = mul[a, mul]
        w = _first(lhs != rhs)
        if w is not None:
            bad = (a, *w)
            break
    if bad is not None:
        out.append(("associativity", bad))

    idx = np.arange(n)
    w = _first(star[star] != idx)
    if w is not None:
        out.append(("involution", w))
    w = _first(star[mul] != mul[np.ix_(star, star)].T)
    if w is not None:
        out.append(("antihomomorphism", w))
    w = _first((mul[zero, :] != zero) | (mul[:, zero] != zero))
    if w is not None:
        out.append(("absorbing", w))

    if ring is not None:
        out.extend(_ring_violations(mul, star, zero, ring))
    return out


def _ring_violations(mul, star, zero, ring: RingExtension) -> list:
    add = np.asarray(ring.add)
    neg = np.asarray(ring.neg)
    n = len(star)
    if add.shape != (n, n) or neg.shape != (n,):
        raise IndexOutOfRange("ring tables have the wrong shape")
    if add.min() < 0 or add.max() >= n or neg.min() < 0 or neg.max() >= n:
        raise IndexOutOfRange("ring tables have entries outside the carrier")
    out = []
    for a in range(n):
        w = _first(add[add[a, :], :] != add[a, add])
        if w is not None:
            out.append(("add_associativity", (a, *w)))
            break
    checks = [
        ("add_commutativity", add != add.T),
        ("add_identity", (add[zero, :] != np.arange(n))[None, :]),
        ("add_inverse", (add[np.arange(n), neg] != zero)[None, :]),
        ("star_additive", star[add] != add[np.ix_(star, star)]),
    ]
    for kind, bad in checks:
        w = _first(bad)
        if w is not None:
            out.append((kind, w if kind in ("add_commutativity", "star_additive") else (w[1],)))
    for a in range(n):
        left = mul[a, add]  # a(b+c)
        right = add[np.ix_(mul[a, :], mul[a, :])]  # ab+ac
        w = _first(left != right)
        if w is None:
            left = mul[add, a]  # (b+c)a
            right = add[np.ix_(mul[:, a], mul[:, a])]
            w = _first(left != right)
        if w is not None:
            out.append(("distributivity", (a, *w)))
            break
    return out


def validate(mul, star=None, zero: int = 0, ring=None, name: str = "") -> StarSemigroup:
    """Check every axiom and return the validated semigroup.

    Accepts either the tables directly or an existing StarSemigroup.
    Raises AxiomViolation listing all failed laws.
    """
    if isinstance(mul, StarSemigroup):
        S = mul
    else:
        if ring is not None and not isinstance(ring, RingExtension):
            ring = RingExtension(*ring)
        S = StarSemigroup(len(star), mul, star, zero, ring, name)
    violations = axiom_violations(S.mul, S.star, S.zero, S.ring)
    if violations:
        raise AxiomViolation(violations)
    return S


# -- properness and element classes --------------------------------------


def improper_witness(S: StarSemigroup) -> Optional[int]:
    """A nonzero s with s*s = 0, or None when zero is proper."""
    hits = np.flatnonzero((S.squares == S.zero) & (np.arange(S.n) != S.zero))
    return int(hits[0]) if len(hits) else None


def is_proper(S: StarSemigroup) -> bool:
    """True iff zero is absorbing and s*s = 0 forces s = 0."""
    absorbing = bool((S.mul[S.zero, :] == S.zero).all() and (S.mul[:, S.zero] == S.zero).all())
    return absorbing and improper_witness(S) is None


def classify_elements(S: StarSemigroup) -> ElementClasses:
    idx = np.arange(S.n)
    sa = bits.from_bool(S.star == idx)
    idem = bits.from_bool(S.mul[idx, idx] == idx)
    add_pos = None
    if S.ring is not None:
        add_pos = additive_closure(S, S.positives)
    return ElementClasses(
        positives=S.positives,
        self_adjoints=sa,
        idempotents=idem,
        projections=sa & idem,
        additive_positives=add_pos,
    )


def additive_closure(S: StarSemigroup, mask: int) -> int:
    """Additive semigroup generated by ``mask`` (ring case only)."""
    add = S.ring.add
    gens = bits.indices(mask)
    closed = mask
    frontier = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(add[x, g])
                if not closed >> y & 1:
                    closed |= 1 << y
                    nxt.append(y)
        frontier = nxt
    return closed


def check_positive_powers(S: StarSemigroup) -> CheckResult:
    """Every power of a positive element is positive."""
    pos = S.positives
    for s in bits.iter_bits(pos):
        for p in S.power_cycle(s):
            if not pos >> p & 1:
                return failed("positive_powers", {"s": s, "power": p})
    return passed("positive_powers", checked=bits.popcount(pos))


def star_cancellation_witness(S: StarSemigroup) -> Optional[tuple[int, int]]:
    """First pair a != b with aa* = ab* = bb*, or None."""
    idx = np.arange(S.n)
    ab = S.mul[:, S.star]  # ab[a, b] = a b*
    aa = ab[idx, idx]
    hit = (ab == aa[:, None]) & (ab == aa[None, :]) & (idx[:, None] != idx[None, :])
    return _first(hit)


def check_star_cancellation(S: StarSemigroup) -> bool:
    """True iff aa* = ab* = bb* implies a = b."""
    return star_cancellation_witness(S) is None


def cancellation_properness_check(S: StarSemigroup) -> CheckResult:
    """*-cancellation with an absorbing zero forces properness.

    The converse is not claimed, so an improper S without cancellation passes;
    both bits are reported.
    """
    name = "cancellation_implies_proper"
    w = star_cancellation_witness(S)
    proper = is_proper(S)
    stats = {"cancellation": w is None, "proper": proper}
    if w is not None:
        stats["cancellation_witness"] = list(w)
    absorbing = bool((S.mul[S.zero, :] == S.zero).all() and (S.mul[:, S.zero] == S.zero).all())
    if w is None and absorbing and not proper:
        return failed(name, {"improper": improper_witness(S)}, **stats)
    return passed(name, **stats)


# -- constructions --------------------------------------------------------


def unitize(S: StarSemigroup) -> StarSemigroup:
    """Adjoin a fresh identity (index n), even if S already has one."""
    n = S.n
    mul = np.empty((n + 1, n + 1), dtype=np.int64)
    mul[:n, :n] = S.mul
    mul[n, :] = np.arange(n + 1)
    mul[:, n] = np.arange(n + 1)
    star = np.append(S.star, n)
    return StarSemigroup(n + 1, mul, star, S.zero, None, f"{S.name}^1")


def _check_cap(size: int, cap: int):
    if size > cap:
        raise CapExceeded(f"carrier of size {size} exceeds cap {cap}")


def gen_zn_mult(n: int, ring: bool = False) -> StarSemigroup:
    """Z_n under multiplication mod n with the identity involution."""
    if n < 1:
        raise ValueError("n must be >= 1")
    a = np.arange(n)
    mul = np.outer(a, a) % n
    ext = None
    if ring:
        ext = RingExtension((a[:, None] + a[None, :]) % n, (-a) % n)
    return StarSemigroup(n, mul, a, 0, ext, f"{'znring' if ring else 'zn'}:{n}")


def gen_zn_ring(n: int) -> StarSemigroup:
    return gen_zn_mult(n, ring=True)


def _matrix_semigroup(k: int, base: int, product, name: str, ring: bool):
    size = base ** (k * k)
    els = np.array(list(itertools.product(range(base), repeat=k * k)), dtype=np.int64)
    # first matrix entry varies slowest, so index = sum entry * base**(k*k-1-pos)
    weights = base ** np.arange(k * k - 1, -1, -1)
    mats = els.reshape(size, k, k)
    prod = product(mats)
    mul = (prod.reshape(size, size, k * k) * weights).sum(-1)
    star = (mats.transpose(0, 2, 1).reshape(size, k * k) * weights).sum(-1)
    ext = None
    if ring:
        add = ((els[:, None, :] + els[None, :, :]) % base * weights).sum(-1)
        neg = ((-els) % base * weights).sum(-1)
        ext = RingExtension(add, neg)
    return StarSemigroup(size, mul, star, 0, ext, name)


def gen_boolean_matrices(k: int, cap: int = DEFAULT_CARRIER_CAP) -> StarSemigroup:
    """k x k Boolean matrices under Boolean product, star = transpose."""
    if k < 1:
        raise ValueError("k must be >= 1")
    _check_cap(2 ** (k * k), cap)
    return _matrix_semigroup(
        k, 2, lambda m: (np.einsum("aij,bjl->abil", m, m) > 0).astype(np.int64), f"bool:{k}", False
    )


def gen_matrix_ring(k: int, m: int, cap: int = DEFAULT_CARRIER_CAP) -> StarSemigroup:
    """M_k(Z_m) with transpose involution and the ring structure attached."""
    if k < 1 or m < 2:
        raise ValueError("need k >= 1 and m >= 2")
    _check_cap(m ** (k * k), cap)
    return _matrix_semigroup(
        k, m, lambda a: np.einsum("aij,bjl->abil", a, a) % m, f"matring:{k},{m}", True
    )


def direct_product(S: StarSemigroup, T: StarSemigroup, cap: int = DEFAULT_CARRIER_CAP) -> StarSemigroup:
    """Componentwise product; element (i, j) has index i * T.n + j."""
    n = S.n * T.n
    _check_cap(n, cap)
    i = np.repeat(np.arange(S.n), T.n)
    j = np.tile(np.arange(T.n), S.n)
    mul = S.mul[np.ix_(i, i)] * T.n + T.mul[np.ix_(j, j)]
    star = S.star[i] * T.n + T.star[j]
    ext = None
    if S.ring is not None and T.ring is not None:
        add = S.ring.add[np.ix_(i, i)] * T.n + T.ring.add[np.ix_(j, j)]
        neg = S.ring.neg[i] * T.n + T.ring.neg[j]
        ext = RingExtension(add, neg)
    return StarSemigroup(n, mul, star, S.zero * T.n + T.zero, ext, f"{S.name}x{T.name}")


def relabel(S: StarSemigroup, perm: Sequence[int]) -> StarSemigroup:
    """Isomorphic copy where old element i becomes ``perm[i]``."""
    perm = np.asarray(perm, dtype=np.int64)
    inv = np.argsort(perm)
    mul = perm[S.mul[np.ix_(inv, inv)]]
    star = perm[S.star[inv]]
    ext = None
    if S.ring is not None:
        ext = RingExtension(perm[S.ring.add[np.ix_(inv, inv)]], perm[S.ring.neg[inv]])
    return StarSemigroup(S.n, mul, star, int(perm[S.zero]), ext, S.name)


def canonicalize(S: StarSemigroup) -> StarSemigroup:
    """Swap the zero into index 0; every other index is kept."""
    if S.zero == 0:
        return S
    perm = np.arange(S.n)
    perm[0], perm[S.zero] = S.zero, 0
    return relabel(S, perm)


# -- the M_2(Z) example ---------------------------------------------------


def _matmul2(a, b):
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


_ID2 = ((1, 0), (0, 1))
QPNS_Q = _matmul2(((1, 1), (1, 1)), ((1, 1), (1, 1)))
QPNS_P = _matmul2(((1, 0), (0, 2)), ((1, 0), (0, 2)))
QPNS_S = _matmul2(((16, -4), (-4, 1)), ((16, -4), (-4, 1)))


def qpns_counterexample(max_n: int) -> list[bool]:
    """For n = 0..max_n, whether q p^n s is the zero 2x2 integer matrix.

    Entries are Python ints, so the arithmetic is exact at any size.
    """
    if max_n < 0:
        raise ValueError("max_n must be >= 0")
    out = []
    power = _ID2
    for _ in range(max_n + 1):
        m = _matmul2(_matmul2(QPNS_Q, power), QPNS_S)
        out.append(all(v == 0 for row in m for v in row))
        power = _matmul2(power, QPNS_P)
    return out
