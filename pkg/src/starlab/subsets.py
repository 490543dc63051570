"""Subset algebra over a *-semigroup.

Maps T -> sqrt(T), T^2, T_+, T* and T n T*, the closure predicates on
subsets, exhaustive enumeration of the subsets satisfying them, and the two
correspondences between left-rooted left ideals and their positive or
self-adjoint parts.

Every predicate has two implementations: :func:`holds` decides one subset
directly from the definition (any n), :func:`predicate_vector` decides all
2**n subsets at once (n <= 16).  The test-suite checks they agree.
"""

from __future__ import annotations

import enum
import random
from typing import Iterable, Optional

import numpy as np

from . import bits
from .checks import CheckResult, failed, passed, verify_isomorphism
from .errors import CapExceeded
from .semigroup import StarSemigroup

EXHAUSTIVE_CAP = 16


class Predicate(str, enum.Enum):
    subsemigroup = "subsemigroup"
    left_ideal = "left_ideal"
    right_ideal = "right_ideal"
    ideal = "ideal"
    quasi_ideal = "quasi_ideal"
    bi_ideal = "bi_ideal"
    self_adjoint = "self_adjoint"
    star_subsemigroup = "star_subsemigroup"
    left_rooted = "left_rooted"
    right_rooted = "right_rooted"
    rooted = "rooted"
    quasi_rooted = "quasi_rooted"
    positive_rooted = "positive_rooted"
    hereditary = "hereditary"
    positive_hereditary = "positive_hereditary"
    bi_hereditary = "bi_hereditary"


P = Predicate


# -- maps -------------------------------------------------------------------


def sqrt(S: StarSemigroup, T: int) -> int:
    """{s : s*s in T}."""
    return bits.from_bool(S.mask_bool(T)[S.squares])


def t_squared(S: StarSemigroup, T: int) -> int:
    """{t*t : t in T}."""
    return bits.from_indices(np.unique(S.squares[bits.indices(T)])) if T else 0


def positive_part(S: StarSemigroup, T: int) -> int:
    """T n S_+ (with S_+ = S^2)."""
    return T & S.positives


def star_image(S: StarSemigroup, T: int) -> int:
    return S.star_of(T)


def sa_part(S: StarSemigroup, T: int) -> int:
    """T n T*."""
    return T & S.star_of(T)


# -- single-subset predicates -----------------------------------------------


def _idx(T: int) -> np.ndarray:
    return np.array(bits.indices(T), dtype=np.int64)


def _within(S: StarSemigroup, values: np.ndarray, T: int) -> bool:
    return bool(S.mask_bool(T)[values].all()) if values.size else True


def _subsemigroup(S, T):
    I = _idx(T)
    return _within(S, S.mul[np.ix_(I, I)], T)


def holds(S: StarSemigroup, predicate, T: int) -> bool:
    """Decide one predicate on one subset from its literal definition."""
    p = Predicate(predicate)
    mul, star = S.mul, S.star
    I = _idx(T)
    if p is P.subsemigroup:
        return _subsemigroup(S, T)
    if p is P.left_ideal:
        return _within(S, mul[:, I], T)
    if p is P.right_ideal:
        return _within(S, mul[I, :], T)
    if p is P.ideal:
        return holds(S, P.left_ideal, T) and holds(S, P.right_ideal, T)
    if p is P.quasi_ideal:
        both = S.product_set(T, S.full) & S.product_set(S.full, T)
        return _subsemigroup(S, T) and both & ~T == 0
    if p is P.bi_ideal:
        isi = S.product_set(S.product_set(T, S.full), T)
        return _subsemigroup(S, T) and isi & ~T == 0
    if p is P.self_adjoint:
        return S.star_of(T) == T
    if p is P.star_subsemigroup:
        return S.star_of(T) == T and _subsemigroup(S, T)
    root = sqrt(S, T)
    if p is P.left_rooted:
        return root & ~T == 0
    if p is P.right_rooted:
        return S.star_of(root) & ~T == 0
    if p is P.rooted:
        return (root | S.star_of(root)) & ~T == 0
    if p is P.quasi_rooted:
        return root & S.star_of(root) & ~T == 0
    if p is P.positive_rooted:
        return root & S.positives & ~T == 0
    if p is P.hereditary:
        R = _idx(root)
        if not R.size:
            return True
        return _within(S, mul[mul[star[R], :], R[:, None]], T)
    if p is P.positive_hereditary:
        R = _idx(root)
        if not R.size:
            return True
        return _within(S, mul[mul[star[R], :][:, S.positive_indices], R[:, None]], T)
    if p is P.bi_hereditary:
        Q = _idx(T & S.positives)
        if not Q.size:
            return True
        return _within(S, mul[mul[Q, :][:, S.positive_indices], Q[:, None]], T)
    raise ValueError(p)  # pragma: no cover


# -- all-subsets evaluation ---------------------------------------------------


class SubsetTable:
    """All 2**n subsets of a small carrier with vectorized predicates and maps.

    Row k of ``members`` is subset k (bit i of k <=> element i).
    """

    def __init__(self, S: StarSemigroup, cap: int = EXHAUSTIVE_CAP):
        if S.n > cap:
            raise CapExceeded(f"exhaustive subset sweep needs n <= {cap}, got {S.n}")
        self.S = S
        self.n = S.n
        self.members = bits.membership_matrix(S.n)
        self.weights = (1 << np.arange(S.n)).astype(np.int64)
        self._cache: dict = {}

    def pack(self, boolmat: np.ndarray) -> np.ndarray:
        return boolmat.astype(np.int64) @ self.weights

    # maps, as arrays indexed by subset
    @property
    def sqrt(self) -> np.ndarray:
        if "sqrt" not in self._cache:
            self._cache["sqrt"] = self.pack(self.members[:, self.S.squares])
        return self._cache["sqrt"]

    @property
    def star(self) -> np.ndarray:
        if "star" not in self._cache:
            self._cache["star"] = self.pack(self.members[:, self.S.star])
        return self._cache["star"]

    @property
    def t_squared(self) -> np.ndarray:
        if "t2" not in self._cache:
            onehot = np.zeros((self.n, self.n), dtype=np.int64)
            onehot[np.arange(self.n), self.S.squares] = 1
            self._cache["t2"] = self.pack((self.members.astype(np.int64) @ onehot) > 0)
        return self._cache["t2"]

    def _image(self, table: np.ndarray) -> np.ndarray:
        """Membership of the product image: table[t, x] <=> x lies in the image of t."""
        return (self.members.astype(np.int64) @ table.astype(np.int64)) > 0

    def vector(self, predicate) -> np.ndarray:
        p = Predicate(predicate)
        if p in self._cache:
            return self._cache[p]
        M = self.members
        S, mul, star, n = self.S, self.S.mul, self.S.star, self.n
        ok = np.ones(len(M), dtype=bool)
        if p is P.subsemigroup:
            for a in range(n):
                ok &= ~M[:, a] | (~M | M[:, mul[a, :]]).all(1)
        elif p is P.left_ideal:
            for t in range(n):
                ok &= ~M[:, t] | M[:, mul[:, t]].all(1)
        elif p is P.right_ideal:
            for t in range(n):
                ok &= ~M[:, t] | M[:, mul[t, :]].all(1)
        elif p is P.ideal:
            ok = self.vector(P.left_ideal) & self.vector(P.right_ideal)
        elif p is P.quasi_ideal:
            right = np.zeros((n, n), dtype=bool)
            left = np.zeros((n, n), dtype=bool)
            for t in range(n):
                right[t, mul[t, :]] = True
                left[t, mul[:, t]] = True
            both = self._image(right) & self._image(left)
            ok = self.vector(P.subsemigroup) & ~(both & ~M).any(1)
        elif p is P.bi_ideal:
            right = np.zeros((n, n), dtype=bool)
            for t in range(n):
                right[t, mul[t, :]] = True
            IS = self._image(right)
            isi = np.zeros_like(M)
            for y in range(n):
                for b in range(n):
                    isi[:, mul[y, b]] |= IS[:, y] & M[:, b]
            ok = self.vector(P.subsemigroup) & ~(isi & ~M).any(1)
        elif p is P.self_adjoint:
            ok = (M == M[:, star]).all(1)
        elif p is P.star_subsemigroup:
            ok = self.vector(P.self_adjoint) & self.vector(P.subsemigroup)
        elif p in (P.left_rooted, P.right_rooted, P.rooted, P.quasi_rooted, P.positive_rooted):
            root = M[:, S.squares]
            root_star = root[:, star]
            if p is P.left_rooted:
                bad = root & ~M
            elif p is P.right_rooted:
                bad = root_star & ~M
            elif p is P.rooted:
                bad = (root | root_star) & ~M
            elif p is P.quasi_rooted:
                bad = root & root_star & ~M
            else:
                pos = bits.to_bool(S.positives, n)
                bad = root & pos[None, :] & ~M
            ok = ~bad.any(1)
        elif p in (P.hereditary, P.positive_hereditary):
            mids = np.arange(n) if p is P.hereditary else S.positive_indices
            for t in range(n):
                vals = mul[mul[star[t], mids], t]
                ok &= ~M[:, S.squares[t]] | M[:, vals].all(1)
        elif p is P.bi_hereditary:
            for t in S.positive_indices:
                vals = mul[mul[t, S.positive_indices], t]
                ok &= ~M[:, t] | M[:, vals].all(1)
        self._cache[p] = ok
        return ok

    def where(self, *predicates, require_zero: bool = True) -> np.ndarray:
        ok = np.ones(len(self.members), dtype=bool)
        for p in predicates:
            ok &= self.vector(p)
        if require_zero:
            ok &= self.members[:, self.S.zero]
        return np.flatnonzero(ok)


def predicate_vector(S: StarSemigroup, predicate) -> np.ndarray:
    return SubsetTable(S).vector(predicate)


def enumerate_with(
    S: StarSemigroup,
    *predicates,
    cap: int = EXHAUSTIVE_CAP,
    sample: Optional[int] = None,
    seed: int = 0,
    require_zero: bool = True,
) -> list[int]:
    """Subsets satisfying every predicate, in increasing bitmask order.

    Exhaustive when ``sample`` is None (requires n <= cap); otherwise tests
    ``sample`` random subsets drawn with ``seed``.
    """
    if sample is None:
        table = SubsetTable(S, cap)
        return [int(k) for k in table.where(*predicates, require_zero=require_zero)]
    rng = random.Random(seed)
    found = set()
    for _ in range(sample):
        T = rng.getrandbits(S.n)
        if require_zero:
            T |= S.zero_mask
        if all(holds(S, p, T) for p in predicates):
            found.add(T)
    return sorted(found)


# -- correspondence theorems -------------------------------------------------


def _fmt(T):
    return bits.indices(T)


def correspondence_rooted_ideals(S: StarSemigroup, table: Optional[SubsetTable] = None) -> CheckResult:
    """Left-rooted left ideals <-> positive-rooted positive-hereditary subsets of S_+.

    Maps I -> I_+ (also checked equal to I^2) and J -> sqrt(J).
    """
    name = "correspondence_rooted_ideals"
    table = table or SubsetTable(S)
    A = table.where(P.left_rooted, P.left_ideal)
    B = table.where(P.positive_rooted, P.positive_hereditary)
    pos = S.positives
    B = B[(B & ~pos) == 0]
    t2 = table.t_squared
    bad = A[(A & pos) != t2[A]]
    if len(bad):
        return failed(name, {"clause": "I_+ = I^2", "I": _fmt(int(bad[0]))})
    sq = table.sqrt
    return verify_isomorphism(
        name,
        [int(a) for a in A],
        [int(b) for b in B],
        lambda I: I & pos,
        lambda J: int(sq[J]),
        fmt=_fmt,
    )


def correspondence_hereditary(S: StarSemigroup, table: Optional[SubsetTable] = None) -> CheckResult:
    """Left-rooted left ideals <-> quasi-rooted hereditary *-subsemigroups.

    Maps I -> I n I* and J -> sqrt(J); also every quasi-rooted hereditary
    *-subsemigroup is checked to be a quasi-ideal.
    """
    name = "correspondence_hereditary"
    table = table or SubsetTable(S)
    A = table.where(P.left_rooted, P.left_ideal)
    C = table.where(P.quasi_rooted, P.hereditary, P.star_subsemigroup)
    quasi = table.vector(P.quasi_ideal)
    bad = C[~quasi[C]]
    if len(bad):
        return failed(name, {"clause": "quasi-ideal", "J": _fmt(int(bad[0]))})
    sq, st = table.sqrt, table.star
    return verify_isomorphism(
        name,
        [int(a) for a in A],
        [int(c) for c in C],
        lambda I: I & int(st[I]),
        lambda J: int(sq[J]),
        fmt=_fmt,
    )


def pospart_inclusion_check(S: StarSemigroup, table: Optional[SubsetTable] = None) -> CheckResult:
    """I <= J iff I_+ <= J_+ within each of the two families."""
    from .checks import _subset_matrix

    name = "pospart_inclusion"
    table = table or SubsetTable(S)
    pos = S.positives
    families = {
        "left_rooted_left_ideals": table.where(P.left_rooted, P.left_ideal),
        "quasi_rooted_star_subsemigroups": table.where(P.quasi_rooted, P.star_subsemigroup),
    }
    for label, fam in families.items():
        fam = [int(x) for x in fam]
        a = _subset_matrix(fam)
        b = _subset_matrix([x & pos for x in fam])
        bad = np.argwhere(a != b)
        if len(bad):
            i, j = (int(v) for v in bad[0])
            return failed(name, {"family": label, "I": _fmt(fam[i]), "J": _fmt(fam[j])})
    return passed(name, **{k: len(v) for k, v in families.items()})


def subset_propositions_check(S: StarSemigroup, table: Optional[SubsetTable] = None) -> CheckResult:
    """The unconditional facts relating sqrt, T_+ and T n T* to the predicates."""
    name = "subset_propositions"
    table = table or SubsetTable(S)
    v = table.vector
    sq = table.sqrt
    sa = np.arange(len(table.members), dtype=np.int64) & table.star
    tplus = np.arange(len(table.members), dtype=np.int64) & S.positives
    lrli = v(P.left_rooted) & v(P.left_ideal)
    clauses = [
        ("positive hereditary => sqrt left ideal", v(P.positive_hereditary), v(P.left_ideal)[sq]),
        ("positive rooted => sqrt left rooted", v(P.positive_rooted), v(P.left_rooted)[sq]),
        ("left rooted => T_+ positive rooted", v(P.left_rooted), v(P.positive_rooted)[tplus]),
        ("left rooted left ideal => T_+ positive hereditary", lrli, v(P.positive_hereditary)[tplus]),
        ("left rooted left ideal => T_+ = T^2", lrli, tplus == table.t_squared),
        ("T n T* self-adjoint", np.ones_like(lrli), v(P.self_adjoint)[sa]),
        ("left ideal => T n T* quasi-ideal", v(P.left_ideal), v(P.quasi_ideal)[sa]),
        ("left rooted => T n T* quasi-rooted", v(P.left_rooted), v(P.quasi_rooted)[sa]),
        ("left rooted left ideal => T n T* hereditary", lrli, v(P.hereditary)[sa]),
        ("positive hereditary => bi-hereditary", v(P.positive_hereditary), v(P.bi_hereditary)),
        ("bi-ideal => bi-hereditary", v(P.bi_ideal), v(P.bi_hereditary)),
    ]
    for label, hyp, concl in clauses:
        bad = np.flatnonzero(hyp & ~concl)
        if len(bad):
            return failed(name, {"clause": label, "T": _fmt(int(bad[0]))})
    return passed(name, subsets=len(table.members), clauses=len(clauses))


def sampled_correspondence(S: StarSemigroup, seeds: Iterable[int]) -> CheckResult:
    """Spot-check both correspondences on the given left-rooted left ideals.

    Used above the exhaustive cap: each seed ideal I is mapped forward and
    back through both correspondences and the images are re-checked against
    the target predicates.
    """
    name = "sampled_correspondence"
    count = 0
    for I in seeds:
        if not (holds(S, P.left_rooted, I) and holds(S, P.left_ideal, I)):
            continue
        count += 1
        J = I & S.positives
        if J != t_squared(S, I) or sqrt(S, J) != I:
            return failed(name, {"clause": "rooted ideals", "I": _fmt(I)})
        if not (holds(S, P.positive_rooted, J) and holds(S, P.positive_hereditary, J)):
            return failed(name, {"clause": "positive image predicates", "I": _fmt(I)})
        K = sa_part(S, I)
        if sqrt(S, K) != I:
            return failed(name, {"clause": "hereditary", "I": _fmt(I)})
        for p in (P.quasi_rooted, P.hereditary, P.star_subsemigroup, P.quasi_ideal):
            if not holds(S, p, K):
                return failed(name, {"clause": f"self-adjoint image is {p.value}", "I": _fmt(I)})
    return passed(name, sampled=count)
