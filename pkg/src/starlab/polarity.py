"""Orthogonality relations, their polarities and the closed-set ortholattices.

A relation is stored row-wise as bitmasks: ``rows[t]`` is the set of s with
``t REL s``, so the polar of T is the intersection of ``rows[t]`` over t in T.
Closed-set families are built by intersection closure of the singleton
polars, never by sweeping all subsets.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from . import bits
from .checks import CheckResult, _subset_matrix, failed, not_met, passed, verify_isomorphism
from .errors import CapExceeded, ForeignElement, OrtholatticeAxiomFailure
from .semigroup import StarSemigroup, is_proper, unitize
from .subsets import P, SubsetTable, holds, sqrt, t_squared

KINDS = ("perp", "L", "R", "nabla", "bot4")
DEFAULT_SIZE_CAP = 100_000


def _cache(S: StarSemigroup) -> dict:
    return S.__dict__.setdefault("_starlab_cache", {})


class Relation:
    """Binary relation on (a subset of) the carrier of a *-semigroup."""

    def __init__(self, owner: StarSemigroup, kind: str, matrix: np.ndarray, universe: Optional[int] = None):
        self.owner = owner
        self.kind = kind
        self.universe = owner.full if universe is None else universe
        m = np.array(matrix, dtype=bool)
        if universe is not None:
            keep = owner.mask_bool(self.universe)
            m &= keep[None, :] & keep[:, None]
        m.setflags(write=False)
        self.matrix = m
        self.rows = [bits.from_bool(r) for r in m]

    def __repr__(self):
        return f"Relation({self.kind} on {self.owner.name or '?'})"

    def related(self, s: int, t: int) -> bool:
        return bool(self.matrix[s, t])

    def polar(self, T: int) -> int:
        """{s : t REL s for every t in T} (within the universe)."""
        out = self.universe
        rows = self.rows
        while T:
            low = T & -T
            out &= rows[low.bit_length() - 1]
            T ^= low
        return out

    def closure(self, T: int) -> int:
        return self.polar(self.polar(T))

    @property
    def symmetric(self) -> bool:
        return bool(np.array_equal(self.matrix, self.matrix.T))


def _zero_matrix(S: StarSemigroup, kind: str, T: Optional[int] = None) -> np.ndarray:
    mul, star, z = S.mul, S.star, S.zero
    if kind == "L":
        return mul[:, star] == z
    if kind == "R":
        return mul[star, :] == z
    if kind == "perp":
        return (mul[:, star] == z) & (mul == z)
    if kind == "bot4":
        return (
            (mul[:, star] == z)
            & (mul == z)
            & (mul[star, :] == z)
            & (mul[np.ix_(star, star)] == z)
        )
    if kind == "nabla":
        out = np.empty((S.n, S.n), dtype=bool)
        for s in range(S.n):
            out[s] = (mul[mul[s, :], :] == z).all(axis=0)
        return out
    if kind == "L_T":
        # T is a mask over the unitization S^1 (identity has index n)
        U = unitize(S)
        mids = np.array(bits.indices(T), dtype=np.int64)
        out = np.empty((S.n, S.n), dtype=bool)
        for s in range(S.n):
            left = U.mul[s, mids]  # s u for u in T
            out[s] = (U.mul[np.ix_(left, star)] == z).all(axis=0)
        return out
    raise ValueError(f"unknown relation kind {kind!r}")


def build_relation(S: StarSemigroup, kind: str, T: Optional[int] = None, check: bool = True) -> Relation:
    """Relation ``kind`` on S (cached per semigroup).

    For ``kind="L_T"`` pass T as a bitmask over the unitization S^1, whose
    adjoined identity has index ``S.n``.  On proper S the symmetry facts for
    L and nabla are asserted.
    """
    key = ("rel", kind, T)
    cache = _cache(S)
    if key in cache:
        return cache[key]
    rel = Relation(S, kind, _zero_matrix(S, kind, T))
    if check and kind in ("L", "nabla") and is_proper(S) and not rel.symmetric:
        raise AssertionError(f"{kind} is not symmetric on a proper *-semigroup")
    cache[key] = rel
    return rel


def polar(T: int, rel: Relation) -> int:
    return rel.polar(T)


def subset_table(S: StarSemigroup) -> SubsetTable:
    """The shared all-subsets table of S (n <= 16)."""
    cache = _cache(S)
    if "table" not in cache:
        cache["table"] = SubsetTable(S)
    return cache["table"]


def all_polars(S: StarSemigroup, kind: str) -> np.ndarray:
    """polar(T) for every subset T, as an array indexed by the bitmask of T."""
    key = ("all_polars", kind)
    cache = _cache(S)
    if key not in cache:
        table = subset_table(S)
        bad = ~build_relation(S, kind).matrix
        M = table.members.astype(np.int64)
        cache[key] = table.pack((M @ bad.astype(np.int64)) == 0)
    return cache[key]


# -- the closed-set lattice ---------------------------------------------------


def intersection_closure(generators: Iterable[int], top: int, cap: int = DEFAULT_SIZE_CAP) -> list[int]:
    fam = {top}
    for g in sorted(set(generators)):
        if g in fam:
            continue
        new = {f & g for f in fam}
        fam |= new
        if len(fam) > cap:
            raise CapExceeded(f"closed-set family exceeds {cap} members")
    return sorted(fam)


class PolarLattice:
    """The family of polar-closed subsets of a relation, as an ortholattice.

    Members are bitmasks in increasing numeric order; ``index`` maps a member
    to its position.  Index-level operations (``ortho_i``, ``meet_i``,
    ``join_i``) are what the sweeps use.
    """

    def __init__(self, relation: Relation, size_cap: int = DEFAULT_SIZE_CAP):
        self.relation = relation
        self.owner = relation.owner
        self.kind = relation.kind
        self.top = relation.universe
        gens = [relation.rows[s] for s in bits.iter_bits(self.top)]
        self.closed = intersection_closure(gens, self.top, size_cap)
        self.index = {m: i for i, m in enumerate(self.closed)}
        self.ortho_i = [self.index[relation.polar(m)] for m in self.closed]
        self.bottom = relation.polar(self.top)

    def __len__(self):
        return len(self.closed)

    def __contains__(self, A: int) -> bool:
        return A in self.index

    def __iter__(self):
        return iter(self.closed)

    def __repr__(self):
        return f"PolarLattice({self.kind}, {len(self)} closed sets)"

    def _i(self, A: int) -> int:
        try:
            return self.index[A]
        except KeyError:
            raise ForeignElement(f"{bits.indices(A)} is not closed for {self.kind}") from None

    # index-level operations
    @cached_property
    def meet_table(self) -> np.ndarray:
        k = len(self.closed)
        tab = np.empty((k, k), dtype=np.int64)
        for i, a in enumerate(self.closed):
            for j in range(i, k):
                tab[i, j] = tab[j, i] = self.index[a & self.closed[j]]
        return tab

    @cached_property
    def join_table(self) -> np.ndarray:
        o = np.array(self.ortho_i)
        return o[self.meet_table[np.ix_(o, o)]]

    @cached_property
    def leq_table(self) -> np.ndarray:
        return _subset_matrix(self.closed)

    def meet_i(self, i: int, j: int) -> int:
        return int(self.meet_table[i, j])

    def join_i(self, i: int, j: int) -> int:
        return int(self.join_table[i, j])

    # mask-level operations
    def ortho(self, A: int) -> int:
        return self.closed[self.ortho_i[self._i(A)]]

    def meet(self, A: int, B: int) -> int:
        self._i(A), self._i(B)
        return A & B

    def join(self, A: int, B: int) -> int:
        return self.ortho(self.meet(self.ortho(A), self.ortho(B)))

    def leq(self, A: int, B: int) -> bool:
        self._i(A), self._i(B)
        return A & ~B == 0

    def inf(self, family: Sequence[int]) -> int:
        out = self.top
        for A in family:
            self._i(A)
            out &= A
        return out

    def sup(self, family: Sequence[int]) -> int:
        return self.ortho(self.inf([self.ortho(A) for A in family]))

    def closure(self, T: int) -> int:
        return self.relation.closure(T)

    def interval(self, low: int, high: int) -> list[int]:
        return [m for m in self.closed if low & ~m == 0 and m & ~high == 0]

    # axioms
    def axiom_check(self) -> CheckResult:
        name = f"ortholattice_axioms[{self.kind}]"
        k = len(self.closed)
        o = self.ortho_i
        if self.top not in self.index:
            return failed(name, {"axiom": "top"})
        for i in range(k):
            if o[o[i]] != i:
                return failed(name, {"axiom": "involution", "A": bits.indices(self.closed[i])})
            if self.closed[i] & self.closed[o[i]] != self.bottom:
                return failed(name, {"axiom": "A meet A' = 0", "A": bits.indices(self.closed[i])})
            if self.join_i(i, o[i]) != self.index[self.top]:
                return failed(name, {"axiom": "A join A' = 1", "A": bits.indices(self.closed[i])})
        leq = self.leq_table
        oa = np.array(o)
        bad = np.argwhere(leq & ~leq[np.ix_(oa, oa)].T)
        if len(bad):
            i, j = (int(v) for v in bad[0])
            return failed(name, {"axiom": "order reversing", "A": bits.indices(self.closed[i]),
                                 "B": bits.indices(self.closed[j])})
        if k <= 600:
            # the join is the least closed upper bound
            closed = self.closed
            for i in range(k):
                for j in range(i, k):
                    ub = np.flatnonzero(leq[i] & leq[j])
                    least = self.top
                    for c in ub:
                        least &= closed[c]
                    if closed[self.join_i(i, j)] != least:
                        return failed(name, {"axiom": "join is least upper bound",
                                             "A": bits.indices(closed[i]), "B": bits.indices(closed[j])})
        return passed(name, size=k)


def closed_lattice(
    S: StarSemigroup,
    kind: str,
    size_cap: int = DEFAULT_SIZE_CAP,
    check: bool = True,
    T: Optional[int] = None,
) -> PolarLattice:
    """Closed sets of the relation ``kind`` (cached per semigroup).

    With ``check`` on and S proper, the ortholattice axioms are asserted
    and a failure raises OrtholatticeAxiomFailure.
    """
    key = ("lat", kind, T)
    cache = _cache(S)
    lat = cache.get(key)
    if lat is None:
        lat = PolarLattice(build_relation(S, kind, T), size_cap)
        lat.axioms = None
    if check and lat.axioms is None:
        lat.axioms = lat.axiom_check()
    if check and not lat.axioms and is_proper(S):
        raise OrtholatticeAxiomFailure(lat.axioms.witness["axiom"], lat.axioms.witness)
    cache[key] = lat
    return lat


# -- lattice-theoretic diagnostics -----------------------------------------------


def centre(lat: PolarLattice) -> list[int]:
    """Members z with p = (p meet z) join (p meet z') for every p."""
    J, M, o = lat.join_table, lat.meet_table, np.array(lat.ortho_i)
    k = len(lat)
    idx = np.arange(k)
    out = []
    for z in range(k):
        if np.array_equal(J[M[:, z], M[:, o[z]]], idx):
            out.append(lat.closed[z])
    return out


def check_orthomodular(lat: PolarLattice) -> CheckResult:
    """q <= p implies p = q join (p meet q')."""
    name = f"orthomodular[{lat.kind}]"
    J, M, o, leq = lat.join_table, lat.meet_table, np.array(lat.ortho_i), lat.leq_table
    k = len(lat)
    for q in range(k):
        for p in np.flatnonzero(leq[q]):
            if J[q, M[p, o[q]]] != p:
                return failed(name, {"q": bits.indices(lat.closed[q]), "p": bits.indices(lat.closed[p])})
    return passed(name, size=k)


def check_modular(lat: PolarLattice) -> CheckResult:
    """p join r = q join r, p meet r = q meet r and p <= q imply p = q."""
    name = f"modular[{lat.kind}]"
    J, M, leq = lat.join_table, lat.meet_table, lat.leq_table
    k = len(lat)
    for p in range(k):
        for q in np.flatnonzero(leq[p]):
            if q == p:
                continue
            hit = np.flatnonzero((J[p] == J[q]) & (M[p] == M[q]))
            if len(hit):
                r = int(hit[0])
                return failed(name, {"p": bits.indices(lat.closed[p]), "q": bits.indices(lat.closed[int(q)]),
                                     "r": bits.indices(lat.closed[r])})
    return passed(name, size=k)


def del_relation_check(lat: PolarLattice, nabla: Relation) -> CheckResult:
    """A nabla B implies (A join C) meet B = C meet B for every closed C."""
    name = "del_relation"
    J, M = lat.join_table, lat.meet_table
    pairs = 0
    for a, A in enumerate(lat.closed):
        An = nabla.polar(A)
        for b, B in enumerate(lat.closed):
            if B & ~An:
                continue
            pairs += 1
            if not np.array_equal(M[J[a, :], b], M[:, b]):
                c = int(np.flatnonzero(M[J[a, :], b] != M[:, b])[0])
                return failed(name, {"A": bits.indices(A), "B": bits.indices(B), "C": bits.indices(lat.closed[c])})
    return passed(name, pairs=pairs)


def hasse_edges(lat: PolarLattice) -> list[tuple[int, int]]:
    """Covering pairs (i, j) of lattice indices with closed[i] < closed[j]."""
    leq = lat.leq_table.copy()
    np.fill_diagonal(leq, False)
    edges = []
    for i in range(len(lat)):
        ups = np.flatnonzero(leq[i])
        for j in ups:
            between = leq[i] & leq[:, j]
            if not between.any():
                edges.append((i, int(j)))
    return edges


def _label(mask: int) -> str:
    return "{" + ",".join(str(i) for i in bits.indices(mask)) + "}"


def to_dot(lat: PolarLattice, title: Optional[str] = None) -> str:
    title = title or f"{lat.owner.name} {lat.kind}"
    lines = [f'digraph "{title}" {{', "  rankdir=BT;", "  node [shape=box];"]
    for i, m in enumerate(lat.closed):
        lines.append(f'  n{i} [label="{_label(m)}"];')
    for i, j in hasse_edges(lat):
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- theorem checkers -------------------------------------------------------------


def triequiv_check(S: StarSemigroup) -> CheckResult:
    """Elementwise relationships between nabla, L and perp (and R)."""
    name = "triequiv"
    star, mul = S.star, S.mul
    nab = build_relation(S, "nabla", check=False).matrix
    L = build_relation(S, "L", check=False).matrix
    R = build_relation(S, "R", check=False).matrix
    perp = build_relation(S, "perp", check=False).matrix

    def first(bad):
        hit = np.argwhere(bad)
        return [int(v) for v in hit[0]] if len(hit) else None

    clauses = [
        ("s nabla t <=> t* nabla s*", nab != nab[np.ix_(star, star)].T),
        ("s perp t <=> s perp t*", perp != perp[:, star]),
        ("s perp t => s L t", perp & ~L),
        ("L symmetric", L != L.T),
        ("R symmetric", R != R.T),
    ]
    for label, bad in clauses:
        w = first(bad)
        if w is not None:
            return failed(name, {"clause": label, "pair": w})
    for u in range(S.n):
        # s L tu <=> s u* L t
        lhs = L[:, mul[:, u]]
        rhs = L[mul[:, star[u]], :]
        w = first(lhs != rhs)
        if w is not None:
            return failed(name, {"clause": "s L tu <=> su* L t", "triple": w + [u]})
    if is_proper(S):
        sq = S.squares
        proper_clauses = [
            ("s*s nabla t <=> s nabla t", nab[sq, :] != nab),
            ("s* nabla t <=> s nabla t", nab[star, :] != nab),
            ("nabla symmetric", nab != nab.T),
            ("s nabla t => s perp t", nab & ~perp),
        ]
        if S.is_commutative:
            zero = mul == S.zero
            proper_clauses += [
                ("commutative: nabla = perp", nab != perp),
                ("commutative: perp = L", perp != L),
                ("commutative: L = (st = 0)", L != zero),
            ]
        for label, bad in proper_clauses:
            w = first(bad)
            if w is not None:
                return failed(name, {"clause": label, "pair": w})
    return passed(name, proper=is_proper(S))


def proper_product_check(S: StarSemigroup) -> CheckResult:
    """st = 0 <=> s*st = 0, and the three cancellation laws for positives."""
    name = "proper_products"
    if not is_proper(S):
        return not_met(name, "proper")
    mul, z = S.mul, S.zero
    zero = mul == z
    bad = np.argwhere(zero != (mul[S.squares, :] == z))
    if len(bad):
        return failed(name, {"clause": "st = 0 <=> s*st = 0", "pair": [int(v) for v in bad[0]]})
    pos = S.positive_indices
    for p in pos:
        if not np.array_equal(mul[mul[p, p], :] == z, mul[p, :] == z):
            s = int(np.flatnonzero((mul[mul[p, p], :] == z) != (mul[p, :] == z))[0])
            return failed(name, {"clause": "p^2 s = 0 <=> ps = 0", "p": int(p), "s": s})
    for q in pos:
        qp = mul[q, pos]  # indexed by p
        qps = mul[qp, :]  # (p, s)
        pqps = mul[pos[:, None], qps]
        bad = np.argwhere((pqps == z) != (qps == z))
        if len(bad):
            i, s = (int(v) for v in bad[0])
            return failed(name, {"clause": "pqps = 0 <=> qps = 0", "p": int(pos[i]), "q": int(q), "s": s})
        pqp = mul[pos, qp]
        bad = np.flatnonzero((pqp == z) != (qp == z))
        if len(bad):
            return failed(name, {"clause": "pqp = 0 <=> qp = 0", "p": int(pos[bad[0]]), "q": int(q)})
    return passed(name, positives=len(pos))


def _family(lat: PolarLattice) -> set:
    return set(lat.closed)


def lperpequiv_check(S: StarSemigroup) -> CheckResult:
    """P^L and P^perp are orthoisomorphic via T -> T n T*, and the three
    descriptions of P^nabla agree; also P^perp = P^bot4 with equal polars."""
    name = "lperpequiv"
    if not is_proper(S):
        return not_met(name, "proper")
    L = closed_lattice(S, "L")
    Pp = closed_lattice(S, "perp")
    N = closed_lattice(S, "nabla")
    B4 = closed_lattice(S, "bot4")
    R = closed_lattice(S, "R")
    fmt = bits.indices
    iso = verify_isomorphism(
        name, L.closed, Pp.closed,
        lambda T: T & S.star_of(T), lambda T: sqrt(S, T),
        ortho=(L.ortho, Pp.ortho), fmt=fmt,
    )
    if not iso:
        iso.witness["part"] = "L ~ perp"
        return iso
    iso = verify_isomorphism(
        name, R.closed, Pp.closed,
        lambda T: T & S.star_of(T), lambda T: S.star_of(sqrt(S, T)),
        ortho=(R.ortho, Pp.ortho), fmt=fmt,
    )
    if not iso:
        iso.witness["part"] = "R ~ perp"
        return iso
    fam_n, fam_l, fam_p = _family(N), _family(L), _family(Pp)
    descriptions = {
        "P^L n P^perp": fam_l & fam_p,
        "self-adjoint members of P^L": {T for T in fam_l if S.star_of(T) == T},
        "left-ideal members of P^perp": {T for T in fam_p if S.product_set(S.full, T) & ~T == 0},
    }
    for label, fam in descriptions.items():
        if fam != fam_n:
            diff = sorted(fam ^ fam_n)[0]
            return failed(name, {"part": f"P^nabla = {label}", "T": fmt(diff)})
    if _family(B4) != fam_p:
        diff = sorted(_family(B4) ^ fam_p)[0]
        return failed(name, {"part": "P^perp = P^bot4", "T": fmt(diff)})
    for T in Pp.closed:
        if Pp.relation.polar(T) != B4.relation.polar(T):
            return failed(name, {"part": "perp polar = bot4 polar on P^perp", "T": fmt(T)})
    return passed(name, L=len(L), perp=len(Pp), nabla=len(N))


def nabla_sup_check(S: StarSemigroup) -> CheckResult:
    """Suprema of nabla-closed families agree in P^nabla and in P^perp."""
    name = "nabla_sup"
    if not is_proper(S):
        return not_met(name, "proper")
    N = closed_lattice(S, "nabla")
    Pp = closed_lattice(S, "perp")
    fams = [[a, b] for a in N.closed for b in N.closed] + [N.closed]
    for fam in fams:
        if N.sup(fam) != Pp.sup(fam):
            return failed(name, {"family": [bits.indices(A) for A in fam]})
    return passed(name, families=len(fams))


def _sample_subsets(S: StarSemigroup, samples: int, seed: int) -> list[int]:
    import random

    rng = random.Random(seed)
    out = {S.zero_mask, S.full, 0}
    for lat_kind in ("perp", "nabla", "L"):
        out.update(closed_lattice(S, lat_kind, check=False).closed)
    while len(out) < samples:
        density = rng.choice([1, 2, 3, 8])
        T = 0
        for i in range(S.n):
            if rng.randrange(density * 8) == 0:
                T |= 1 << i
        if rng.random() < 0.3:
            T = 1 << rng.randrange(S.n)
        out.add(T)
    return sorted(out)


def _additively_closed(S: StarSemigroup, T: int) -> bool:
    idx = bits.indices(T)
    if not idx:
        return True
    inT = S.mask_bool(T)
    return bool(inT[S.ring.add[np.ix_(idx, idx)]].all() and inT[S.ring.neg[idx]].all())


def lbotprp_check(S: StarSemigroup, exhaustive_cap: int = 12, samples: int = 96, seed: int = 0) -> CheckResult:
    """Closure properties of T^nabla, T^L and T^perp for every subset T.

    Exhaustive (vectorized) for n <= exhaustive_cap, otherwise over a seeded
    sample of subsets that includes every closed set.
    """
    name = "lbotprp"
    if not is_proper(S):
        return not_met(name, "proper")
    if S.n <= exhaustive_cap:
        return _lbotprp_exhaustive(S, name)
    nab = build_relation(S, "nabla")
    L = build_relation(S, "L")
    perp = build_relation(S, "perp")
    sample = _sample_subsets(S, samples, seed)
    for T in sample:
        N, Lp, Pp = nab.polar(T), L.polar(T), perp.polar(T)
        clauses = [
            ("1: T^nabla rooted self-adjoint ideal",
             lambda: holds(S, P.rooted, N) and holds(S, P.ideal, N) and holds(S, P.self_adjoint, N)),
            ("2: T^L = sqrt(T^perp) = (T^2)^L", lambda: Lp == sqrt(S, Pp) == L.polar(t_squared(S, T))),
            ("2: T^L left rooted left ideal", lambda: holds(S, P.left_rooted, Lp) and holds(S, P.left_ideal, Lp)),
            ("3: T^perp = T^L n T^L*", lambda: Pp == Lp & S.star_of(Lp)),
            ("3: T^perp quasi-rooted hereditary quasi-ideal",
             lambda: all(holds(S, p, Pp) for p in (P.quasi_rooted, P.hereditary, P.quasi_ideal, P.self_adjoint))),
            ("4: T^LL = T^perpL", lambda: L.polar(Lp) == L.polar(Pp)),
            ("5: right ideal => T^nabla = T^perp = T^L",
             lambda: not holds(S, P.right_ideal, T) or N == Pp == Lp),
        ]
        if S.ring is not None:
            clauses.append(("6: polars additively closed",
                            lambda: all(_additively_closed(S, X) for X in (N, Lp, Pp))))
        for label, ok in clauses:
            if not ok():
                return failed(name, {"clause": label, "T": bits.indices(T)})
    return passed(name, mode="sampled", subsets=len(sample))


def _lbotprp_exhaustive(S: StarSemigroup, name: str) -> CheckResult:
    table = subset_table(S)
    M = table.members
    v = table.vector
    N, Lp, Pp = all_polars(S, "nabla"), all_polars(S, "L"), all_polars(S, "perp")
    sq, st, t2 = table.sqrt, table.star, table.t_squared
    clauses = [
        ("1: T^nabla rooted self-adjoint ideal", v(P.rooted)[N] & v(P.ideal)[N] & v(P.self_adjoint)[N]),
        ("2: T^L = sqrt(T^perp) = (T^2)^L", (Lp == sq[Pp]) & (Lp == Lp[t2])),
        ("2: T^L left rooted left ideal", v(P.left_rooted)[Lp] & v(P.left_ideal)[Lp]),
        ("3: T^perp = T^L n T^L*", Pp == (Lp & st[Lp])),
        ("3: T^perp quasi-rooted hereditary quasi-ideal",
         v(P.quasi_rooted)[Pp] & v(P.hereditary)[Pp] & v(P.quasi_ideal)[Pp] & v(P.self_adjoint)[Pp]),
        ("4: T^LL = T^perpL", Lp[Lp] == Lp[Pp]),
        ("5: right ideal => T^nabla = T^perp = T^L", ~v(P.right_ideal) | ((N == Pp) & (Pp == Lp))),
    ]
    if S.ring is not None:
        add, neg = S.ring.add, S.ring.neg
        ok = np.ones(len(M), dtype=bool)
        for a in range(S.n):
            ok &= ~M[:, a] | ((~M | M[:, add[a, :]]).all(1) & M[:, neg[a]])
        clauses.append(("6: polars additively closed", ok[N] & ok[Lp] & ok[Pp]))
    for label, good in clauses:
        bad = np.flatnonzero(~good)
        if len(bad):
            return failed(name, {"clause": label, "T": bits.indices(int(bad[0]))})
    return passed(name, mode="exhaustive", subsets=len(M))
