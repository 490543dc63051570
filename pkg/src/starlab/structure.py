"""Relative annihilator lattices inside *-subsemigroups and the results that
transfer structure between a subsemigroup and the whole carrier.

Families of subsemigroups and ideals are enumerated exhaustively for small
carriers and drawn from :func:`curated_subsets` otherwise.
"""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

from . import bits
from .checks import CheckResult, failed, not_met, passed, verify_isomorphism
from .errors import StarlabError
from .polarity import (
    PolarLattice,
    Relation,
    _cache,
    all_polars,
    build_relation,
    centre,
    closed_lattice,
    subset_table,
)
from .semigroup import StarSemigroup, is_proper
from .subsets import P, holds

EXHAUSTIVE_FAMILY_CAP = 12


class NotProper(StarlabError):
    pass


class SubSemigroupView:
    """A *-subsemigroup A containing 0, with relations computed inside A."""

    def __init__(self, owner: StarSemigroup, members: int):
        if not members & owner.zero_mask:
            raise ValueError("a subsemigroup view must contain the zero")
        if not holds(owner, P.star_subsemigroup, members):
            raise ValueError(f"{bits.indices(members)} is not a *-subsemigroup")
        self.owner = owner
        self.members = members
        self._lattices: dict = {}
        self._relations: dict = {}

    @property
    def proper(self) -> bool:
        S = self.owner
        sq = S.squares
        return not any(sq[a] == S.zero and a != S.zero for a in bits.iter_bits(self.members))

    def relation(self, kind: str) -> Relation:
        if kind not in self._relations:
            S = self.owner
            if kind == "nabla":
                mids = np.array(bits.indices(self.members))
                mat = np.empty((S.n, S.n), dtype=bool)
                for s in range(S.n):
                    mat[s] = (S.mul[S.mul[s, mids], :] == S.zero).all(axis=0)
            else:
                mat = build_relation(S, kind, check=False).matrix
            self._relations[kind] = Relation(S, kind, mat, universe=self.members)
        return self._relations[kind]

    def lattice(self, kind: str) -> PolarLattice:
        if kind not in self._lattices:
            lat = PolarLattice(self.relation(kind))
            lat.axioms = lat.axiom_check()
            self._lattices[kind] = lat
        return self._lattices[kind]

    @property
    def is_commutative(self) -> bool:
        idx = bits.indices(self.members)
        sub = self.owner.mul[np.ix_(idx, idx)]
        return bool(np.array_equal(sub, sub.T))


def relative_lattice(A: SubSemigroupView, kind: str, strict: bool = False) -> PolarLattice:
    """Closed-set lattice of the relation computed within A.

    With ``strict`` set, an improper A raises NotProper; otherwise the
    lattice is still computed and its axiom report says what broke.
    """
    if strict and not A.proper:
        raise NotProper(f"{bits.indices(A.members)} is not proper")
    return A.lattice(kind)


# -- families ---------------------------------------------------------------


def curated_subsets(S: StarSemigroup, limit: int = 48) -> list[int]:
    """Deterministic list of structurally interesting subsets for large S.

    {0}, S, members of P^perp and P^nabla, pSp for positive p, principal
    ideals of positives (and their self-adjoint closures), and the
    *-subsemigroups generated by single positives.
    """
    key = ("curated", limit)
    cache = _cache(S)
    if key in cache:
        return cache[key]
    mul, z = S.mul, S.zero_mask
    out = {z, S.full}
    out.update(closed_lattice(S, "perp", check=False).closed)
    out.update(closed_lattice(S, "nabla", check=False).closed)
    pos = [int(p) for p in S.positive_indices if p != S.zero]
    step = max(1, len(pos) // limit)
    for p in pos[::step]:
        out.add(bits.from_indices(np.unique(mul[mul[p, :], p])) | z)
        row = np.unique(mul[:, p])
        left = bits.from_indices(np.unique(np.concatenate([row, [p]])))
        ideal = S.product_set(left, S.full) | left
        out.add(ideal | z)
        out.add((ideal & S.star_of(ideal)) | z)
        out.add(bits.from_indices(S.power_cycle(p)) | z)
    result = sorted(out)
    cache[key] = result
    return result


def family(S: StarSemigroup, *preds, exhaustive_cap: int = EXHAUSTIVE_FAMILY_CAP) -> list[int]:
    """Subsets containing 0 that satisfy every predicate."""
    key = ("family", preds, exhaustive_cap)
    cache = _cache(S)
    if key not in cache:
        if S.n <= exhaustive_cap:
            cache[key] = [int(k) for k in subset_table(S).where(*preds)]
        else:
            cache[key] = [T for T in curated_subsets(S) if all(holds(S, p, T) for p in preds)]
    return cache[key]


def _aggregate(name: str, results: Iterable[CheckResult], **stats) -> CheckResult:
    count = 0
    unmet = None
    for r in results:
        if r.failed:
            return r
        if r:
            count += 1
        elif unmet is None:
            unmet = r
    if count == 0:
        return not_met(name, unmet.detail.replace("unmet: ", "") if unmet else "no applicable instance", **stats)
    return passed(name, instances=count, **stats)


# -- checks -------------------------------------------------------------------


def tri_restriction_check(S: StarSemigroup, I: int) -> CheckResult:
    """s nabla_I t <=> s nabla t for s, t in a self-adjoint bi-ideal I."""
    name = "tri_restriction"
    if not is_proper(S):
        return not_met(name, "proper")
    if not (holds(S, P.bi_ideal, I) and holds(S, P.self_adjoint, I) and I & S.zero_mask):
        return not_met(name, "self-adjoint bi-ideal")
    view = SubSemigroupView(S, I)
    rel_I = view.relation("nabla").matrix
    rel = build_relation(S, "nabla").matrix
    idx = bits.indices(I)
    bad = np.argwhere(rel_I[np.ix_(idx, idx)] != rel[np.ix_(idx, idx)])
    if len(bad):
        return failed(name, {"s": idx[bad[0][0]], "t": idx[bad[0][1]]})
    return passed(name)


def centhm_check(S: StarSemigroup, A: int, I: int) -> CheckResult:
    """A^L = (A n I)^L n (A n I^L)^L and the same identity for perp."""
    name = "centhm"
    if not is_proper(S):
        return not_met(name, "proper")
    if not (holds(S, P.bi_hereditary, A) and holds(S, P.star_subsemigroup, A)):
        return not_met(name, "bi-hereditary *-subsemigroup A")
    if not holds(S, P.ideal, I):
        return not_met(name, "ideal I")
    for kind in ("L", "perp"):
        rel = build_relation(S, kind)
        lhs = rel.polar(A)
        rhs = rel.polar(A & I) & rel.polar(A & rel.polar(I))
        if lhs != rhs:
            return failed(name, {"kind": kind, "A": bits.indices(A), "I": bits.indices(I),
                                 "element": bits.indices(lhs ^ rhs)[0]})
    return passed(name)


def centhm_suite(S: StarSemigroup) -> CheckResult:
    As = family(S, P.star_subsemigroup, P.bi_hereditary)
    Is = family(S, P.ideal)
    return _aggregate("centhm", (centhm_check(S, A, I) for A in As for I in Is),
                      pairs=len(As) * len(Is))


def annideal_centre_check(S: StarSemigroup) -> CheckResult:
    """P^nabla lies inside the centre of P^perp."""
    name = "annideal_centre"
    if not is_proper(S):
        return not_met(name, "proper")
    Pp = closed_lattice(S, "perp")
    cen = set(centre(Pp))
    for A in closed_lattice(S, "nabla").closed:
        if A not in cen:
            return failed(name, {"A": bits.indices(A)})
    return passed(name, centre=len(cen))


def relcen_maps(S: StarSemigroup, A: int) -> CheckResult:
    """P(A)^nabla_A ~ {I in P^nabla : I <= A^nabla nabla} via J -> J^nabla nabla, I -> A n I.

    For a self-adjoint bi-ideal the full orthoisomorphism is verified; for a
    bi-hereditary *-subsemigroup only that I -> A n I is an injective
    orthoembedding into P(A)^nabla_A.
    """
    name = "relcen"
    if not is_proper(S):
        return not_met(name, "proper")
    if not (holds(S, P.star_subsemigroup, A) and A & S.zero_mask):
        return not_met(name, "*-subsemigroup A")
    bi_ideal = holds(S, P.bi_ideal, A)
    if not bi_ideal and not holds(S, P.bi_hereditary, A):
        return not_met(name, "bi-ideal or bi-hereditary A")
    view = SubSemigroupView(S, A)
    left = view.lattice("nabla")
    N = closed_lattice(S, "nabla")
    top = N.relation.closure(A)
    right = [I for I in N.closed if I & ~top == 0]
    rel_A = left.relation

    def ortho_right(I):
        return N.relation.polar(I) & top

    if bi_ideal:
        return verify_isomorphism(
            name, right, left.closed,
            lambda I: A & I, N.relation.closure,
            ortho=(ortho_right, rel_A.polar), fmt=bits.indices, mode="isomorphism",
        )
    images = {}
    for I in right:
        J = A & I
        if J not in left:
            return failed(name, {"clause": "A n I not closed in A", "I": bits.indices(I)})
        if J in images:
            return failed(name, {"clause": "not injective", "I": bits.indices(I),
                                 "other": bits.indices(images[J])})
        images[J] = I
        if A & ortho_right(I) != rel_A.polar(J):
            return failed(name, {"clause": "orthocomplement", "I": bits.indices(I)})
    for I in right:
        for K in right:
            if (I & ~K == 0) != ((A & I) & ~(A & K) == 0):
                return failed(name, {"clause": "order", "I": bits.indices(I), "K": bits.indices(K)})
    return passed(name, mode="embedding", size=len(right))


def relcen_suite(S: StarSemigroup) -> CheckResult:
    As = family(S, P.star_subsemigroup, P.bi_hereditary)
    return _aggregate("relcen", (relcen_maps(S, A) for A in As), subsemigroups=len(As))


def comann_check(S: StarSemigroup, A: int) -> CheckResult:
    """For commutative bi-hereditary A: P(A)^perp_A = {A n I : I in P^perp}.

    When A is itself a *-annihilator, also P(A)^perp_A = [{0}, A] and A is
    nabla-finite.
    """
    name = "comann"
    if not is_proper(S):
        return not_met(name, "proper")
    if not (holds(S, P.star_subsemigroup, A) and holds(S, P.bi_hereditary, A) and A & S.zero_mask):
        return not_met(name, "bi-hereditary *-subsemigroup A")
    view = SubSemigroupView(S, A)
    if not view.is_commutative:
        return not_met(name, "commutative A")
    rel = view.lattice("perp")
    Pp = closed_lattice(S, "perp")
    traces = {A & I for I in Pp.closed}
    if traces != set(rel.closed):
        diff = sorted(traces ^ set(rel.closed))[0]
        return failed(name, {"clause": "traces", "A": bits.indices(A), "member": bits.indices(diff)})
    if A in Pp:
        interval = Pp.interval(S.zero_mask, A)
        if set(interval) != set(rel.closed):
            diff = sorted(set(interval) ^ set(rel.closed))[0]
            return failed(name, {"clause": "interval", "A": bits.indices(A), "member": bits.indices(diff)})
        nab = build_relation(S, "nabla")
        An = nab.polar(A)
        for B in interval:
            if B != A and nab.polar(B) == An:
                return failed(name, {"clause": "nabla-finite", "A": bits.indices(A), "B": bits.indices(B)})
    return passed(name)


def comann_suite(S: StarSemigroup) -> CheckResult:
    As = set(family(S, P.star_subsemigroup, P.bi_hereditary))
    if is_proper(S):
        As.update(closed_lattice(S, "perp").closed)
    return _aggregate("comann", (comann_check(S, A) for A in sorted(As)), subsemigroups=len(As))


def nabla_finite(S: StarSemigroup, A: int) -> bool:
    """No B < A in P^perp has B^nabla = A^nabla."""
    Pp = closed_lattice(S, "perp")
    nab = build_relation(S, "nabla")
    An = nab.polar(A)
    return all(B == A or nab.polar(B) != An for B in Pp.interval(S.zero_mask, A))


def essential(S: StarSemigroup, T: int, within: Optional[int] = None) -> bool:
    """T^perp = {0}, with the polar taken inside ``within`` when given."""
    perp = build_relation(S, "perp")
    P_T = perp.polar(T)
    if within is not None:
        P_T &= within
    return P_T == S.zero_mask


def _right_ideals_of(S: StarSemigroup, A: int) -> list[int]:
    """Right ideals I of A (IA <= I), I <= A; exhaustive over subsets of A."""
    if S.n <= EXHAUSTIVE_FAMILY_CAP:
        table = subset_table(S)
        M = table.members
        ks = np.arange(len(M), dtype=np.int64)
        ok = (ks & ~A) == 0
        for i in bits.iter_bits(A):
            for a in bits.iter_bits(A):
                ok &= ~M[:, i] | M[:, S.mul[i, a]]
        return [int(k) for k in np.flatnonzero(ok)]
    out = []
    for T in curated_subsets(S):
        if T & ~A == 0 and S.product_set(T, A) & ~T == 0:
            out.append(T)
    return out


def essential_checks(S: StarSemigroup) -> CheckResult:
    """Essential right ideals of bi-hereditary A share A's polars; essential
    ideals meet bi-hereditary A essentially; a self-adjoint essential ideal
    carries the same perp and nabla lattices as S."""
    name = "essential"
    if not is_proper(S):
        return not_met(name, "proper")
    As = family(S, P.star_subsemigroup, P.bi_hereditary)
    rels = {k: build_relation(S, k) for k in ("L", "perp", "nabla")}
    zero = S.zero_mask
    small = S.n <= EXHAUSTIVE_FAMILY_CAP
    polars = {k: all_polars(S, k) for k in rels} if small else None
    count = 0
    for A in As:
        pA = {k: r.polar(A) for k, r in rels.items()}
        for I in _right_ideals_of(S, A):
            if small:
                if (int(polars["perp"][I]) & A) != zero:
                    continue
                got = {k: int(polars[k][I]) for k in rels}
            else:
                if rels["perp"].polar(I) & A != zero:
                    continue
                got = {k: r.polar(I) for k, r in rels.items()}
            count += 1
            for k in rels:
                if got[k] != pA[k]:
                    return failed(name, {"clause": f"essential right ideal: I^{k} = A^{k}",
                                         "A": bits.indices(A), "I": bits.indices(I)})
    ess_ideals = [I for I in family(S, P.ideal) if rels["perp"].polar(I) == zero]
    for I in ess_ideals:
        for A in As:
            count += 1
            if rels["perp"].polar(A & I) & A != zero:
                return failed(name, {"clause": "A n I essential in A", "A": bits.indices(A), "I": bits.indices(I)})
    Pp, N = closed_lattice(S, "perp"), closed_lattice(S, "nabla")
    for I in ess_ideals:
        if S.star_of(I) != I:
            continue
        view = SubSemigroupView(S, I)
        for kind, whole in (("perp", Pp), ("nabla", N)):
            part = view.lattice(kind)
            r = verify_isomorphism(
                name, part.closed, whole.closed,
                rels["perp"].closure, lambda B, I=I: B & I,
                ortho=(part.relation.polar, whole.relation.polar), fmt=bits.indices,
            )
            count += 1
            if not r:
                r.witness.update({"clause": f"P(I)^{kind}_I ~ P^{kind}: " + r.witness["clause"],
                                  "I": bits.indices(I)})
                return r
    return passed(name, instances=count, essential_ideals=len(ess_ideals))


def tri_restriction_suite(S: StarSemigroup) -> CheckResult:
    Is = family(S, P.bi_ideal, P.self_adjoint)
    return _aggregate("tri_restriction", (tri_restriction_check(S, I) for I in Is), bi_ideals=len(Is))


def structure_suite(S: StarSemigroup) -> list[CheckResult]:
    return [
        tri_restriction_suite(S),
        centhm_suite(S),
        annideal_centre_check(S),
        relcen_suite(S),
        comann_suite(S),
        essential_checks(S),
    ]
