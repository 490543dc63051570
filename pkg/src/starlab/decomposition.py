"""Type decompositions of the *-annihilator lattice along P^nabla.

Each decomposition is found by sweeping every A in P^nabla and keeping the
candidates that satisfy the defining clauses; exactly one must survive.
"Contains no finite element" is read as "contains no nonzero finite element",
since {0} is always finite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from . import bits
from .checks import CheckResult, failed, not_met, passed
from .equivalence import additive, complete, equivalence
from .errors import HypothesisNotMet, UniquenessViolation
from .polarity import build_relation, closed_lattice
from .semigroup import StarSemigroup, is_proper
from .structure import nabla_finite

KINDS = ("type_I", "type_I1", "type_III", "finite")


@dataclass
class DecompositionResult:
    kind: str
    A: int
    certificate: Optional[int]
    unique: bool
    candidates: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "A": bits.indices(self.A),
            "certificate": None if self.certificate is None else bits.indices(self.certificate),
            "unique": self.unique,
            "candidates": [bits.indices(c) for c in self.candidates],
        }


def _gates(S: StarSemigroup, kind: str) -> list[str]:
    unmet = []
    if not is_proper(S):
        return ["proper"]
    if kind in ("type_III", "finite"):
        if not equivalence(S).reflexive:
            unmet.append("sim reflexive")
        if additive(S, "nabla") is not None or complete(S, "nabla") is not None:
            unmet.append("sim nabla-complete")
    return unmet


def _finiteness(S: StarSemigroup, kind: str) -> Callable[[int], bool]:
    if kind in ("type_I", "type_I1"):
        return lambda A: nabla_finite(S, A)
    E = equivalence(S)
    return lambda A: E.finite(E.lattice.index[A])


def _decompose(S: StarSemigroup, kind: str) -> DecompositionResult:
    unmet = _gates(S, kind)
    if unmet:
        raise HypothesisNotMet(unmet)
    finite = _finiteness(S, kind)
    Pp = closed_lattice(S, "perp")
    N = closed_lattice(S, "nabla")
    nab = build_relation(S, "nabla")
    zero = S.zero_mask
    # generalized decompositions range over all of P^perp, the others over P^nabla
    pool = Pp.closed if kind in ("type_I", "type_III") else N.closed
    finite_members = [B for B in pool if finite(B)]
    candidates, certs = [], {}
    for A in N.closed:
        if kind in ("type_I", "type_III"):
            certs_A = [B for B in finite_members if nab.closure(B) == A]
            if not certs_A:
                continue
            cert = certs_A[0]
        else:
            if not finite(A):
                continue
            cert = A
        Ap = Pp.ortho(A)
        if any(B != zero and B & ~Ap == 0 for B in finite_members):
            continue
        candidates.append(A)
        certs[A] = cert
    if len(candidates) != 1:
        raise UniquenessViolation(kind, [bits.indices(c) for c in candidates])
    A = candidates[0]
    return DecompositionResult(kind, A, certs[A], True, candidates)


def type_I_decomposition(S: StarSemigroup) -> DecompositionResult:
    """Unique A in P^nabla generated by a nabla-finite B, with no nonzero
    nabla-finite *-annihilator below A^perp."""
    return _decompose(S, "type_I")


def type_I1_decomposition(S: StarSemigroup) -> DecompositionResult:
    """Unique nabla-finite A in P^nabla with no nonzero nabla-finite member
    of P^nabla below A^perp."""
    return _decompose(S, "type_I1")


def type_III_decomposition(S: StarSemigroup) -> DecompositionResult:
    """As type_I with sim-finiteness; needs reflexive, nabla-complete ~."""
    return _decompose(S, "type_III")


def finite_decomposition(S: StarSemigroup) -> DecompositionResult:
    """As type_I1 with sim-finiteness; needs reflexive, nabla-complete ~."""
    return _decompose(S, "finite")


DECOMPOSERS = {
    "type_I": type_I_decomposition,
    "type_I1": type_I1_decomposition,
    "type_III": type_III_decomposition,
    "finite": finite_decomposition,
}


def verify_decomposition(S: StarSemigroup, result: DecompositionResult) -> bool:
    """Re-check a result's defining clauses from scratch."""
    finite = _finiteness(S, result.kind)
    Pp = closed_lattice(S, "perp")
    N = closed_lattice(S, "nabla")
    nab = build_relation(S, "nabla")
    if result.A not in N:
        return False
    if result.kind in ("type_I", "type_III"):
        if not (result.certificate in Pp and finite(result.certificate)
                and nab.closure(result.certificate) == result.A):
            return False
        pool = Pp.closed
    else:
        if not finite(result.A):
            return False
        pool = N.closed
    Ap = Pp.ortho(result.A)
    return not any(B != S.zero_mask and B & ~Ap == 0 and finite(B) for B in pool)


def decomposition_check(S: StarSemigroup, kind: str) -> CheckResult:
    name = f"decomposition[{kind}]"
    unmet = _gates(S, kind)
    if unmet:
        return not_met(name, unmet)
    try:
        res = DECOMPOSERS[kind](S)
    except UniquenessViolation as exc:
        return failed(name, {"candidates": exc.candidates})
    if not verify_decomposition(S, res):
        return failed(name, {"clause": "certificate re-verification", **res.to_dict()})
    return passed(name, A=bits.indices(res.A), certificate=bits.indices(res.certificate))


def decomposition_suite(S: StarSemigroup) -> list[CheckResult]:
    results = [decomposition_check(S, k) for k in KINDS]
    if results[0] and results[1]:
        inside = results[1].stats["A"]
        outer = results[0].stats["A"]
        results[1].stats["inside_type_I"] = set(inside) <= set(outer)
    return results
