"""Full analysis of one instance: metadata, lattices, every checker and the
decompositions, collected into a JSON-ready dict."""

from __future__ import annotations

import time
from typing import Callable, Iterable, Optional

import numpy as np

from . import bits
from .checks import FAIL, NOT_MET, PASS, CheckResult, failed, not_met
from .decomposition import DECOMPOSERS, decomposition_suite
from .equivalence import equivalence_suite
from .errors import CapExceeded, HypothesisNotMet, OrtholatticeAxiomFailure, UniquenessViolation
from .polarity import (
    KINDS,
    build_relation,
    centre,
    check_modular,
    check_orthomodular,
    closed_lattice,
    del_relation_check,
    lbotprp_check,
    lperpequiv_check,
    nabla_sup_check,
    proper_product_check,
    subset_table,
    triequiv_check,
)
from .semigroup import (
    StarSemigroup,
    check_positive_powers,
    cancellation_properness_check,
    classify_elements,
    improper_witness,
    is_proper,
)
from .structure import curated_subsets, structure_suite
from .subsets import (
    EXHAUSTIVE_CAP,
    correspondence_hereditary,
    correspondence_rooted_ideals,
    pospart_inclusion_check,
    sampled_correspondence,
    subset_propositions_check,
)

SCHEMA_VERSION = 1


def _lattice_axioms(S: StarSemigroup, kind: str) -> CheckResult:
    name = f"ortholattice_axioms[{kind}]"
    try:
        lat = closed_lattice(S, kind)
    except OrtholatticeAxiomFailure as exc:
        return failed(name, exc.witness)
    if not is_proper(S):
        # the axioms are only promised for proper S; record what was observed
        return not_met(name, "proper", observed=lat.axioms.status)
    return lat.axioms


def _del_relation(S: StarSemigroup) -> CheckResult:
    if not is_proper(S):
        return not_met("del_relation", "proper")
    return del_relation_check(closed_lattice(S, "perp"), build_relation(S, "nabla"))


def _left_ideal_seeds(S: StarSemigroup) -> list[int]:
    seeds = set(curated_subsets(S))
    for s in range(S.n):
        col = np.unique(S.mul[:, s])
        seeds.add(bits.from_indices(col) | (1 << s) | S.zero_mask)
    return sorted(seeds)


def subset_checks(S: StarSemigroup) -> list[CheckResult]:
    if S.n <= EXHAUSTIVE_CAP:
        table = subset_table(S)
        return [
            correspondence_rooted_ideals(S, table),
            correspondence_hereditary(S, table),
            pospart_inclusion_check(S, table),
            subset_propositions_check(S, table),
        ]
    return [sampled_correspondence(S, _left_ideal_seeds(S))]


def polarity_checks(S: StarSemigroup) -> list[CheckResult]:
    out = [
        triequiv_check(S),
        proper_product_check(S),
        lperpequiv_check(S),
        nabla_sup_check(S),
        lbotprp_check(S),
    ]
    out += [_lattice_axioms(S, k) for k in KINDS]
    out.append(_del_relation(S))
    return out


SECTIONS: list[tuple[str, Callable[[StarSemigroup], list[CheckResult]]]] = [
    ("semigroup", lambda S: [check_positive_powers(S), cancellation_properness_check(S)]),
    ("subsets", subset_checks),
    ("polarity", polarity_checks),
    ("structure", structure_suite),
    ("equivalence", equivalence_suite),
    ("decomposition", decomposition_suite),
]


def run_checks(S: StarSemigroup, timings: Optional[dict] = None) -> dict[str, list[CheckResult]]:
    """Every checker on S, grouped by section."""
    out = {}
    for section, fn in SECTIONS:
        t0 = time.perf_counter()
        out[section] = fn(S)
        if timings is not None:
            timings[section] = round(time.perf_counter() - t0, 4)
    return out


def flatten(groups: dict[str, list[CheckResult]]) -> list[CheckResult]:
    return [r for rs in groups.values() for r in rs]


def tally(results: Iterable[CheckResult]) -> dict[str, int]:
    counts = {PASS: 0, FAIL: 0, NOT_MET: 0}
    for r in results:
        counts[r.status] += 1
    return counts


def lattice_summary(S: StarSemigroup, kind: str) -> dict:
    try:
        lat = closed_lattice(S, kind, check=False)
    except CapExceeded as exc:
        return {"error": str(exc)}
    return {
        "size": len(lat),
        "orthomodular": bool(check_orthomodular(lat)),
        "modular": bool(check_modular(lat)),
        "centre_size": len(centre(lat)),
        "axioms": lat.axiom_check().status,
    }


def decompositions(S: StarSemigroup) -> dict:
    out = {}
    for kind, fn in DECOMPOSERS.items():
        try:
            out[kind] = fn(S).to_dict()
        except HypothesisNotMet as exc:
            out[kind] = {"status": NOT_MET, "unmet": exc.failed}
        except UniquenessViolation as exc:
            out[kind] = {"status": FAIL, "candidates": exc.candidates}
    return out


def metadata(S: StarSemigroup) -> dict:
    cls = classify_elements(S)
    classes = {
        "positives": bits.indices(cls.positives),
        "self_adjoints": bits.indices(cls.self_adjoints),
        "idempotents": bits.indices(cls.idempotents),
        "projections": bits.indices(cls.projections),
    }
    if cls.additive_positives is not None:
        classes["additive_positives"] = bits.indices(cls.additive_positives)
    return {
        "name": S.name,
        "n": S.n,
        "proper": is_proper(S),
        "improper_witness": improper_witness(S),
        "commutative": S.is_commutative,
        "ring": S.ring is not None,
        "classes": classes,
    }


def analyze(S: StarSemigroup, timing: bool = False) -> dict:
    """The complete report for S; deterministic unless ``timing`` is set."""
    timings: Optional[dict] = {} if timing else None
    groups = run_checks(S, timings)
    report = {
        "schema_version": SCHEMA_VERSION,
        "semigroup": metadata(S),
        "lattices": {k: lattice_summary(S, k) for k in KINDS},
        "checks": {sec: [r.to_dict() for r in rs] for sec, rs in groups.items()},
        "decompositions": decompositions(S),
        "summary": tally(flatten(groups)),
    }
    if timings is not None:
        report["timing"] = timings
    return report


def failures(S: StarSemigroup) -> list[CheckResult]:
    """Every FAIL raised by any checker on S."""
    return [r for r in flatten(run_checks(S)) if r.failed]
