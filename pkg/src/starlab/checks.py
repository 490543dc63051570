"""Uniform result record for every theorem checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

PASS = "pass"
FAIL = "fail"
NOT_MET = "hypothesis_not_met"


@dataclass
class CheckResult:
    """Outcome of one checker run.

    Truthy only on a genuine pass; a hypothesis gate that fails yields
    ``NOT_MET`` so that a conditional theorem never passes vacuously.
    """

    name: str
    status: str
    witness: Any = None
    detail: str = ""
    stats: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_dict(self) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.detail:
            out["detail"] = self.detail
        if self.stats:
            out["stats"] = _jsonable(self.stats)
        return out


def passed(name: str, detail: str = "", **stats) -> CheckResult:
    return CheckResult(name, PASS, detail=detail, stats=stats)


def failed(name: str, witness: Any, detail: str = "", **stats) -> CheckResult:
    return CheckResult(name, FAIL, witness=witness, detail=detail, stats=stats)


def not_met(name: str, hypotheses, **stats) -> CheckResult:
    hyps = [hypotheses] if isinstance(hypotheses, str) else list(hypotheses)
    return CheckResult(name, NOT_MET, detail="unmet: " + ", ".join(hyps), stats=stats)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(_jsonable(v) for v in obj)
    return obj


def _subset_matrix(masks):
    """Pairwise inclusion matrix for a list of bitmasks."""
    if all(m < (1 << 62) for m in masks):
        a = np.array(masks, dtype=np.int64)
        return (a[:, None] & ~a[None, :]) == 0
    k = len(masks)
    out = np.zeros((k, k), dtype=bool)
    for i, x in enumerate(masks):
        for j, y in enumerate(masks):
            out[i, j] = x & ~y == 0
    return out


def verify_isomorphism(name, left, right, f, g, ortho=None, fmt=None, **stats) -> CheckResult:
    """Check that f: left -> right and g: right -> left are inverse order isomorphisms.

    ``left`` and ``right`` are lists of bitmasks, ``f``/``g`` callables on
    masks.  ``ortho`` optionally gives ``(ortho_left, ortho_right)`` and adds
    the requirement ``f(ortho_left(x)) == ortho_right(f(x))``.
    """
    fmt = fmt or (lambda m: m)
    lset, rset = set(left), set(right)
    fl = [f(x) for x in left]
    for x, y in zip(left, fl):
        if y not in rset:
            return failed(name, {"clause": "forward map leaves target", "source": fmt(x), "image": fmt(y)})
        if g(y) != x:
            return failed(name, {"clause": "backward o forward != id", "source": fmt(x), "image": fmt(y)})
    for y in right:
        x = g(y)
        if x not in lset:
            return failed(name, {"clause": "backward map leaves source", "target": fmt(y), "image": fmt(x)})
        if f(x) != y:
            return failed(name, {"clause": "forward o backward != id", "target": fmt(y)})
    if len(left) > 1:
        a = _subset_matrix(list(left))
        b = _subset_matrix(fl)
        bad = np.argwhere(a != b)
        if len(bad):
            i, j = (int(v) for v in bad[0])
            return failed(name, {"clause": "order", "pair": [fmt(left[i]), fmt(left[j])]})
    if ortho is not None:
        oa, ob = ortho
        for x, y in zip(left, fl):
            if f(oa(x)) != ob(y):
                return failed(name, {"clause": "orthocomplement", "source": fmt(x)})
    return passed(name, left=len(left), right=len(right), **stats)
