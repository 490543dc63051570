"""Text and JSON serialization of *-semigroups.

Text format::

    # comments anywhere
    n 3
    name: optional label
    0 0 0
    0 1 2
    0 2 1
    star: 0 1 2
    zero: 0
    add:            (optional, followed by n rows)
    ...
    neg: ...        (required when add: is present)
"""

from __future__ import annotations

import json

import numpy as np

from .errors import ParseError
from .semigroup import RingExtension, StarSemigroup, canonicalize, validate


def _ints(tokens, lineno, line, bound=None):
    out = []
    for tok in tokens:
        try:
            v = int(tok)
        except ValueError:
            raise ParseError(f"expected an integer, got {tok!r}", lineno, line.find(tok) + 1) from None
        if bound is not None and not 0 <= v < bound:
            raise ParseError(f"index {v} outside 0..{bound - 1}", lineno, line.find(tok) + 1)
        out.append(v)
    return out


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            yield lineno, line


def parse(text: str, check: bool = True) -> StarSemigroup:
    """Parse the text format; validates the axioms unless ``check`` is false."""
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty input", 1)
    pos = 0

    def take(prefix=None):
        nonlocal pos
        if pos >= len(lines):
            last = lines[-1][0] if lines else 1
            raise ParseError(f"unexpected end of input, expected {prefix or 'a table row'}", last + 1)
        lineno, line = lines[pos]
        pos += 1
        if prefix is not None:
            stripped = line.lstrip()
            if not stripped.startswith(prefix):
                raise ParseError(f"expected {prefix!r}", lineno, len(line) - len(stripped) + 1)
            rest = stripped[len(prefix):]
            return lineno, line, rest
        return lineno, line, line

    lineno, line, rest = take("n")
    vals = _ints(rest.split(), lineno, line)
    if len(vals) != 1 or vals[0] < 1:
        raise ParseError("element count must be a single positive integer", lineno)
    n = vals[0]

    name = ""
    if pos < len(lines) and lines[pos][1].lstrip().startswith("name:"):
        _, _, rest = take("name:")
        name = rest.strip()

    def table(label):
        rows = []
        for _ in range(n):
            lineno, line, _ = take()
            row = _ints(line.split(), lineno, line, n)
            if len(row) != n:
                raise ParseError(f"{label} row has {len(row)} entries, expected {n}", lineno)
            rows.append(row)
        return rows

    mul = table("mul")
    lineno, line, rest = take("star:")
    star = _ints(rest.split(), lineno, line, n)
    if len(star) != n:
        raise ParseError(f"star has {len(star)} entries, expected {n}", lineno)
    lineno, line, rest = take("zero:")
    zs = _ints(rest.split(), lineno, line, n)
    if len(zs) != 1:
        raise ParseError("zero: takes exactly one index", lineno)
    zero = zs[0]

    ring = None
    if pos < len(lines):
        take("add:")
        add = table("add")
        lineno, line, rest = take("neg:")
        neg = _ints(rest.split(), lineno, line, n)
        if len(neg) != n:
            raise ParseError(f"neg has {len(neg)} entries, expected {n}", lineno)
        ring = RingExtension(add, neg)
    if pos < len(lines):
        lineno, line = lines[pos]
        raise ParseError("trailing content", lineno)

    S = StarSemigroup(n, mul, star, zero, ring, name)
    return validate(S) if check else S


def serialize(S: StarSemigroup) -> str:
    """Canonical text form (zero relabelled to index 0)."""
    S = canonicalize(S)
    out = [f"n {S.n}"]
    if S.name:
        out.append(f"name: {S.name}")
    out.extend(" ".join(str(int(v)) for v in row) for row in S.mul)
    out.append("star: " + " ".join(str(int(v)) for v in S.star))
    out.append(f"zero: {S.zero}")
    if S.ring is not None:
        out.append("add:")
        out.extend(" ".join(str(int(v)) for v in row) for row in S.ring.add)
        out.append("neg: " + " ".join(str(int(v)) for v in S.ring.neg))
    return "\n".join(out) + "\n"


def to_json_dict(S: StarSemigroup) -> dict:
    d = {
        "name": S.name,
        "n": S.n,
        "mul": S.mul.tolist(),
        "star": S.star.tolist(),
        "zero": S.zero,
    }
    if S.ring is not None:
        d["add"] = S.ring.add.tolist()
        d["neg"] = S.ring.neg.tolist()
    return d


def from_json_dict(d: dict, check: bool = True) -> StarSemigroup:
    ring = None
    if "add" in d:
        ring = RingExtension(np.array(d["add"]), np.array(d["neg"]))
    S = StarSemigroup(d["n"], d["mul"], d["star"], d["zero"], ring, d.get("name", ""))
    if S.mul.shape != (S.n, S.n) or S.star.shape != (S.n,):
        raise ParseError("table shapes do not match n", 1)
    return validate(S) if check else S


def to_json(S: StarSemigroup) -> str:
    return json.dumps(to_json_dict(S), sort_keys=True)


def from_json(text: str, check: bool = True) -> StarSemigroup:
    return from_json_dict(json.loads(text), check=check)


def load(path, check: bool = True) -> StarSemigroup:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return from_json(text, check=check)
    return parse(text, check=check)
