"""Named generator specs (``zn:6``, ``bool:2``, ``matring:2,3`` ...) and the
standard gallery of instances."""

from __future__ import annotations

from .errors import ParseError
from .semigroup import (
    DEFAULT_CARRIER_CAP,
    StarSemigroup,
    direct_product,
    gen_boolean_matrices,
    gen_matrix_ring,
    gen_zn_mult,
    gen_zn_ring,
)

GENERATORS = {
    "zn": (gen_zn_mult, 1),
    "znring": (gen_zn_ring, 1),
    "bool": (gen_boolean_matrices, 1),
    "matring": (gen_matrix_ring, 2),
}


def from_spec(spec: str, cap: int = DEFAULT_CARRIER_CAP) -> StarSemigroup:
    """Build a semigroup from ``family:args``; ``a*b`` gives a direct product."""
    if "*" in spec:
        left, right = spec.split("*", 1)
        return direct_product(from_spec(left, cap), from_spec(right, cap), cap=cap)
    family, _, rest = spec.partition(":")
    if family not in GENERATORS:
        raise ParseError(f"unknown generator {family!r}; expected one of {', '.join(GENERATORS)}", 1)
    fn, arity = GENERATORS[family]
    try:
        args = [int(a) for a in rest.split(",")] if rest else []
    except ValueError:
        raise ParseError(f"bad arguments in generator spec {spec!r}", 1) from None
    if len(args) != arity:
        raise ParseError(f"{family} takes {arity} argument(s), got {len(args)}", 1)
    if family in ("bool", "matring"):
        return fn(*args, cap=cap)
    return fn(*args)


def gallery_specs(max_n: int = 512) -> list[str]:
    specs = [f"zn:{n}" for n in range(1, 31)]
    specs += [f"znring:{n}" for n in (2, 3, 4, 6, 10, 12, 15, 30)]
    specs += ["bool:1", "bool:2", "bool:3", "matring:2,2", "matring:2,3", "zn:2*bool:2", "zn:6*zn:5"]
    return [s for s in specs if _size(s) <= max_n]


def _size(spec: str) -> int:
    if "*" in spec:
        left, right = spec.split("*", 1)
        return _size(left) * _size(right)
    family, _, rest = spec.partition(":")
    args = [int(a) for a in rest.split(",")]
    if family in ("zn", "znring"):
        return args[0]
    if family == "bool":
        return 2 ** (args[0] ** 2)
    return args[1] ** (args[0] ** 2)


def gallery(max_n: int = 512) -> list[StarSemigroup]:
    return [from_spec(s) for s in gallery_specs(max_n)]
