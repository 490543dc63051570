"""Command-line front end.

Exit codes: 0 all checks pass, 1 some check failed, 2 only unmet hypotheses
(with ``--strict-hypotheses``), 3 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

from .checks import FAIL, NOT_MET
from .errors import StarlabError
from .formats import from_json_dict, load, to_json_dict
from .fuzz import fuzz_instances
from .gallery import from_spec, gallery_specs
from .polarity import KINDS, closed_lattice, to_dot
from .report import SCHEMA_VERSION, analyze, decompositions, flatten, lattice_summary, run_checks, tally
from .semigroup import is_proper

EXIT_OK, EXIT_FAIL, EXIT_UNMET, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _load(args):
    if args.gen and args.path:
        raise InputError("give either a file or --gen, not both")
    try:
        if args.gen:
            return from_spec(args.gen)
        if not args.path:
            raise InputError("no input: give a file or --gen SPEC")
        return load(args.path)
    except OSError as exc:
        raise InputError(str(exc)) from None
    except (StarlabError, ValueError) as exc:
        raise InputError(f"{type(exc).__name__}: {exc}") from None


def _emit(obj, out: Optional[str]):
    text = json.dumps(obj, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _exit_code(counts: dict, strict: bool) -> int:
    if counts.get(FAIL, 0):
        return EXIT_FAIL
    if strict and counts.get(NOT_MET, 0):
        return EXIT_UNMET
    return EXIT_OK


def cmd_validate(args) -> int:
    S = _load(args)
    _emit({"schema_version": SCHEMA_VERSION, "name": S.name, "n": S.n, "valid": True,
           "proper": is_proper(S)}, args.out)
    return EXIT_OK


def cmd_analyze(args) -> int:
    report = analyze(_load(args), timing=args.timing)
    _emit(report, args.out)
    return _exit_code(report["summary"], args.strict_hypotheses)


def cmd_lattice(args) -> int:
    S = _load(args)
    lat = closed_lattice(S, args.rel, check=False)
    dot = to_dot(lat, f"{S.name or 'S'} {args.rel}")
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(dot)
    else:
        sys.stdout.write(dot)
        return EXIT_OK
    _emit({"schema_version": SCHEMA_VERSION, "name": S.name, "relation": args.rel,
           **lattice_summary(S, args.rel)}, args.out)
    return EXIT_OK


def cmd_decompose(args) -> int:
    S = _load(args)
    dec = decompositions(S)
    _emit({"schema_version": SCHEMA_VERSION, "name": S.name, "decompositions": dec}, args.out)
    statuses = [d.get("status") for d in dec.values()]
    counts = {FAIL: statuses.count(FAIL), NOT_MET: statuses.count(NOT_MET)}
    return _exit_code(counts, args.strict_hypotheses)


def cmd_gallery(args) -> int:
    rows = []
    for spec in gallery_specs(args.max_n):
        S = from_spec(spec)
        rows.append({"spec": spec, "n": S.n, "proper": is_proper(S), "commutative": S.is_commutative,
                     "ring": S.ring is not None})
    _emit({"schema_version": SCHEMA_VERSION, "gallery": rows}, args.out)
    return EXIT_OK


def _check_one(payload: dict) -> dict:
    S = from_json_dict(payload, check=False)
    results = flatten(run_checks(S))
    return {
        "name": S.name,
        "n": S.n,
        "proper": is_proper(S),
        "summary": tally(results),
        "failures": [r.to_dict() for r in results if r.failed],
    }


def _workers() -> int:
    raw = os.environ.get("STARLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise InputError(f"STARLAB_THREADS must be an integer, got {raw!r}") from None


def cmd_check_all(args) -> int:
    payloads = [to_json_dict(from_spec(s)) for s in gallery_specs(args.max_n)]
    payloads += [to_json_dict(S) for S in fuzz_instances(args.fuzz, args.seed)]
    workers = _workers()
    if workers == 1:
        rows = [_check_one(p) for p in payloads]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_check_one, payloads, chunksize=8))
    total = {FAIL: 0, NOT_MET: 0}
    for row in rows:
        for k, v in row["summary"].items():
            total[k] = total.get(k, 0) + v
    _emit({"schema_version": SCHEMA_VERSION, "max_n": args.max_n, "seed": args.seed,
           "fuzz": args.fuzz, "instances": rows, "summary": total}, args.out)
    return _exit_code(total, args.strict_hypotheses)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="starlab", description="Finite *-semigroup laboratory.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, source=True):
        if source:
            p.add_argument("path", nargs="?", help="semigroup file (text or JSON)")
            p.add_argument("--gen", help="generator spec such as zn:6, bool:2, matring:2,3")
        p.add_argument("--out", help="write JSON here instead of stdout")
        p.add_argument("--strict-hypotheses", action="store_true",
                       help="exit 2 when some theorem's hypotheses are not met")

    p = sub.add_parser("validate", help="parse and check the axioms")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="run every checker and report")
    common(p)
    p.add_argument("--timing", action="store_true", help="include per-section wall times")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("lattice", help="closed-set lattice of one relation")
    common(p)
    p.add_argument("--rel", choices=KINDS, default="perp")
    p.add_argument("--dot", help="write the Hasse diagram as DOT here")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("decompose", help="type decompositions")
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("gallery", help="list the standard instances")
    common(p, source=False)
    p.add_argument("--max-n", type=int, default=512)
    p.set_defaults(func=cmd_gallery)

    p = sub.add_parser("check-all", help="run every checker on the gallery and fuzzed instances")
    common(p, source=False)
    p.add_argument("--max-n", type=int, default=512)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fuzz", type=int, default=200, help="number of random instances")
    p.set_defaults(func=cmd_check_all)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"starlab: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except StarlabError as exc:
        print(f"starlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
