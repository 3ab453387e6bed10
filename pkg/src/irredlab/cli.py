"""Batch command-line surface: classify ideals and modules, dump lattices,
run theorem verification, emit machine-readable reports.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 resource-bound error,
4 theorem verification failure.  All errors print one machine-parsable line
`error: <kind>: <message>` on stderr.  JSON reports carry schema_version and a
null timestamp by default so identical invocations are byte-identical; pass
--stamp to record the wall clock instead.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone

from .arith import DEFAULT_FACTOR_BOUND
from .classify import ROW_PREDICATES, classify_all
from .descriptors import parse_module, parse_ring
from .errors import DomainError, ResourceError, UsageError
from .harness import FAIL, InstanceConfig, THEOREMS, VerifySummary, verify, verify_all
from .lattice import DEFAULT_LATTICE_CAP, enumerate_submodules
from .modules import DEFAULT_ORDER_CAP
from .rings import IDEAL_PREDICATES, Ring, classify_ideal

SCHEMA_VERSION = "1.0"

_FLAG_COLUMNS = (
    ("irreducible", "irr"),
    ("strongly_irreducible", "s-irr"),
    ("two_irreducible", "2irr"),
    ("strongly_two_irreducible", "s2irr"),
    ("strongly_sum_two_irreducible", "ss2irr"),
    ("prime", "prime"),
    ("primary", "prmry"),
    ("two_absorbing", "2abs"),
    ("two_absorbing_primary", "2abpr"),
    ("radical", "rad"),
    ("pure", "pure"),
    ("waist", "waist"),
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="irredlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--stamp", action="store_true", help="record the wall clock")

    p = sub.add_parser("classify-ideal", help="classify one ideal")
    p.add_argument("--ring", default="Z", help="Z, Z<n>, or Z<n>*Z<m>")
    p.add_argument("--gen", required=True, help="generator, comma-separated per factor")
    p.add_argument("--factor-cap", type=int, default=DEFAULT_FACTOR_BOUND)
    common(p)

    p = sub.add_parser("classify", help="full classification report for a module")
    p.add_argument("--module", required=True)
    p.add_argument("--ring", default=None)
    p.add_argument("--order-cap", type=int, default=DEFAULT_ORDER_CAP)
    p.add_argument("--lattice-cap", type=int, default=DEFAULT_LATTICE_CAP)
    common(p)

    p = sub.add_parser("lattice", help="dump all submodules of a module")
    p.add_argument("--module", required=True)
    p.add_argument("--ring", default=None)
    p.add_argument("--order-cap", type=int, default=DEFAULT_ORDER_CAP)
    p.add_argument("--lattice-cap", type=int, default=DEFAULT_LATTICE_CAP)
    common(p)

    p = sub.add_parser("verify", help="run the theorem harness")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--theorem", choices=tuple(THEOREMS))
    group.add_argument("--all", action="store_true")
    p.add_argument("--max-order", type=int, default=60)
    p.add_argument("--max-lattice", type=int, default=DEFAULT_LATTICE_CAP)
    p.add_argument("--noncyclic", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--ignore-hypotheses",
        action="store_true",
        help="check conclusions even where hypotheses fail (necessity hunting)",
    )
    common(p)

    return parser


def _document(command: str, argv: list[str], payload: dict, stamp: bool) -> dict:
    timestamp = (
        datetime.now(timezone.utc).isoformat(timespec="seconds") if stamp else None
    )
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "argv": list(argv),
        "timestamp": timestamp,
        "payload": payload,
    }


def _emit(doc: dict, fmt: str, render_text) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        render_text(doc["payload"])


def _flag_str(value) -> str:
    if value is None:
        return "-"
    return "y" if value else "n"


# ---------------------------------------------------------------------------
# subcommands


def _cmd_classify_ideal(args, argv) -> int:
    ring = parse_ring(args.ring)
    try:
        gens = tuple(int(g) for g in args.gen.split(","))
    except ValueError:
        raise UsageError(f"bad generator {args.gen!r}; expected comma-separated integers")
    ideal = ring.ideal(*gens)
    flags = {}
    for predicate in IDEAL_PREDICATES:
        try:
            flags[predicate] = classify_ideal(ideal, predicate)
        except DomainError:
            flags[predicate] = None  # proper-only predicate on the whole ring
    payload = {
        "kind": "ideal_classification",
        "ring": str(ring),
        "gens": list(ideal.gens),
        "flags": flags,
    }

    def render(p):
        print(f"ideal {ideal} of {ring}")
        for name, value in p["flags"].items():
            print(f"  {name} = {_flag_str(value)}")

    _emit(_document("classify-ideal", argv, payload, args.stamp), args.format, render)
    return 0


def _module_from_args(args):
    ring = parse_ring(args.ring) if args.ring else None
    return parse_module(args.module, ring, order_cap=args.order_cap)


def _cmd_classify(args, argv) -> int:
    module = _module_from_args(args)
    report = classify_all(module, lattice_cap=args.lattice_cap)
    payload = {"kind": "classification_report", **report.to_dict()}

    def render(p):
        print(f"module {p['module']} over {p['ring']}")
        print(
            "flags: "
            + "  ".join(f"{k}={_flag_str(v)}" for k, v in p["module_flags"].items())
        )
        header = f"{'id':>3} {'order':>5}  " + " ".join(
            f"{short:>6}" for _, short in _FLAG_COLUMNS
        )
        print(header)
        for row in p["rows"]:
            cells = " ".join(
                f"{_flag_str(row['flags'][name]):>6}" for name, _ in _FLAG_COLUMNS
            )
            print(f"{row['id']:>3} {row['order']:>5}  {cells}")
            print(
                f"     gens={row['gens']} colon={row['colon']} "
                f"ann={row['annihilator']} rad_id={row['radical_id']}"
            )

    _emit(_document("classify", argv, payload, args.stamp), args.format, render)
    return 0


def _cmd_lattice(args, argv) -> int:
    module = _module_from_args(args)
    lat = enumerate_submodules(module, max_subs=args.lattice_cap)
    payload = {
        "kind": "lattice",
        "module": module.descriptor(),
        "ring": str(module.ring),
        "count": len(lat),
        "submodules": [
            {"id": i, "order": s.order, "gens": [list(g) for g in s.gens]}
            for i, s in enumerate(lat.subs)
        ],
    }

    def render(p):
        print(f"module {p['module']} over {p['ring']}: {p['count']} submodules")
        for s in p["submodules"]:
            print(f"  [{s['id']:>3}] order {s['order']:>5} gens {s['gens']}")

    _emit(_document("lattice", argv, payload, args.stamp), args.format, render)
    return 0


def _cmd_verify(args, argv) -> int:
    cfg = InstanceConfig(
        max_order=args.max_order,
        max_lattice=args.max_lattice,
        include_noncyclic=args.noncyclic,
        seed=args.seed,
    )
    enforce = not args.ignore_hypotheses
    if args.all:
        summary = verify_all(cfg, enforce_hypotheses=enforce)
    else:
        summary = VerifySummary(
            results=verify(args.theorem, cfg, enforce_hypotheses=enforce)
        )
    payload = {"kind": "theorem_summary", **summary.to_dict()}

    def render(p):
        for row in p["theorems"]:
            print(
                f"{row['id']:<10} pass={row['pass']:<4} fail={row['fail']:<3} "
                f"hypothesis_not_met={row['hypothesis_not_met']:<4} "
                f"skipped={row['skipped']}"
            )
        for f in p["failures"]:
            print(
                f"FAIL {f['theorem']} on {f['instance']['module']} over "
                f"{f['instance']['ring']}: {json.dumps(f['counterexample'])}"
            )
        print(f"total failures: {p['totals']['fail']}")

    _emit(_document("verify", argv, payload, args.stamp), args.format, render)
    return 4 if payload["totals"][FAIL] else 0


def run(argv: list[str] | None = None) -> int:
    """Parse arguments, dispatch, and map errors onto the exit-code contract."""
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "classify-ideal":
            return _cmd_classify_ideal(args, argv)
        if args.command == "classify":
            return _cmd_classify(args, argv)
        if args.command == "lattice":
            return _cmd_lattice(args, argv)
        return _cmd_verify(args, argv)
    except UsageError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"error: domain: {exc}", file=sys.stderr)
        return 2
    except ResourceError as exc:
        print(f"error: resource: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
