"""Command line entry point: ``rotor {run,check,enum,weights,relations}``.

Exit status is 0 exactly when every requested check passes.
"""

from __future__ import annotations

import argparse
import json
import sys

from .enumerations import QUANTITIES
from .errors import RotorError
from .hamiltonian import BoundaryCondition, build_hamiltonian, check_tl_relations
from .harness import (
    Budget,
    emit,
    emit_many,
    require_budget,
    run_groundstate,
    text_header,
    verify_conjecture,
)
from .kernel import METHODS
from .vertexweights import weights

BC_CHOICES = [bc.value for bc in BoundaryCondition]


def _budget(args: argparse.Namespace) -> Budget:
    budget = Budget.from_env()
    if args.max_dim is not None:
        budget.max_dimension = args.max_dim
    if args.max_seconds is not None:
        budget.max_seconds = args.max_seconds
    return budget


def cmd_run(args: argparse.Namespace) -> int:
    require_budget(args.bc, args.n, _budget(args))
    if args.dump_matrix:
        with open(args.dump_matrix, "w") as fh:
            build_hamiltonian(args.n, args.bc).dump(fh)
    report = run_groundstate(args.bc, args.n, method=args.method, reduce=not args.full)
    if args.format == "text":
        print(text_header(report.bc))
    print(emit(report, args.format), end="" if args.format == "csv" else "\n")
    return 0 if report.passed else 1


def cmd_check(args: argparse.Namespace) -> int:
    result = verify_conjecture(
        args.conjecture, args.max_n, _budget(args), method=args.method, jobs=args.jobs
    )
    if args.format == "json":
        print(json.dumps({
            "conjecture": result.conjecture,
            "max_n": result.max_n,
            "verdict": result.verdict,
            "complete": result.complete,
            "skipped": result.skipped,
            "errors": result.errors,
            "reports": [r.as_dict() for r in result.reports],
        }, indent=2))
    else:
        out = emit_many(result.reports, args.format)
        print(out, end="" if args.format == "csv" else "\n")
        if args.format == "text":
            for n in result.skipped:
                print(f"N={n}  skipped (over budget)")
            for err in result.errors:
                print(f"error: {err}")
            print(f"conjecture {args.conjecture} up to N={args.max_n}: "
                  f"{'VERIFIED' if result.verdict else 'NOT VERIFIED'}"
                  + ("" if result.complete else " (incomplete)"))
    return 0 if result.verdict else 1


def cmd_enum(args: argparse.Namespace) -> int:
    print(QUANTITIES[args.quantity](args.m))
    return 0


def cmd_weights(args: argparse.Namespace) -> int:
    w = weights(args.u)
    for key in ("R", "L", "A", "D"):
        print(f"omega_{key} = {w.as_dict()[key] + 0.0:.15g}")  # no "-0"
    return 0


def cmd_relations(args: argparse.Namespace) -> int:
    report = check_tl_relations(args.n, args.bc)
    print(report.summary())
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rotor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def budget_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--max-dim", type=int, default=None,
                       help="largest state dimension to attempt (env ROTOR_MAX_DIM)")
        p.add_argument("--max-seconds", type=float, default=None,
                       help="wall-clock budget (env ROTOR_MAX_SECONDS)")
        p.add_argument("--method", choices=METHODS, default="fraction-free")

    p = sub.add_parser("run", help="groundstate for one boundary condition and size")
    p.add_argument("--bc", choices=BC_CHOICES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--full", action="store_true",
                   help="eliminate the full matrix instead of the symmetry-reduced one")
    p.add_argument("--dump-matrix", metavar="PATH",
                   help="write H as 'dim nnz' followed by 'row col value' lines")
    budget_flags(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("check", help="verify a normalisation conjecture up to a size")
    p.add_argument("--conjecture", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--jobs", type=int, default=1)
    budget_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("enum", help="evaluate an enumeration formula")
    p.add_argument("--quantity", choices=sorted(QUANTITIES), required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("weights", help="scatterer weights at spectral parameter u")
    p.add_argument("--u", type=float, required=True)
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("relations", help="check the TL relations as matrix identities")
    p.add_argument("--bc", choices=BC_CHOICES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_relations)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (RotorError, ValueError) as exc:
        print(f"rotor: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
