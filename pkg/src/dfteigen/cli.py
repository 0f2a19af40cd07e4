"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 argument error,
3 numerical degeneracy.
"""
from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from .bench import BenchMethod, EmptyRange, run_benchmark
from .core import DEFAULT_TOLERANCES, Convention, DftSpec, InvalidOrder, Tolerances
from .demo import render, run_demo
from .determinant import CofactorTooLarge
from .orthogonalize import DegenerateGram, Method, full_basis
from .serialize import (basis_csv, basis_document, bench_csv, bench_document, dumps,
                        verify_document)
from .verify import verify_all

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3


class UsageError(Exception):
    pass


def _tol_flag(name: str) -> str:
    return "--tol-" + name.replace("_", "-")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("-n", "--order", type=int, required=True, help="matrix order n >= 1")
    p.add_argument("--method", choices=[m.value for m in Method], default=Method.MATVEEV.value)
    p.add_argument("--convention", choices=[c.value for c in Convention],
                   default=Convention.PLUS.value,
                   help="sign of the exponent in w (default: plus)")
    p.add_argument("--cofactor-determinants", action="store_true",
                   help="evaluate scalar minors by naive cofactor expansion (diagnostic)")
    for f in dataclasses.fields(Tolerances):
        p.add_argument(_tol_flag(f.name), dest=f"tol_{f.name}", type=float, default=None,
                       metavar="X", help=f"override tolerance '{f.name}' (default {f.default:g})")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("-o", "--output", type=Path, default=None, help="write here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dfteigen",
        description="Orthonormal eigenvector bases of the unitary DFT matrix.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="emit an orthonormal eigenbasis")
    _add_common(p)
    _add_output(p)

    p = sub.add_parser("verify", help="run every spectral and basis check")
    _add_common(p)
    p.add_argument("-o", "--output", type=Path, default=None)

    p = sub.add_parser("bench", help="time the orthogonalisation methods")
    p.add_argument("--orders", required=True,
                   help="comma list (16,32,64) or inclusive range start:stop[:step]")
    p.add_argument("--methods", default="mgs",
                   help="comma list from " + ",".join(m.value for m in BenchMethod))
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--cofactor-determinants", action="store_true")
    _add_output(p)

    sub.add_parser("demo", help="order-6 worked example against the published table")
    return parser


def parse_orders(text: str) -> list[int]:
    text = text.strip()
    if not text:
        raise EmptyRange("empty order list")
    try:
        if ":" in text:
            parts = [int(x) for x in text.split(":")]
            if len(parts) not in (2, 3):
                raise ValueError(text)
            start, stop = parts[:2]
            step = parts[2] if len(parts) == 3 else 1
            if step < 1:
                raise ValueError(text)
            orders = list(range(start, stop + 1, step))
        else:
            orders = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"cannot parse orders {text!r}") from None
    if not orders:
        raise EmptyRange(f"order range {text!r} is empty")
    if min(orders) < 1:
        raise UsageError("orders must be >= 1")
    return orders


def _tolerances(args) -> Tolerances:
    overrides = {f.name: getattr(args, f"tol_{f.name}") for f in dataclasses.fields(Tolerances)
                 if getattr(args, f"tol_{f.name}", None) is not None}
    return dataclasses.replace(DEFAULT_TOLERANCES, **overrides)


def _spec(args) -> DftSpec:
    return DftSpec(args.order, Convention(args.convention))


def _emit(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text, encoding="utf-8", newline="")


def cmd_basis(args) -> int:
    tol = _tolerances(args)
    basis = full_basis(_spec(args), args.method, tol=tol, cofactor=args.cofactor_determinants)
    if args.format == "csv":
        _emit(basis_csv(basis), args.output)
    else:
        _emit(dumps(basis_document(basis, tol)), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    tol = _tolerances(args)
    report = verify_all(_spec(args), args.method, tol, args.cofactor_determinants)
    _emit(dumps(verify_document(report, tol)), args.output)
    if not report.overall:
        print("failed checks: " + ", ".join(report.failed), file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def cmd_bench(args) -> int:
    orders = parse_orders(args.orders)
    try:
        methods = [BenchMethod(m.strip()) for m in args.methods.split(",") if m.strip()]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not methods:
        raise UsageError("no methods given")
    if args.repeats < 1:
        raise UsageError("--repeats must be >= 1")
    report = run_benchmark(orders, methods, args.repeats, cofactor=args.cofactor_determinants)
    if args.format == "csv":
        _emit(bench_csv(report), args.output)
    else:
        _emit(dumps(bench_document(report, args.repeats, DEFAULT_TOLERANCES)), args.output)
    return EXIT_OK


def cmd_demo(args) -> int:
    result = run_demo()
    sys.stdout.write(render(result))
    return EXIT_OK if result.passed else EXIT_FAILED


COMMANDS = {"basis": cmd_basis, "verify": cmd_verify, "bench": cmd_bench, "demo": cmd_demo}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (InvalidOrder, EmptyRange, UsageError, CofactorTooLarge) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegenerateGram as exc:
        print(f"{parser.prog}: degenerate Gram data in eigenspace k={exc.k} "
              f"(index {exc.index}, value {exc.value:.3e}): {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
