# src/projpair/cli.py
"""Command-line front end.

Subcommands: verify, poly, decompose, bounds, counterexample, universal.
Exit codes: 0 all checks passed, 1 checks ran and some failed, 2 usage or
validation error, 3 I/O failure. Identical invocations produce byte-identical
output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .linalg import spectral_norm
from .polynomials import (
    coefficient_strings,
    poly_AB,
    poly_F,
    poly_F_closed,
    poly_PQ_closed,
    poly_PQ_recursive,
)
from .projections import (
    DecompositionError,
    block_relation_residuals,
    halmos_decompose,
    load_pair_json,
    matrix_to_pairs,
    save_pair_json,
    universal_pair_approx,
    validate_projection,
)
from .verify import (
    ALL_CHECKS,
    TrialConfig,
    bound_sequences,
    find_commutator_identity_counterexample,
    run_trials,
)

EXIT_PASS = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

POLY_MAX_N = {"P": 200, "Q": 200, "F": 200, "A": 100, "B": 100}


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")  # RFC 4180 line endings
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _parse_dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise ValueError(f"--dims must be a comma list of integers, got {text!r}")
    if not dims:
        raise ValueError("--dims must name at least one dimension")
    return dims


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.tol <= 0:
        raise ValueError(f"--tol must be positive, got {args.tol}")
    if args.trials < 0:
        raise ValueError(f"--trials must be >= 0, got {args.trials}")
    checks = (
        tuple(c.strip() for c in args.checks.split(",") if c.strip())
        if args.checks
        else ALL_CHECKS
    )
    config = TrialConfig(
        dims=_parse_dims(args.dims),
        trials=args.trials,
        base_seed=args.seed,
        tol=args.tol,
        checks=checks,
    )
    report = run_trials(config)
    if args.format == "json":
        _emit(report.to_json() + "\n", args.out)
    else:
        rows = [
            [s.name, s.trials, repr(s.max_residual), len(s.failures),
             "pass" if not s.failures else "fail"]
            for s in report.per_check
        ]
        rows.append([
            "overall",
            sum(s.trials for s in report.per_check),
            repr(max((s.max_residual for s in report.per_check), default=0.0)),
            sum(len(s.failures) for s in report.per_check) + len(report.errors),
            report.verdict,
        ])
        _emit(_csv_text(["check", "trials", "max_residual", "failures", "verdict"], rows),
              args.out)
    return EXIT_PASS if report.verdict == "pass" else EXIT_CHECK_FAILED


def _cmd_poly(args: argparse.Namespace) -> int:
    family = args.family
    n = args.n
    limit = POLY_MAX_N[family]
    low = 0 if family == "F" else 1
    if not low <= n <= limit:
        raise ValueError(f"--n for family {family} must lie in [{low}, {limit}], got {n}")
    if family in ("P", "Q"):
        rec = poly_PQ_recursive(n)[0 if family == "P" else 1]
        closed = poly_PQ_closed(n)[0 if family == "P" else 1]
        match = rec == closed
    elif family == "F":
        rec = poly_F(n)
        match = rec == poly_F_closed(n)
    else:
        pair = poly_AB(n)  # both forms cross-checked internally
        rec = pair[0 if family == "A" else 1]
        match = True
    payload = {
        "family": family,
        "n": n,
        "coefficients": coefficient_strings(rec),
        "recursive_closed_match": match,
    }
    _emit(_json_text(payload), args.out)
    return EXIT_PASS if match else EXIT_CHECK_FAILED


def _cmd_decompose(args: argparse.Namespace) -> int:
    pair = load_pair_json(args.input)
    reports = {name: validate_projection(m, args.tol)
               for name, m in (("f", pair.f), ("g", pair.g))}
    bad = {name: rep for name, rep in reports.items() if not rep.ok}
    if bad:
        detail = "; ".join(
            f"{name}: idempotency {rep.idempotency_residual:.3e}, "
            f"hermiticity {rep.hermiticity_residual:.3e}"
            for name, rep in bad.items()
        )
        raise ValueError(f"input matrices fail projection validation ({detail})")
    blocks = halmos_decompose(pair, tol=args.tol)
    r = blocks.D.shape[0]
    norm_fg_sq = spectral_norm(pair.f @ pair.g) ** 2
    norm_d = spectral_norm(blocks.D)
    payload = {
        "input": str(args.input),
        "dim": pair.dim,
        "rank_f": r,
        "D": matrix_to_pairs(blocks.D),
        "Dprime": matrix_to_pairs(blocks.Dprime),
        "V": matrix_to_pairs(blocks.V),
        "V_shape": [r, pair.dim - r],
        "relation_residuals": block_relation_residuals(blocks),
        "norm_fg_squared": norm_fg_sq,
        "norm_D": norm_d,
        "norm_identity_residual": abs(norm_fg_sq - norm_d),
    }
    _emit(_json_text(payload), args.out)
    return EXIT_PASS


def _cmd_bounds(args: argparse.Namespace) -> int:
    if not 0.0 <= args.a <= 1.0:
        raise ValueError(f"--a must lie in [0, 1], got {args.a}")
    if args.max_n < 1:
        raise ValueError(f"--max-n must be >= 1, got {args.max_n}")
    table = bound_sequences(args.a, args.max_n)
    if args.format == "json":
        payload = {
            "a": table.a,
            "limit": table.limit,
            "rows": [
                {"N": row.N, "upper": row.upper, "lower": row.lower,
                 "gap": row.upper - table.limit}
                for row in table.rows
            ],
        }
        _emit(_json_text(payload), args.out)
    else:
        rows = [
            [row.N, repr(row.upper), repr(row.lower), repr(table.limit),
             repr(row.upper - table.limit)]
            for row in table.rows
        ]
        _emit(_csv_text(["N", "upper", "lower", "limit", "gap"], rows), args.out)
    return EXIT_PASS


def _cmd_counterexample(args: argparse.Namespace) -> int:
    if args.dim < 4 or args.dim % 2:
        raise ValueError(f"--dim must be an even integer >= 4, got {args.dim}")
    if args.budget < 1:
        raise ValueError(f"--budget must be >= 1, got {args.budget}")
    pair, violation = find_commutator_identity_counterexample(
        args.dim, mode=args.mode, budget=args.budget, seed=args.seed
    )
    save_pair_json(pair, args.out)
    fg = pair.f @ pair.g
    gf = pair.g @ pair.f
    payload = {
        "dim": args.dim,
        "mode": args.mode,
        "violation": violation,
        "norm_fg": spectral_norm(fg),
        "norm_comm": spectral_norm(fg - gf),
        "pair_file": str(args.out),
    }
    sys.stdout.write(_json_text(payload))
    return EXIT_PASS


def _cmd_universal(args: argparse.Namespace) -> int:
    if args.grid_size < 2:
        raise ValueError(f"--grid-size must be >= 2, got {args.grid_size}")
    approx = universal_pair_approx(args.grid_size)
    a = approx.norm_product()
    payload = {
        "grid_size": args.grid_size,
        "cells": len(approx.angles),
        "dim": approx.dim,
        "norm_pq": a,
        "norm_commutator": approx.norm_commutator(),
        "norm_anticommutator": approx.norm_anticommutator(),
        "predicted_anticommutator": a + a * a,
        "theorem_residual": approx.anticommutator_residual(),
    }
    _emit(_json_text(payload), args.out)
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="projpair",
        description="Numerically verify the projection-pair anticommutator norm "
                    "formula ||fg+gf|| = ||fg|| + ||fg||^2 and its supporting identities.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("verify", help="Run the randomized check campaign.")
    p.add_argument("--dims", default="2,4,8,16", help="Comma list of dimensions.")
    p.add_argument("--trials", type=int, default=200, help="Pairs per dimension.")
    p.add_argument("--seed", type=int, default=0, help="Base seed; trial i uses seed+i.")
    p.add_argument("--tol", type=float, default=1e-8, help="Residual tolerance.")
    p.add_argument("--checks", default="",
                   help=f"Comma list of checks (default all: {','.join(ALL_CHECKS)}).")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="Write the report here instead of stdout.")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("poly", help="Export exact polynomial coefficients.")
    p.add_argument("--family", required=True, choices=tuple(POLY_MAX_N))
    p.add_argument("--n", type=int, required=True, help="Family index.")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_poly)

    p = sub.add_parser("decompose", help="Two-subspace block decomposition of a pair file.")
    p.add_argument("--input", required=True, help="Pair JSON file.")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("bounds", help="Pre-limit upper/lower bound table at a = ||fg||.")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--max-n", type=int, default=50, dest="max_n")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("counterexample",
                       help="Pair of dim >= 4 violating the dim-2 commutator identity.")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--mode", choices=("deterministic", "random"), default="deterministic")
    p.add_argument("--budget", type=int, default=1000, help="Random-mode sample count.")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="counterexample_pair.json", help="Pair file to write.")
    p.set_defaults(func=_cmd_counterexample)

    p = sub.add_parser("universal", help="Norms of the angle-grid extremal pair approximant.")
    p.add_argument("--grid-size", type=int, required=True, dest="grid_size")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_universal)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except (ValueError, ArithmeticError, DecompositionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
