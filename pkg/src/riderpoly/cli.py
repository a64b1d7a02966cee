"""Command-line front end.

Subcommands: count, fit, types, mobius, bounds, verify.  Exit codes:
0 success, 1 verification failure, 2 usage or input error, 3 capacity or
budget error.  With --format json, errors are emitted as JSON too.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from math import factorial

from . import bounds as bounds_mod
from . import quasipoly as qp
from .arrangement import intersection_semilattice, semilattice_report
from .counting import DEFAULT_BUDGET, census_types, count_series
from .errors import CapacityError, RiderPolyError
from .geometry import board_from_text, piece_from_text
from .symbolic import reconstruction_series
from .verify import run_paper_suite


def _parse_range(text: str) -> tuple[int, int]:
    if ":" in text:
        lo, hi = text.split(":", 1)
        return int(lo), int(hi)
    value = int(text)
    return value, value


def _dump(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2)


def _emit(args, data: dict, pretty_lines) -> None:
    if args.format == "json":
        print(_dump(data))
    else:
        for line in pretty_lines:
            print(line)


def cmd_count(args) -> int:
    ms = piece_from_text(args.piece)
    board = board_from_text(args.board)
    n_from, n_to = _parse_range(args.n)
    if args.method == "reconstruction":
        sl = intersection_semilattice(ms, args.q)
        table = reconstruction_series(sl, board, n_from, n_to,
                                      budget=args.budget)
    else:
        table = count_series(ms, board, args.q, n_from, n_to,
                             budget=args.budget, threads=args.threads)
    if args.format == "csv":
        sys.stdout.write(table.to_csv())
    elif args.format == "json":
        print(_dump(table.to_json_dict()))
    else:
        print(f"{ms.label} on {board.as_text()}, q={args.q} [{table.method}]")
        for n in table.ns():
            lab, unlab = table.rows[n]
            print(f"  n={n:<4d} unlabelled={unlab}  labelled={lab}")
    return 0


def _fit_table(args, ms, board, table):
    degree = args.degree if args.degree else 2 * args.q
    if args.period:
        period = args.period
    else:
        period = qp.detect_period(table, degree, args.p_max,
                                  denominator_bound=args.denominator_bound,
                                  column=args.column)
    fitted = qp.fit(table, period, degree, column=args.column)
    return fitted, period, degree


def cmd_fit(args) -> int:
    ms = piece_from_text(args.piece)
    board = board_from_text(args.board)
    n_from, n_to = _parse_range(args.n)
    table = count_series(ms, board, args.q, n_from, n_to,
                         budget=args.budget, threads=args.threads)
    fitted, period, degree = _fit_table(args, ms, board, table)
    label = f"empirically verified on n in [{n_from},{n_to}]"
    data = {
        "piece": ms.label,
        "board": board.as_text(),
        "q": args.q,
        "column": args.column,
        "period": period,
        "degree": degree,
        "quasipolynomial": fitted.to_json_dict(),
        "verified_on": [n_from, n_to],
        "label": label,
    }
    _emit(args, data, [
        f"{ms.label} on {board.as_text()}, q={args.q}, column {args.column}",
        f"period {period}, degree {degree}   ({label})",
        qp.pretty(fitted),
    ])
    return 0


def cmd_types(args) -> int:
    ms = piece_from_text(args.piece)
    board = board_from_text(args.board)
    n_from, n_to = _parse_range(args.n)
    table = count_series(ms, board, args.q, n_from, n_to,
                         budget=args.budget, threads=args.threads)
    fitted, period, degree = _fit_table(args, ms, board, table)
    unlabelled_types = qp.types_count(fitted)
    census = []
    if args.census:
        c_from, c_to = _parse_range(args.census)
        for n in range(c_from, c_to + 1):
            lab, unlab = census_types(ms, board, args.q, n, budget=args.budget)
            census.append({"n": n, "labelled_types": str(lab),
                           "unlabelled_types": str(unlab)})
    data = {
        "piece": ms.label,
        "board": board.as_text(),
        "q": args.q,
        "census": census,
        "types": {
            "unlabelled": str(unlabelled_types),
            "labelled": str(factorial(args.q) * unlabelled_types),
            "from": f"fit at n=-1 (period {period}, degree {degree}, "
                    f"verified on n in [{n_from},{n_to}])",
        },
    }
    pretty_lines = [f"{ms.label} on {board.as_text()}, q={args.q}"]
    for row in census:
        pretty_lines.append(
            f"  census n={row['n']}: unlabelled {row['unlabelled_types']} "
            f"labelled {row['labelled_types']}")
    pretty_lines.append(
        f"  types from fit at n=-1: unlabelled {unlabelled_types}, "
        f"labelled {factorial(args.q) * unlabelled_types}")
    _emit(args, data, pretty_lines)
    return 0


def cmd_mobius(args) -> int:
    ms = piece_from_text(args.piece)
    sl = intersection_semilattice(ms, args.q)
    report = semilattice_report(sl)
    if args.format == "json":
        print(_dump(report))
    else:
        print(f"{ms.label}, q={args.q}: {report['hyperplane_count']} hyperplanes, "
              f"{report['flat_count']} flats, "
              f"{len(report['iso_classes'])} isomorphism classes")
        for cls in report["iso_classes"]:
            print(f"  class {cls['id']}: kappa={cls['kappa']} codim={cls['codim']} "
                  f"mu={cls['mobius']} |Aut|={cls['aut']} size={cls['size']}")
    return 0


def cmd_bounds(args) -> int:
    ms = piece_from_text(args.piece)
    board = board_from_text(args.board)
    period_observed = None
    if args.observe_period_n:
        table = count_series(ms, board, args.q, 1, args.observe_period_n,
                             budget=args.budget, threads=args.threads)
        try:
            denom = bounds_mod.denominator(ms, board, args.q,
                                           budget=args.system_budget)
        except CapacityError:
            denom = None
        period_observed = qp.detect_period(
            table, 2 * args.q, args.p_max, denominator_bound=denom)
    report = bounds_mod.bounds_report(
        ms, board, args.q, system_budget=args.system_budget,
        minor_budget=args.minor_budget, period_observed=period_observed)
    _emit(args, report, [
        f"{ms.label} on {board.as_text()}, q={args.q}",
        f"  period observed : {report['period_observed']}",
        f"  denominator     : {report['denominator']}",
        f"  lcmd(A')        : {report['lcmd']}",
        f"  lcmd closed form: {report['lcmd_closed_form']}",
        f"  exhaustive      : {report['exhaustive']}",
        *(f"  note: {note}" for note in report["notes"]),
    ])
    return 0


def cmd_verify(args) -> int:
    if args.suite != "paper":
        raise RiderPolyError(f"unknown suite {args.suite!r}")
    return run_paper_suite(threads=args.threads)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="riderpoly",
        description="Exact nonattacking-rider counting on dilated boards")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, board=True):
        p.add_argument("--piece", required=True,
                       help="preset name or c1,d1;c2,d2;...")
        if board:
            p.add_argument("--board", default="square",
                           help="square | rect:a,b | poly:a,b,beta;...")
        p.add_argument("--q", type=int, required=True)
        p.add_argument("--format", choices=("pretty", "json", "csv"),
                       default="pretty")
        p.add_argument("--budget", type=int,
                       default=int(os.environ.get("RIDERPOLY_BUDGET",
                                                  DEFAULT_BUDGET)),
                       help="elementary attack-test budget "
                            "(env RIDERPOLY_BUDGET)")
        p.add_argument("--threads", type=int, default=1)

    p_count = sub.add_parser("count", help="exact count table")
    common(p_count)
    p_count.add_argument("--n", required=True, help="n or a:b")
    p_count.add_argument("--method", choices=("brute", "reconstruction"),
                         default="brute")
    p_count.set_defaults(func=cmd_count)

    def fit_options(p):
        p.add_argument("--n", required=True, help="table range a:b")
        p.add_argument("--period", type=int, default=None,
                       help="fix the period instead of detecting it")
        p.add_argument("--p-max", type=int, default=8)
        p.add_argument("--denominator-bound", type=int, default=None)
        p.add_argument("--degree", type=int, default=None,
                       help="fit degree (default 2q)")
        p.add_argument("--column", choices=("unlabelled", "labelled"),
                       default="unlabelled")

    p_fit = sub.add_parser("fit", help="fit the counting quasipolynomial")
    common(p_fit)
    fit_options(p_fit)
    p_fit.set_defaults(func=cmd_fit)

    p_types = sub.add_parser("types", help="configuration-type counts")
    common(p_types)
    fit_options(p_types)
    p_types.add_argument("--census", default=None,
                         help="also census types at these board sizes (a:b)")
    p_types.set_defaults(func=cmd_types)

    p_mob = sub.add_parser("mobius", help="semilattice report")
    p_mob.add_argument("--piece", required=True)
    p_mob.add_argument("--q", type=int, required=True)
    p_mob.add_argument("--format", choices=("pretty", "json"), default="pretty")
    p_mob.set_defaults(func=cmd_mobius)

    p_bounds = sub.add_parser("bounds", help="period bound chain")
    common(p_bounds)
    p_bounds.add_argument("--system-budget", type=int,
                          default=bounds_mod.DEFAULT_SYSTEM_BUDGET)
    p_bounds.add_argument("--minor-budget", type=int,
                          default=bounds_mod.DEFAULT_MINOR_BUDGET)
    p_bounds.add_argument("--observe-period-n", type=int, default=None,
                          help="brute-force table length for period detection")
    p_bounds.add_argument("--p-max", type=int, default=8)
    p_bounds.set_defaults(func=cmd_bounds)

    p_verify = sub.add_parser("verify", help="run the reproduction battery")
    p_verify.add_argument("--suite", default="paper")
    p_verify.add_argument("--threads", type=int, default=1)
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        _error(args, exc)
        return 3
    except (RiderPolyError, ValueError) as exc:
        _error(args, exc)
        return 2


def _error(args, exc) -> None:
    if getattr(args, "format", "pretty") == "json":
        payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        context = getattr(exc, "context", None)
        if context:
            payload["error"]["context"] = {k: str(v) for k, v in context.items()}
        print(_dump(payload))
    else:
        print(f"error: {exc}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
