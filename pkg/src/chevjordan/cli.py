"""Command line: ``chevjordan {jordan,verify,stabilisers,info,tables}``.

Exit codes: 0 success, 1 verification mismatch, 2 usage or data error.
"""

from __future__ import annotations

import argparse
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .catalogue import (
    CatalogueError,
    ExpectedTable,
    OrbitRep,
    load_expected,
    load_reps,
    normalize_label,
    serialize_expected_table,
    table_from_reports,
)
from .jordan import JordanReport, analyze_orbit, compare_reports
from .modules import GROUPS_ADJOINT, MIN_DIMS, module_action
from .roots import root_system
from .stabilisers import GOOD_ABOVE, render_reports, smoothness_report

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _one(args) -> JordanReport:
    group, module, rep = args
    ma = module_action(group, module)
    return analyze_orbit(ma, rep.element(ma.algebra), rep.orbit_label, rep.char_only)


def compute_reports(group: str, module: str, reps: Sequence[OrbitRep], jobs: int = 1,
                    progress: bool = False) -> list[JordanReport]:
    """Reports in the order of ``reps``; ``jobs > 1`` uses worker processes."""
    tasks = [(group, module, r) for r in reps]
    out = []
    t0 = time.time()
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = ex.map(_one, tasks)
            for rep in results:
                out.append(rep)
                if progress:
                    print(f"[{time.time() - t0:6.1f}s] {rep.orbit_label}", file=sys.stderr, flush=True)
        return out
    for t in tasks:
        rep = _one(t)
        out.append(rep)
        if progress:
            print(f"[{time.time() - t0:6.1f}s] {rep.orbit_label}", file=sys.stderr, flush=True)
    return out


def _check_group_module(group: str, module: str):
    if module == "minimal" and group not in MIN_DIMS:
        raise UsageError(f"no minimal module for {group}; choose one of {', '.join(MIN_DIMS)}")
    if group not in GROUPS_ADJOINT:
        raise UsageError(f"unknown group {group!r}")


def _select(reps: list[OrbitRep], orbit: str | None) -> list[OrbitRep]:
    if not orbit:
        return reps
    want = normalize_label(orbit)
    hit = [r for r in reps if r.orbit_label == want]
    if not hit:
        raise UsageError(f"unknown orbit {orbit!r}; valid labels: {', '.join(r.orbit_label for r in reps)}")
    return hit


def render(reports: Sequence[JordanReport], fmt: str) -> str:
    if fmt == "csv":
        return serialize_expected_table(table_from_reports(reports)).rstrip("\n")
    if fmt == "tex":
        lines = [r"\begin{tabular}{lll}", r"\hline", r"Orbit & $p$ & Jordan blocks\\", r"\hline"]
        for rep in reports:
            for k, (p, part) in enumerate(rep.rows()):
                name = rep.orbit_label if k == 0 else ""
                lines.append(f"{name} & {p} & ${part.tex()}$\\\\")
            lines.append(r"\hline")
        lines.append(r"\end{tabular}")
        return "\n".join(lines)
    return "\n".join(rep.render() for rep in reports)


def cmd_jordan(a) -> int:
    _check_group_module(a.group, a.module)
    reps = _select(load_reps(a.group, a.reps_file), a.orbit)
    print(render(compute_reports(a.group, a.module, reps, a.jobs, a.progress), a.format))
    return EXIT_OK


def cmd_tables(a) -> int:
    _check_group_module(a.group, a.module)
    reps = load_reps(a.group, a.reps_file)
    print(render(compute_reports(a.group, a.module, reps, a.jobs, a.progress), a.format))
    return EXIT_OK


def verify(group: str, module: str, expected: ExpectedTable, reps: Sequence[OrbitRep], jobs: int = 1,
           progress: bool = False) -> list[str]:
    """Human-readable differences; empty when everything matches."""
    exp = {orb: r for (_, _, orb), r in expected.reports().items()}
    by_label = {r.orbit_label: r for r in reps}
    problems = []
    todo = [by_label[o] for o in exp if o in by_label]
    for orb in exp:
        if orb not in by_label:
            problems.append(f"{orb}: no representative")
    for rep in compute_reports(group, module, todo, jobs, progress):
        problems += [str(m) for m in compare_reports(rep, exp[rep.orbit_label])]
    for r in reps:
        if r.orbit_label not in exp:
            problems.append(f"{r.orbit_label}: not in the expected table")
    return problems


def cmd_verify(a) -> int:
    _check_group_module(a.group, a.module)
    expected = load_expected(a.group, a.module, a.expected_file)
    reps = load_reps(a.group, a.reps_file)
    if a.orbit:
        reps = _select(reps, a.orbit)
        expected.rows = [r for r in expected.rows if r.orbit == reps[0].orbit_label]
    problems = verify(a.group, a.module, expected, reps, a.jobs, a.progress)
    n = len(expected.orbits())
    if problems:
        print("\n".join(problems))
        print(f"{a.group} {a.module}: {len(problems)} difference(s) across {n} orbits")
        return EXIT_MISMATCH
    print(f"{a.group} {a.module}: all {n} orbits match")
    return EXIT_OK


def cmd_stabilisers(a) -> int:
    if a.group not in MIN_DIMS:
        raise UsageError(f"stabilisers need one of {', '.join(MIN_DIMS)}")
    print(render_reports(smoothness_report(a.group)))
    return EXIT_OK


def info_lines(group: str) -> list[str]:
    rs = root_system(group)
    return [
        f"group: {group}",
        f"rank: {rs.rank}",
        f"positive roots: {rs.n_positive}",
        f"dim g: {rs.lie_dim}",
        f"dim V_min: {MIN_DIMS.get(group, '-')}",
        f"good primes: p>{GOOD_ABOVE[group]}",
    ]


def cmd_info(a) -> int:
    if a.group not in GROUPS_ADJOINT:
        raise UsageError(f"unknown group {a.group!r}")
    print("\n".join(info_lines(a.group)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chevjordan", description="Jordan blocks of nilpotent elements in exceptional Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, module=True, orbit=True):
        sp.add_argument("--group", "-g", required=True)
        if module:
            sp.add_argument("--module", "-m", choices=("minimal", "adjoint"), default="minimal")
            sp.add_argument("--reps-file")
            sp.add_argument("--jobs", "-j", type=int, default=1)
            sp.add_argument("--progress", action="store_true", help="per-orbit timing lines on stderr")
        if orbit:
            sp.add_argument("--orbit")

    sp = sub.add_parser("jordan", help="Jordan blocks per orbit")
    common(sp)
    sp.add_argument("--format", choices=("text", "csv", "tex"), default="text")
    sp.set_defaults(func=cmd_jordan)

    sp = sub.add_parser("verify", help="compare against an expected table")
    common(sp)
    sp.add_argument("--expected-file")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("tables", help="render every orbit")
    common(sp, orbit=False)
    sp.add_argument("--format", choices=("text", "csv", "tex"), default="csv")
    sp.set_defaults(func=cmd_tables)

    sp = sub.add_parser("stabilisers", help="stabiliser dimensions on the minimal module")
    common(sp, module=False, orbit=False)
    sp.set_defaults(func=cmd_stabilisers)

    sp = sub.add_parser("info", help="basic data for a group")
    common(sp, module=False, orbit=False)
    sp.set_defaults(func=cmd_info)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    a.group = a.group.upper()
    try:
        return a.func(a)
    except (UsageError, CatalogueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
