"""Command-line front end.

Exit codes: 0 on success, 2 on malformed input or domain errors, 3 when a
request exceeds a guard limit.
"""
from __future__ import annotations

import argparse
import math
import sys
import time
from dataclasses import replace
from typing import NamedTuple, Sequence

import numpy as np

from . import __version__
from .config import DEFAULT_TOLERANCES, Tolerances
from .detect import DetectionVerdict, classify
from .errors import CapabilityError, DomainError, MalformedInputError
from .io import Report, dumps, format_float, matrix_as_pairs, read_state_file, state_file_text, write_state_file
from .linalg import partial_trace
from .measures import (
    MeasureReport,
    partition_discrepancy,
    truncation_measure,
    von_neumann_entropy,
)
from .states import StateSpec, build, random_density


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a machine-readable report")
    common.add_argument("--eps-deg", type=float, default=None, help="eigenvalue clustering gap")
    common.add_argument("--eps-tie", type=float, default=None, help="rounding tie tolerance")
    common.add_argument("--seed", type=int, default=0, help="seed for random state families")

    parser = argparse.ArgumentParser(prog="ncorr", description="Nonclassical-correlation measures for bipartite states.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_state = sub.add_parser("state", parents=[common], help="write a catalog state to a state file")
    p_state.add_argument("--name", required=True, help="catalog state name")
    p_state.add_argument("--param", action="append", default=[], metavar="KEY=VALUE", help="state parameter")
    p_state.add_argument("--out", default=None, help="output path (stdout when omitted)")
    p_state.set_defaults(func=cmd_state)

    p_compute = sub.add_parser("compute", parents=[common], help="compute measures for a state file")
    p_compute.add_argument("--in", dest="infile", required=True, help="state file path")
    p_compute.add_argument("--which", choices=["M", "G", "all"], default="M")
    p_compute.add_argument("--max-partition-dim", type=int, default=16, help="guard limit for the partition measure")
    p_compute.set_defaults(func=cmd_compute)

    p_detect = sub.add_parser("detect", parents=[common], help="classify a state file")
    p_detect.add_argument("--in", dest="infile", required=True, help="state file path")
    p_detect.set_defaults(func=cmd_detect)

    p_sweep = sub.add_parser("sweep", parents=[common], help="sweep a state family parameter, writing CSV")
    p_sweep.add_argument("--family", required=True, choices=["phi_p", "kappa"])
    p_sweep.add_argument("--sweep-param", default=None, help="parameter to sweep (defaults per family)")
    p_sweep.add_argument("--start", type=float, required=True)
    p_sweep.add_argument("--stop", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument("--param", action="append", default=[], metavar="KEY=VALUE", help="fixed parameter")
    p_sweep.add_argument("--out", default=None, help="CSV path (stdout when omitted)")
    p_sweep.set_defaults(func=cmd_sweep)

    p_bench = sub.add_parser("bench", parents=[common], help="time the truncation measure on growing dimensions")
    p_bench.add_argument("--max-dim", type=int, default=16, help="largest per-side dimension (doubling from 2)")
    p_bench.add_argument("--trials", type=int, default=3)
    p_bench.add_argument("--out", default=None, help="CSV path (stdout when omitted)")
    p_bench.set_defaults(func=cmd_bench)

    return parser


def _tolerances(args) -> Tolerances:
    tol = DEFAULT_TOLERANCES
    if args.eps_deg is not None:
        tol = replace(tol, deg=args.eps_deg)
    if args.eps_tie is not None:
        tol = replace(tol, tie=args.eps_tie)
    return tol


def _parse_params(pairs: Sequence[str]) -> dict[str, float]:
    params: dict[str, float] = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise MalformedInputError(f"--param expects KEY=VALUE, got {pair!r}")
        try:
            params[key] = float(value)
        except ValueError:
            raise MalformedInputError(f"--param {key}: {value!r} is not a number") from None
    return params


def _tol_line(tol: Tolerances) -> str:
    return "tolerances: " + " ".join(f"{k}={v:g}" for k, v in tol.as_dict().items())


def cmd_state(args) -> int:
    params = _parse_params(args.param)
    if args.name in ("random", "random_classical"):
        params.setdefault("seed", float(args.seed))
    state = build(StateSpec(args.name, params))
    if args.out:
        write_state_file(args.out, state)
    else:
        sys.stdout.write(state_file_text(state))
    return 0


def _measure_section(report: MeasureReport, which: str) -> dict:
    section: dict = {}
    if which in ("M", "all"):
        section.update(
            {
                "M": report.value,
                "M_A": report.side_a,
                "M_B": report.side_b,
                "per_component": [
                    {
                        "eta": c.eta,
                        "multiplicity": c.multiplicity,
                        "contribution_A": c.side_a,
                        "contribution_B": c.side_b,
                    }
                    for c in report.per_component
                ],
                "entropy_A": report.entropy_a,
                "entropy_B": report.entropy_b,
                "ppt_min_eigenvalue": report.ppt_min_eig,
            }
        )
    if which in ("G", "all") and report.partition_value is not None:
        section["G"] = report.partition_value
        section["F_A"] = report.partition_side_a
        section["F_B"] = report.partition_side_b
    return section


def cmd_compute(args) -> int:
    tol = _tolerances(args)
    state = read_state_file(args.infile)
    if args.which in ("M", "all"):
        report = truncation_measure(state, tol)
    else:
        report = None
    if args.which in ("G", "all"):
        f_a = partition_discrepancy(state, "A", args.max_partition_dim, tol)
        f_b = partition_discrepancy(state, "B", args.max_partition_dim, tol)
        g = max(f_a, f_b)
        if report is None:
            section = {"G": g, "F_A": f_a, "F_B": f_b}
        else:
            report = replace(report, partition_value=g, partition_side_a=f_a, partition_side_b=f_b)
            section = _measure_section(report, "all")
    else:
        section = _measure_section(report, "M")
    if args.json:
        doc = Report(
            version=__version__,
            kind="measure",
            dims=[state.dims.dA, state.dims.dB],
            tolerances=tol.as_dict(),
            measure=section,
        )
        sys.stdout.write(doc.to_json())
        return 0
    print(f"state: {args.infile} (dims {state.dims.dA}x{state.dims.dB})")
    if report is not None:
        print(f"M   = {report.value:.12g}")
        print(f"M_A = {report.side_a:.12g}")
        print(f"M_B = {report.side_b:.12g}")
        print("per-eigenspace contributions:")
        print("  eta            mult  side A          side B")
        for c in report.per_component:
            print(f"  {c.eta:<14.9g} {c.multiplicity:<5d} {c.side_a:<15.9g} {c.side_b:.9g}")
        print(f"entropy_A = {report.entropy_a:.12g}")
        print(f"entropy_B = {report.entropy_b:.12g}")
        print(f"ppt_min_eigenvalue = {report.ppt_min_eig:.12g}")
    if "G" in section:
        print(f"G   = {section['G']:.12g}")
        print(f"F_A = {section['F_A']:.12g}")
        print(f"F_B = {section['F_B']:.12g}")
    print(_tol_line(tol))
    return 0


def _detection_section(verdict: DetectionVerdict) -> dict:
    section: dict = {
        "verdict": verdict.verdict,
        "decided_by": verdict.decided_by,
        "evidence": [
            {"test": e.test, "outcome": e.outcome, "witness": e.witness, "detail": e.detail}
            for e in verdict.evidence
        ],
        "applied": list(verdict.applied),
    }
    if verdict.basis_a is not None:
        section["basis_A"] = matrix_as_pairs(verdict.basis_a)
        section["basis_B"] = matrix_as_pairs(verdict.basis_b)
        section["weights"] = [[float(w) for w in row] for row in verdict.weights]
    return section


def cmd_detect(args) -> int:
    tol = _tolerances(args)
    state = read_state_file(args.infile)
    verdict = classify(state, tol)
    if args.json:
        doc = Report(
            version=__version__,
            kind="detect",
            dims=[state.dims.dA, state.dims.dB],
            tolerances=tol.as_dict(),
            detection=_detection_section(verdict),
        )
        sys.stdout.write(doc.to_json())
        return 0
    print(f"state: {args.infile} (dims {state.dims.dA}x{state.dims.dB})")
    decided = verdict.decided_by or "none"
    print(f"verdict: {verdict.verdict} (decided by: {decided})")
    print("evidence:")
    for e in verdict.evidence:
        print(f"  {e.test}: {e.outcome} (witness={e.witness:.6g}) {e.detail}")
    if verdict.basis_a is not None:
        print("witnessing product eigenbasis emitted (use --json for the matrices)")
    print(_tol_line(tol))
    return 0


_SWEEP_DEFAULT_PARAM = {"phi_p": "p", "kappa": "c_x"}


def run_sweep(
    family: str,
    start: float,
    stop: float,
    steps: int,
    sweep_param: str | None = None,
    fixed: dict[str, float] | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> list[tuple[float, float, float]]:
    """Rows (parameter value, measure, reduced-state entropy) over a linear grid."""
    if steps < 1:
        raise DomainError(f"steps must be >= 1, got {steps}")
    if family not in _SWEEP_DEFAULT_PARAM:
        raise MalformedInputError(f"unknown sweep family {family!r}")
    param = sweep_param or _SWEEP_DEFAULT_PARAM[family]
    values = np.linspace(start, stop, steps) if steps > 1 else np.array([start])
    rows = []
    for value in values:
        params = dict(fixed or {})
        params[param] = float(value)
        state = build(StateSpec(family, params))
        m = truncation_measure(state, tol).value
        entropy = von_neumann_entropy(partial_trace(state.mat, state.dims, "A"), tol)
        rows.append((float(value), m, entropy))
    return rows


def _write_csv(path: str | None, header: str, rows: list[tuple]) -> None:
    lines = [header]
    for row in rows:
        lines.append(",".join(format_float(v) if isinstance(v, float) else str(v) for v in row))
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w", newline="\n") as fp:
            fp.write(text)
    else:
        sys.stdout.write(text)


def cmd_sweep(args) -> int:
    tol = _tolerances(args)
    rows = run_sweep(
        args.family,
        args.start,
        args.stop,
        args.steps,
        sweep_param=args.sweep_param,
        fixed=_parse_params(args.param),
        tol=tol,
    )
    _write_csv(args.out, "param,M,S_vN_trB", rows)
    return 0


class BenchResult(NamedTuple):
    rows: list[tuple[int, int, float]]  # (per-side dim, total dim, mean seconds)
    slope: float | None


def run_bench(max_dim: int = 16, trials: int = 3, seed: int = 0, tol: Tolerances = DEFAULT_TOLERANCES) -> BenchResult:
    """Time the truncation measure on seeded random full-rank states.

    Per-side dimensions double from 2 up to max_dim; the slope is the
    least-squares gradient of log mean time against log dimension.
    """
    if max_dim < 2:
        raise DomainError(f"max-dim must be >= 2, got {max_dim}")
    if trials < 0:
        raise DomainError(f"trials must be >= 0, got {trials}")
    sizes = []
    n = 2
    while n <= max_dim:
        sizes.append(n)
        n *= 2
    rows = []
    if trials > 0:
        for n in sizes:
            states = [random_density((n, n), seed=[seed, n, t]) for t in range(trials)]
            truncation_measure(states[0], tol)  # warm-up, untimed
            elapsed = []
            for state in states:
                t0 = time.perf_counter()
                truncation_measure(state, tol)
                elapsed.append(time.perf_counter() - t0)
            rows.append((n, n * n, sum(elapsed) / trials))
    slope = None
    if len(rows) >= 2:
        xs = np.log([r[0] for r in rows])
        ys = np.log([r[2] for r in rows])
        slope = float(np.polyfit(xs, ys, 1)[0])
    return BenchResult(rows, slope)


def cmd_bench(args) -> int:
    result = run_bench(args.max_dim, args.trials, args.seed, _tolerances(args))
    _write_csv(args.out, "N,dim,mean_seconds", result.rows)
    if result.slope is not None:
        print(f"log-log slope of runtime vs per-side dimension: {result.slope:.3f}")
    elif args.trials == 0:
        print("no timings collected (trials = 0)")
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code else 0
    try:
        return args.func(args)
    except CapabilityError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (MalformedInputError, DomainError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
