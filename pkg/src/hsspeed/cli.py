"""Command-line front end: ``sweep``, ``verify`` and ``witness``.

Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
import traceback
from typing import Sequence

import numpy as np

from .analysis import (
    HSS_ZERO_THRESHOLD,
    QFI_ZERO_THRESHOLD,
    SweepGrid,
    coincidence,
    nonmarkov_intervals,
    sweep,
)
from .presets import PRESETS, presets_for
from .scenarios import (
    DERIVATIVE_MODES,
    CommonReservoirConfig,
    MajoranaConfig,
    OneQubitDissipativeConfig,
    TeleportationConfig,
    TwoQubitIndependentConfig,
    common_reservoir_family,
    majorana_family,
    one_qubit_family,
    teleportation_family,
    two_qubit_independent_family,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
MODELS = ("one-qubit", "two-qubit-independent", "common-reservoir", "teleportation", "majorana")
CSV_HEADER = ("t", "hss_num", "qfi_num", "hss_closed", "qfi_closed", "dhss_dt", "dqfi_dt")

# model -> (t_end, steps) when the grid flags are omitted
DEFAULT_GRIDS = {
    "one-qubit": (6.0, 500),
    "two-qubit-independent": (6.0, 500),
    "common-reservoir": (3.0, 600),
    "teleportation": (5.0, 500),
    "majorana": (8.0, 500),
}


class UsageError(Exception):
    pass


def _finite(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"must be finite: {text!r}")
    return x


def _env_spin(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"--env takes h,eps,lam; got {text!r}")
    return tuple(_finite(p) for p in parts)


def _qubit_list(text: str) -> tuple:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"--noisy takes comma-separated qubit indices; got {text!r}") from None


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", choices=MODELS, required=True)
    g = p.add_argument_group("model parameters (radians for angles)")
    g.add_argument("--gamma0", type=_finite)
    g.add_argument("--lambda", dest="lam", type=_finite)
    g.add_argument("--theta", type=_finite)
    g.add_argument("--phi", type=_finite)
    g.add_argument("--r1", type=_finite)
    g.add_argument("--big-r", type=_finite)
    g.add_argument("--r", type=_finite)
    g.add_argument("--p", type=_finite)
    g.add_argument("--omega-sum", type=_finite)
    g.add_argument("--env", type=_env_spin, action="append", default=[],
                   help="environment spin h,eps,lam; repeat for several")
    g.add_argument("--state", choices=("w", "ghz"))
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--noisy", type=_qubit_list, help="comma-separated noisy qubit indices")
    g.add_argument("--q", type=_finite, help="Ohmic exponent")
    g.add_argument("--b", type=_finite, help="coupling B")
    g.add_argument("--gamma-cap", type=_finite, help="bath cutoff")
    g.add_argument("--phi1", type=_finite)
    g.add_argument("--phi2", type=_finite)
    g.add_argument("--phase-index", type=int, default=0)
    s = p.add_argument_group("grid and numerics")
    s.add_argument("--t-start", type=_finite, default=0.0)
    s.add_argument("--t-end", type=_finite)
    s.add_argument("--steps", type=int)
    s.add_argument("--derivative-mode", choices=DERIVATIVE_MODES, default="linearity")
    s.add_argument("--jobs", type=int, default=1)


def _pick(value, default):
    return default if value is None else value


def build_family(args):
    """Scenario family for the parsed flags; defaults follow the built-in presets."""
    model = args.model
    if model == "one-qubit":
        cfg = OneQubitDissipativeConfig(
            gamma0=_pick(args.gamma0, 5.0), lam=_pick(args.lam, 1.0),
            theta=_pick(args.theta, math.pi / 2), phi=_pick(args.phi, math.pi / 4),
        )
        return one_qubit_family(cfg)
    if model == "two-qubit-independent":
        cfg = TwoQubitIndependentConfig(
            _pick(args.gamma0, 5.0), _pick(args.lam, 1.0), _pick(args.phi, 0.4)
        )
        return two_qubit_independent_family(cfg)
    if model == "common-reservoir":
        cfg = CommonReservoirConfig(
            r1=_pick(args.r1, 0.3), big_r=_pick(args.big_r, 8.0), phi=_pick(args.phi, math.pi / 4)
        )
        return common_reservoir_family(cfg)
    if model == "teleportation":
        cfg = TeleportationConfig(
            r=_pick(args.r, 0.8), p=_pick(args.p, 0.3), theta=_pick(args.theta, 1.0),
            phi=_pick(args.phi, 0.5), omega_sum=_pick(args.omega_sum, 0.7),
            env_spins=tuple(args.env),
        )
        return teleportation_family(cfg)
    state = _pick(args.state, "ghz")
    if state == "w":
        phases = (_pick(args.phi1, 0.3), _pick(args.phi2, 0.9))
        n, m = _pick(args.n, 3), _pick(args.m, 1)
        noisy = args.noisy if args.noisy is not None else ((2,) if m == 1 else None)
    else:
        phases = (_pick(args.phi, 0.4),)
        n, m = _pick(args.n, 3), _pick(args.m, 2)
        noisy = args.noisy
    cfg = MajoranaConfig(
        n=n, m=m, q_exponent=_pick(args.q, 1.0), b_field=_pick(args.b, 1.0),
        gamma_cap0=_pick(args.gamma_cap, 1.0), state_kind=state, phases=phases,
        noisy_qubits=noisy,
    )
    return majorana_family(cfg)


def build_grid(args) -> SweepGrid:
    t_end, steps = DEFAULT_GRIDS[args.model]
    return SweepGrid(args.t_start, _pick(args.t_end, t_end), _pick(args.steps, steps))


def _setup(args):
    try:
        family = build_family(args)
        grid = build_grid(args)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc
    if not 0 <= args.phase_index < len(family.phase_names):
        raise UsageError(f"--phase-index must be below {len(family.phase_names)} for this model")
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    return family, grid


def _run_sweep(family, grid, args):
    return sweep(family, args.phase_index, grid, derivative_mode=args.derivative_mode, n_jobs=args.jobs)


def _fmt(x) -> str:
    return "" if x is None else "%.17g" % x


def write_csv(samples, stream) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for s in samples:
        w.writerow([_fmt(v) for v in (
            s.t, s.hss_num, s.qfi_num, s.hss_closed, s.qfi_closed, s.d_hss_dt, s.d_qfi_dt
        )])


def cmd_sweep(args) -> int:
    family, grid = _setup(args)
    samples = _run_sweep(family, grid, args)
    if args.output in (None, "-"):
        write_csv(samples, sys.stdout)
    else:
        with open(args.output, "w", newline="") as fh:
            write_csv(samples, fh)
    return EXIT_OK


def _fmt_intervals(intervals) -> str:
    return ", ".join(f"[{a:.6g}, {b:.6g}]" for a, b in intervals) or "none"


def cmd_witness(args) -> int:
    family, grid = _setup(args)
    report = nonmarkov_intervals(_run_sweep(family, grid, args), args.flow_threshold)
    if not report.detected:
        print("no non-Markovian intervals detected")
        return EXIT_OK
    print(f"qfi_flow_positive: {_fmt_intervals(report.qfi_flow_positive_intervals)}")
    print(f"hss_flow_positive: {_fmt_intervals(report.hss_flow_positive_intervals)}")
    print(f"witnesses_agree_within_one_step: {'yes' if report.agree() else 'no'}")
    return EXIT_OK


class _Checks:
    def __init__(self, out):
        self.out = out
        self.failed = 0

    def add(self, name: str, max_dev: float, limit: float) -> None:
        ok = bool(max_dev <= limit)
        self.failed += not ok
        print(f"CHECK {name} {'PASS' if ok else 'FAIL'} max_dev={max_dev:.3e}", file=self.out)


def _closed_dev(samples) -> float | None:
    devs = []
    for s in samples:
        if s.qfi_closed is not None:
            devs.append(abs(s.qfi_num - s.qfi_closed))
        if s.hss_closed is not None:
            devs.append(abs(s.hss_num - s.hss_closed))
    return max(devs) if devs else None


def verify_preset(preset, tol: float, checks: _Checks) -> None:
    family = preset.build()
    by_mode = {
        mode: sweep(family, preset.phase_index, preset.grid, derivative_mode=mode)
        for mode in DERIVATIVE_MODES
    }
    name = preset.name
    for mode, limit in (("finite-difference", tol), ("linearity", tol * 1e-3)):
        dev = _closed_dev(by_mode[mode])
        if dev is not None:
            checks.add(f"{name}/closed-{mode}", dev, limit)
    if preset.relation is not None:
        rel = preset.relation
        fd = by_mode["finite-difference"]
        closed = [abs(s.qfi_closed - rel(s.hss_closed)) for s in fd
                  if s.qfi_closed is not None and s.hss_closed is not None]
        if closed:
            checks.add(f"{name}/relation-closed", max(closed), 1e-8)
        checks.add(f"{name}/relation-numeric", max(abs(s.qfi_num - rel(s.hss_num)) for s in fd), 1e-5)
    excess = max(s.hss_num - math.sqrt(s.qfi_num) for m in by_mode.values() for s in m)
    checks.add(f"{name}/hierarchy", max(excess, 0.0), 1e-6)
    bad = 0
    for samples in by_mode.values():
        rep = coincidence(samples, HSS_ZERO_THRESHOLD, QFI_ZERO_THRESHOLD)
        bad += len(rep.sign_disagreements) + len(rep.zero_mismatches)
    checks.add(f"{name}/coincidence", float(bad), 0.0)
    lin = by_mode["linearity"]
    if name == "common-reservoir-fig1":
        rep = coincidence(lin)
        n = min(len(rep.extrema_qfi), len(rep.extrema_hss))
        gap = max((abs(a - b) for a, b in zip(rep.extrema_qfi, rep.extrema_hss)), default=math.inf)
        ok = n >= 3 and rep.extrema_paired()
        checks.add(f"{name}/extrema-paired", gap / rep.step if ok else math.inf, 1.0)
    checks.add(f"{name}/witness-agreement", 0.0 if nonmarkov_intervals(lin).agree() else 1.0, 0.0)


def cmd_verify(args) -> int:
    try:
        presets = presets_for(args.model)
    except KeyError:
        raise UsageError(f"unknown model {args.model!r}") from None
    checks = _Checks(sys.stdout)
    for preset in presets:
        verify_preset(preset, args.tol, checks)
    print(f"{len(presets)} preset(s), {checks.failed} failed check(s)")
    return EXIT_FAIL if checks.failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hsspeed", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="write a QFI/HSS time sweep as CSV")
    _add_run_flags(p)
    p.add_argument("--output", "-o", help="CSV path; stdout when omitted or '-'")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="check closed forms, relations and reports on the presets")
    p.add_argument("--model", choices=MODELS + ("all",), default="all")
    p.add_argument("--tol", type=_finite, default=1e-6)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("witness", help="report positive QFI-flow and HSS-flow intervals")
    _add_run_flags(p)
    p.add_argument("--flow-threshold", type=_finite, default=1e-9)
    p.set_defaults(func=cmd_witness)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"hsspeed: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        # reader closed early (e.g. piped into head); silence the flush at exit
        sys.stdout = open(os.devnull, "w")
        return EXIT_OK
    except (ArithmeticError, ValueError, np.linalg.LinAlgError) as exc:
        frame = traceback.extract_tb(exc.__traceback__)[-1]
        print(
            f"hsspeed: numeric failure in {frame.name}: {type(exc).__name__}: {exc}",
            file=sys.stderr,
        )
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
