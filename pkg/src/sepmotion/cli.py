"""Command-line front end.

Exit codes: 0 ok, 1 I/O or malformed input, 2 constitutive failure,
3 insufficient shear, 4 bracket failure, 5 regime inconsistency,
6 solver or verification failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import constitutive as cm
from . import dynamics as dyn
from . import io as sio
from . import motion as mo
from .eigensolver import eigenvalue_solve, verify_solution
from .errors import (
    BracketFailure,
    ConstitutiveError,
    InsufficientShear,
    RegimeError,
    SepMotionError,
)

EXIT_OK, EXIT_IO, EXIT_CONSTITUTIVE, EXIT_SHEAR, EXIT_BRACKET, EXIT_REGIME, EXIT_SOLVER = range(7)
SWEEP_PARAMS = ("h", "B", "c1", "c2", "M")

log = logging.getLogger("sepmotion")


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    model: str | None
    grid_n: int = 2048
    tol_picard: float = 1e-12
    tol_eps: float = 1e-12
    tol_energy: float = 1e-9
    horizon: float = 1e4
    out: str | None = None
    format: str = "json"

    def __post_init__(self):
        for name in ("tol_picard", "tol_eps", "tol_energy", "horizon"):
            if not getattr(self, name) > 0:
                raise CliError(f"--{name.replace('_', '-')} must be positive", EXIT_IO)
        if self.grid_n < 64 or self.grid_n % 2:
            raise CliError("--grid-n must be even and at least 64", EXIT_IO)

    @classmethod
    def from_args(cls, args):
        return cls(args.model, args.grid_n, args.tol_picard, args.tol_eps, args.tol_energy, args.horizon, args.out, args.format)


def _read_model(path):
    if path is None:
        raise CliError("--model is required", EXIT_IO)
    try:
        return sio.load_model(path)
    except OSError as exc:
        raise CliError(f"cannot read model file: {exc}", EXIT_IO) from None
    except sio.DocumentError as exc:
        raise CliError(str(exc), EXIT_IO) from None


def _read_solution(path):
    if path is None:
        raise CliError("--solution is required", EXIT_IO)
    try:
        return sio.load_solution(path)
    except OSError as exc:
        raise CliError(f"cannot read solution file: {exc}", EXIT_IO) from None
    except sio.DocumentError as exc:
        raise CliError(str(exc), EXIT_IO) from None


def _write(path, text):
    try:
        p = Path(path)
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_IO) from None


def _validated(model):
    report = cm.validate_model(model)
    if not report.ok:
        raise CliError("constitutive failure: " + "; ".join(report.violations), EXIT_CONSTITUTIVE)
    return report


def _solve(model, cfg):
    try:
        return eigenvalue_solve(model, cfg.grid_n, cfg.tol_picard, cfg.tol_eps)
    except InsufficientShear as exc:
        raise CliError(f"insufficient shear: {exc}", EXIT_SHEAR) from None
    except BracketFailure as exc:
        raise CliError(str(exc), EXIT_BRACKET) from None
    except SepMotionError as exc:
        raise CliError(f"solver failure: {exc}", EXIT_SOLVER) from None


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_validate(args):
    cfg = RunConfig.from_args(args)
    model = _read_model(cfg.model)
    report = cm.validate_model(model)
    for line in report.lines():
        print(line)
    mod = cm.moduli(model)
    print(f"bulk modulus = {mod.bulk!r}")
    print(f"shear modulus = {mod.shear!r}")
    if report.ok:
        u = np.linspace(1 - model.delta, 1 + model.delta, 21)
        margin = cm.baker_ericksen_margin(model, u)
        print(f"Baker-Ericksen margin on U(delta): min {float(np.min(margin))!r}")
        if np.any(margin < 0):
            print("warning: negative Baker-Ericksen margin at u = " + ", ".join(fmt_list(u[margin < 0])))
        return EXIT_OK
    raise CliError("constitutive failure: " + "; ".join(report.violations), EXIT_CONSTITUTIVE)


def fmt_list(xs):
    return [sio.fmt(float(x)) for x in xs]


def cmd_eigen(args):
    cfg = RunConfig.from_args(args)
    model = _read_model(cfg.model)
    _validated(model)
    sol = _solve(model, cfg)
    report = verify_solution(sol, model)
    print(f"mu = {sol.mu!r}")
    print(f"epsilon = {sol.epsilon!r}")
    print(f"u(1) = {sol.u_boundary!r} (u0 = {sol.u0_target!r})")
    print(f"residual = {sol.residual_sup!r}")
    print(f"contraction rate = {sol.contraction_rate!r}")
    for line in report.lines():
        print(line)
    if cfg.out:
        _write(cfg.out, sio.dump_json(sio.solution_to_dict(sol)))
    if not report.ok:
        raise CliError("verification failed: " + "; ".join(report.failures), EXIT_SOLVER)
    return EXIT_OK


def cmd_simulate(args):
    cfg = RunConfig.from_args(args)
    model = _read_model(cfg.model)
    _validated(model)
    sol = _read_solution(args.solution)
    try:
        mo.check_pairing(model, sol)
        traj = dyn.integrate(model.h, sol.mu, args.a0, args.adot0, horizon=cfg.horizon)
        motion = mo.assemble(model, sol, traj)
    except RegimeError as exc:
        raise CliError(str(exc), EXIT_REGIME) from None
    except SepMotionError as exc:
        raise CliError(f"solver failure: {exc}", EXIT_SOLVER) from None

    drift = traj.energy_drift
    stress = mo.boundary_stress_residual(motion, traj.t)
    summary = {"regime": traj.regime, "energy_drift": drift, "max_boundary_stress": float(np.max(stress))}
    if traj.regime == dyn.EXPANSION:
        tail = traj.expansion_tail()
        summary.update(tail)
        print(f"expansion, a/t -> {tail['limit']!r} (a/t = {tail['final_ratio']!r} at t = {float(traj.t[-1])!r})")
        print(f"final gap = {tail['final_gap']!r}")
    else:
        tau_q = dyn.collapse_time_quadrature(model.h, sol.mu, args.a0, args.adot0)
        summary.update({"tau": traj.tau, "tau_quadrature": tau_q})
        print(f"collapse, tau = {traj.tau!r} (quadrature {tau_q!r})")
    print(f"energy drift = {drift!r}")
    print(f"max boundary stress residual = {summary['max_boundary_stress']!r}")

    if cfg.out:
        out = Path(cfg.out)
        phi1 = float(sol.profile.phi[-1])
        t_end = float(traj.t[-1])
        times = np.linspace(0.0, t_end, 11)
        radii = np.linspace(0.0, 1.0, 11)
        _write(out / "trajectory.csv", sio.trajectory_csv(traj, phi1))
        _write(out / "motion_samples.csv", sio.motion_samples_csv(mo.sample_grid(motion, times, radii)))
        bundle = {
            "model": sio.model_to_dict(model),
            "solution": sio.solution_to_dict(sol),
            "initial": {"a0": args.a0, "adot0": args.adot0},
            "trajectory": "trajectory.csv",
            "samples": "motion_samples.csv",
            "summary": summary,
        }
        _write(out / "motion.json", sio.dump_json(bundle))

    if drift > cfg.tol_energy:
        raise CliError(f"energy drift {drift!r} exceeds {cfg.tol_energy!r}", EXIT_SOLVER)
    if np.max(stress) > mo.BOUNDARY_STRESS_TOL:
        raise CliError(f"boundary stress residual {float(np.max(stress))!r} exceeds tolerance", EXIT_SOLVER)
    return EXIT_OK


def cmd_collapse_time(args):
    if args.solution is not None:
        sol = _read_solution(args.solution)
        h, mu = sol.h, sol.mu
    else:
        if args.h is None or args.mu is None:
            raise CliError("collapse-time needs --solution or both --h and --mu", EXIT_IO)
        h, mu = args.h, args.mu
    try:
        tau = dyn.collapse_time_quadrature(h, mu, args.a0, args.adot0)
    except RegimeError as exc:
        raise CliError(str(exc), EXIT_REGIME) from None
    if args.format == "json":
        print(json.dumps({"h": h, "mu": mu, "a0": args.a0, "adot0": args.adot0, "tau": tau}))
    else:
        print(f"tau = {tau!r}")
    return EXIT_OK


def _sweep_model(base, param, value):
    if param == "h":
        return cm.MaterialModel(value, base.f, base.M)
    if param == "M":
        return cm.MaterialModel(base.h, base.f, value)
    if param == "B":
        if base.f.kind != "quadratic":
            raise CliError("--param B needs a quadratic base model", EXIT_IO)
        return base.with_shear(cm.QuadraticShear(value))
    if base.f.kind != "two-invariant":
        raise CliError(f"--param {param} needs a two-invariant base model", EXIT_IO)
    c1, c2 = base.f.params
    return base.with_shear(cm.TwoInvariantShear(value, c2) if param == "c1" else cm.TwoInvariantShear(c1, value))


def sweep_row(model, cfg):
    """One sweep row: (beta, mu, u(1), regime, tau or asymptote, status)."""
    report = cm.validate_model(model)
    if not report.ok:
        return [model.beta, "", "", "", "", f"skipped(constitutive: {report.violations[0]})"]
    try:
        sol = eigenvalue_solve(model, cfg.grid_n, cfg.tol_picard, cfg.tol_eps)
    except InsufficientShear:
        return [model.beta, "", "", "", "", "skipped(insufficient shear)"]
    except BracketFailure:
        return [model.beta, "", "", "", "", "skipped(bracket failure)"]
    except SepMotionError as exc:
        return [model.beta, "", "", "", "", f"skipped(solver failure: {type(exc).__name__})"]
    regime = dyn.regime_of(model.h, sol.mu)
    if regime == dyn.COLLAPSE:
        value = dyn.collapse_time_quadrature(model.h, sol.mu, 1.0, 0.0)
    elif regime == dyn.EXPANSION:
        value = float(np.sqrt(2.0 * dyn.energy((1.0, 0.0), model.h, sol.mu)))
    else:
        value = ""
    status = "ok" if verify_solution(sol, model).ok else "verification failed"
    return [model.beta, sol.mu, sol.u_boundary, regime, value, status]


def _sweep_task(payload):
    model_doc, cfg = payload
    return sweep_row(sio.model_from_dict(model_doc), cfg)


def cmd_sweep(args):
    cfg = RunConfig.from_args(args)
    if args.param not in SWEEP_PARAMS:
        raise CliError(f"--param must be one of {', '.join(SWEEP_PARAMS)}", EXIT_IO)
    try:
        values = [float(x) for x in (args.values or "").split(",") if x.strip()]
    except ValueError:
        raise CliError(f"--values must be a comma-separated list of numbers, got {args.values!r}", EXIT_IO) from None
    if not values:
        raise CliError("--values must not be empty", EXIT_IO)
    base = _read_model(cfg.model)
    models = [_sweep_model(base, args.param, v) for v in values]
    payloads = [(sio.model_to_dict(m), cfg) for m in models]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_sweep_task, payloads))  # map preserves input order
    else:
        results = [_sweep_task(p) for p in payloads]

    header = ["param", "value", "beta", "mu", "u1", "regime", "tau_or_asymptote", "status"]
    rows = [[args.param, v, *res] for v, res in zip(values, results)]
    if cfg.format == "csv":
        text = sio.csv_text(header, rows)
    else:
        text = sio.dump_json([dict(zip(header, row)) for row in rows])
    if cfg.out:
        _write(cfg.out, text)
    sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", help="model description (JSON)")
    common.add_argument("--grid-n", type=int, default=2048)
    common.add_argument("--tol-picard", type=float, default=1e-12)
    common.add_argument("--tol-eps", type=float, default=1e-12)
    common.add_argument("--tol-energy", type=float, default=1e-9)
    common.add_argument("--horizon", type=float, default=1e4)
    common.add_argument("--out", help="output path (file, or directory for simulate)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("-v", "--verbose", action="store_true")

    initial = argparse.ArgumentParser(add_help=False)
    initial.add_argument("--a0", type=float, default=1.0)
    initial.add_argument("--adot0", type=float, default=0.0)

    parser = argparse.ArgumentParser(prog="sepmotion", description="Separable expanding/collapsing elastic spheres.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a material model")
    p.set_defaults(func=cmd_validate)
    p = sub.add_parser("eigen", parents=[common], help="solve the radial eigenvalue problem")
    p.set_defaults(func=cmd_eigen)
    p = sub.add_parser("simulate", parents=[common, initial], help="integrate the amplitude and assemble the motion")
    p.add_argument("--solution", help="solution document written by 'eigen'")
    p.set_defaults(func=cmd_simulate)
    p = sub.add_parser("collapse-time", parents=[common, initial], help="collapse time from the energy quadrature")
    p.add_argument("--solution")
    p.add_argument("--h", type=float)
    p.add_argument("--mu", type=float)
    p.set_defaults(func=cmd_collapse_time)
    p = sub.add_parser("sweep", parents=[common], help="solve over a list of parameter values")
    p.add_argument("--param")
    p.add_argument("--values")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_IO if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ConstitutiveError as exc:
        print(f"error: constitutive failure: {exc}", file=sys.stderr)
        return EXIT_CONSTITUTIVE


if __name__ == "__main__":
    sys.exit(main())
