"""Model, solution, trajectory and motion documents.

Numbers are written with 17 significant digits (CSV) or Python's shortest
round-trip repr (JSON) so that identical inputs give byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from . import constitutive as cm
from .eigensolver import EigenSolution, RadialProfile
from .operators import RadialGrid

MODEL_KEYS = {"h", "f", "M"}
SHEAR_KEYS = {"kind", "params"}
SOLUTION_ARRAYS = ("zeta", "phi", "lambda1", "lambda2", "u", "v")


class DocumentError(ValueError):
    """A document is malformed or inconsistent."""


def fmt(x) -> str:
    return "%.17g" % x


def _number(doc, key, where):
    val = doc[key]
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise DocumentError(f"{where}: {key!r} must be a number, got {val!r}")
    return float(val)


# ---------------------------------------------------------------------------
# material model
# ---------------------------------------------------------------------------


def model_from_dict(doc) -> cm.MaterialModel:
    if not isinstance(doc, dict):
        raise DocumentError("model document must be an object")
    unknown = set(doc) - MODEL_KEYS
    missing = MODEL_KEYS - set(doc)
    if unknown:
        raise DocumentError(f"model document: unknown keys {sorted(unknown)}")
    if missing:
        raise DocumentError(f"model document: missing keys {sorted(missing)}")
    f = doc["f"]
    if not isinstance(f, dict) or set(f) != SHEAR_KEYS:
        raise DocumentError(f"model document: 'f' must have exactly the keys {sorted(SHEAR_KEYS)}")
    if not isinstance(f["params"], list) or not all(
        isinstance(p, (int, float)) and not isinstance(p, bool) for p in f["params"]
    ):
        raise DocumentError("model document: 'f.params' must be a list of numbers")
    try:
        shear = cm.make_shear(f["kind"], f["params"])
    except ValueError as exc:
        raise DocumentError(f"model document: {exc}") from None
    return cm.MaterialModel(_number(doc, "h", "model"), shear, _number(doc, "M", "model"))


def model_to_dict(model: cm.MaterialModel) -> dict:
    if model.f.kind not in cm.SHEAR_KINDS:
        raise DocumentError(f"shear function kind {model.f.kind!r} cannot be serialised")
    return {"h": model.h, "f": {"kind": model.f.kind, "params": model.f.params}, "M": model.M}


def load_model(path) -> cm.MaterialModel:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: not valid JSON ({exc})") from None
    return model_from_dict(doc)


# ---------------------------------------------------------------------------
# eigen solution
# ---------------------------------------------------------------------------


def solution_to_dict(sol: EigenSolution) -> dict:
    p = sol.profile
    doc = {
        "h": sol.h,
        "beta": sol.beta,
        "epsilon": sol.epsilon,
        "mu": sol.mu,
        "u0": sol.u0_target,
        "u_boundary": sol.u_boundary,
        "R": sol.radius,
        "grid_n": p.grid.n,
    }
    for name in SOLUTION_ARRAYS:
        doc[name] = [float(x) for x in getattr(p, name)]
    doc["residual_sup"] = sol.residual_sup
    doc["contraction_rate"] = sol.contraction_rate
    doc["iterations"] = sol.iterations
    doc["bracket"] = sol.bracket
    return doc


def solution_from_dict(doc) -> EigenSolution:
    required = {"h", "beta", "epsilon", "mu", "u0", "grid_n", *SOLUTION_ARRAYS, "residual_sup", "contraction_rate", "iterations"}
    missing = required - set(doc)
    if missing:
        raise DocumentError(f"solution document: missing keys {sorted(missing)}")
    n = int(doc["grid_n"])
    grid = RadialGrid(n)
    if len(doc["zeta"]) != n + 1:
        raise DocumentError(f"solution document: zeta has {len(doc['zeta'])} entries, expected {n + 1}")
    profile = RadialProfile.from_zeta(grid, np.array(doc["zeta"], dtype=float))
    for name in SOLUTION_ARRAYS[1:]:
        stored = np.asarray(doc[name], dtype=float)
        if stored.shape != profile.u.shape or not np.allclose(stored, getattr(profile, name), rtol=1e-12, atol=1e-14):
            raise DocumentError(f"solution document: {name!r} is inconsistent with zeta")
    return EigenSolution(
        epsilon=float(doc["epsilon"]),
        mu=float(doc["mu"]),
        profile=profile,
        u_boundary=float(profile.u[-1]),
        u0_target=float(doc["u0"]),
        residual_sup=float(doc["residual_sup"]),
        contraction_rate=float(doc["contraction_rate"]),
        iterations=int(doc["iterations"]),
        radius=float(doc.get("R", np.nan)),
        h=float(doc["h"]),
        beta=float(doc["beta"]),
        bracket=dict(doc.get("bracket", {})),
    )


def dump_json(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def load_solution(path) -> EigenSolution:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: not valid JSON ({exc})") from None
    return solution_from_dict(doc)


# ---------------------------------------------------------------------------
# CSV exports
# ---------------------------------------------------------------------------


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(x) if isinstance(x, (float, np.floating)) else x for x in row])
    return buf.getvalue()


def trajectory_csv(trajectory, radius_scale=None) -> str:
    """CSV "t,a,adot,E,radius"; radius is a(t) phi(1) when ``radius_scale`` = phi(1) is given."""
    rows = []
    for t, a, ad, E in zip(trajectory.t, trajectory.a, trajectory.adot, trajectory.energy):
        rows.append([float(t), float(a), float(ad), float(E), float(a * radius_scale) if radius_scale is not None else ""])
    return csv_text(["t", "a", "adot", "E", "radius"], rows)


def motion_samples_csv(samples) -> str:
    rows = [
        [s.t, s.r, s.position_magnitude, s.velocity_magnitude, s.material_density, s.spatial_density]
        for s in samples
    ]
    return csv_text(["t", "r", "pos", "vel", "rho_material", "rho_spatial"], rows)
