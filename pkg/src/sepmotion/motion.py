"""Separable motions x(t, y) = a(t) phi(|y|) y/|y| and their diagnostics."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.interpolate import CubicSpline

from . import constitutive as cm
from .dynamics import COLLAPSE, EXPANSION, ScaleTrajectory
from .eigensolver import EigenSolution, RadialProfile
from .errors import DomainError, RegimeError

BOUNDARY_STRESS_TOL = 1e-9


@dataclass
class MotionSample:
    t: float
    r: float
    position_magnitude: float
    velocity_magnitude: float
    material_density: float
    spatial_density: float


@dataclass
class SeparableMotion:
    model: cm.MaterialModel
    eigen: EigenSolution
    trajectory: ScaleTrajectory

    @cached_property
    def _phi(self):
        p = self.eigen.profile
        return CubicSpline(p.r, p.phi)

    @cached_property
    def _v(self):
        p = self.eigen.profile
        return CubicSpline(p.r, p.v)

    def phi(self, r):
        return self._phi(r)

    def v(self, r):
        return self._v(r)


def check_pairing(model, eigen: EigenSolution, rtol=1e-12):
    """Raise RegimeError unless ``eigen`` was computed for ``model`` with a consistent sign of mu."""
    h, mu = model.h, eigen.mu
    if eigen.h != h or not np.isclose(eigen.beta, model.beta, rtol=rtol, atol=0):
        raise RegimeError(f"mismatched eigenvalue: solution was computed for h = {eigen.h!r}, beta = {eigen.beta!r}")
    if not np.isclose(eigen.epsilon * (model.kappa + model.beta), mu, rtol=1e-9, atol=0):
        raise RegimeError(f"mismatched eigenvalue: mu = {mu!r} but eps (kappa + beta) = {eigen.epsilon * (model.kappa + model.beta)!r}")
    if mu == 0 or np.sign(mu) != -np.sign(h):
        raise RegimeError(f"regime inconsistency: sgn mu must equal -sgn h (h = {h!r}, mu = {mu!r})")


def assemble(model, eigen: EigenSolution, trajectory: ScaleTrajectory, rtol=1e-12) -> SeparableMotion:
    """Pair an eigen solution with a trajectory after checking they belong together."""
    check_pairing(model, eigen, rtol)
    h, mu = model.h, eigen.mu
    if trajectory.h != h or not np.isclose(trajectory.mu, mu, rtol=rtol, atol=0):
        raise RegimeError(f"mismatched eigenvalue: trajectory uses mu = {trajectory.mu!r}, solution has {mu!r}")
    expected = EXPANSION if h < 0 else COLLAPSE if h > 3 else None
    if expected is None or trajectory.regime != expected:
        raise RegimeError(f"regime inconsistency: h = {h!r} needs {expected}, trajectory is {trajectory.regime}")
    return SeparableMotion(model, eigen, trajectory)


def radius_series(motion: SeparableMotion):
    """(t, a(t) phi(1)) on the trajectory's samples."""
    tr = motion.trajectory
    return tr.t, tr.a * float(motion.eigen.profile.phi[-1])


def _check_r(r):
    r = np.asarray(r, dtype=float)
    if np.any(r < 0) or np.any(r > 1):
        raise DomainError("material radius must lie in [0, 1]")
    return r


def sample(motion: SeparableMotion, t: float, r: float) -> MotionSample:
    r = float(_check_r(r))
    a, adot = motion.trajectory.at(t)
    phi = float(motion.phi(r))
    v = float(motion.v(r))
    a, adot = float(a), float(adot)
    return MotionSample(float(t), r, a * phi, adot * phi, 1.0 / v, a**-3 / v)


def sample_grid(motion: SeparableMotion, times, radii):
    return [sample(motion, t, r) for t in times for r in radii]


def position_velocity(motion: SeparableMotion, t: float, y):
    """Spatial position and velocity 3-vectors of the material point y."""
    y = np.asarray(y, dtype=float)
    r = float(np.linalg.norm(y))
    _check_r(r)
    a, adot = (float(x) for x in motion.trajectory.at(t))
    if r == 0:
        return np.zeros(3), np.zeros(3)
    omega = y / r
    phi = float(motion.phi(r))
    return a * phi * omega, adot * phi * omega


def stretches_at(profile: RadialProfile, r):
    """(lambda1, lambda2) at material radius r, exact on grid nodes."""
    r = float(_check_r(r))
    idx = r * profile.grid.n
    if idx == round(idx):
        i = int(round(idx))
        return float(profile.lambda1[i]), float(profile.lambda2[i])
    return float(CubicSpline(profile.r, profile.lambda1)(r)), float(CubicSpline(profile.r, profile.lambda2)(r))


def deformation_gradient(profile: RadialProfile, r, omega):
    """F = lambda1 omega (x) omega + lambda2 (I - omega (x) omega)."""
    omega = np.asarray(omega, dtype=float)
    if omega.shape != (3,) or abs(np.linalg.norm(omega) - 1.0) > 1e-12:
        raise DomainError("omega must be a unit 3-vector")
    l1, l2 = stretches_at(profile, r)
    P1 = np.outer(omega, omega)
    return l1 * P1 + l2 * (np.eye(3) - P1)


def boundary_stress_residual(motion: SeparableMotion, t):
    """|S(D_y x) omega| on the boundary: a(t)^(h-1) |L_1(lambda(1))|."""
    a, _ = motion.trajectory.at(t)
    p = motion.eigen.profile
    L1 = cm.lagrangian_derivatives(motion.model, p.lambda1[-1], p.lambda2[-1]).L1
    return np.asarray(a, dtype=float) ** (motion.model.h - 1.0) * abs(float(L1))


def robin_mismatch(eigen: EigenSolution) -> float:
    """|D_r phi(1) - u0 phi(1)|; zero when the boundary ratio equals u0."""
    p = eigen.profile
    return abs(float(p.lambda1[-1]) - eigen.u0_target * float(p.phi[-1]))
