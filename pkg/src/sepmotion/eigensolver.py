"""Radial nonlinear eigenvalue problem.

With phi = r + K zeta the radial equation becomes the fixed-point problem

    zeta = L^-1 F(zeta, mu),
    F(zeta, mu) = V1(u) r^-3 int_0^r rho^2 zeta + eps v^(1 - h/3) V2(u),
    eps = mu / (kappa + beta),

which is a contraction on the ball ||zeta|| < R for |eps| <= R.  The
eigenvalue is the eps for which the boundary ratio u(1) hits the root u0
of g, located by bisection over [-R, R].
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from . import constitutive as cm
from .errors import BracketFailure, DivergenceError, DomainError, MaxIterationsError, SepMotionError
from .operators import RadialGrid, apply_K, apply_L_inverse, as_grid, derived_fields

log = logging.getLogger(__name__)

TARGET_RATE = 0.1
OPERATOR_NORM_BOUND = 7.0 / 5.0  # a priori bound on ||L^-1||
BOUNDARY_TOL = 1e-10


@dataclass
class RadialProfile:
    grid: RadialGrid
    zeta: np.ndarray
    phi: np.ndarray
    lambda1: np.ndarray
    lambda2: np.ndarray
    u: np.ndarray
    v: np.ndarray
    mean2: np.ndarray = field(repr=False)

    @classmethod
    def from_zeta(cls, grid, zeta, delta=None):
        grid = as_grid(grid)
        zeta = np.asarray(zeta, dtype=float)
        if zeta.shape != grid.r.shape:
            raise ValueError(f"zeta has shape {zeta.shape}, grid needs {grid.r.shape}")
        l1, l2, u, v, mean2 = derived_fields(zeta, grid, delta)
        return cls(grid, zeta, grid.r * l2, l1, l2, u, v, mean2)

    @property
    def r(self):
        return self.grid.r

    @property
    def phi_second(self):
        return self.grid.r * self.zeta


@dataclass
class FixedPoint:
    profile: RadialProfile
    epsilon: float
    contraction_rate: float
    iterations: int
    final_diff: float


@dataclass
class EigenSolution:
    epsilon: float
    mu: float
    profile: RadialProfile
    u_boundary: float
    u0_target: float
    residual_sup: float
    contraction_rate: float
    iterations: int
    radius: float
    h: float
    beta: float
    bracket: dict = field(default_factory=dict)

    @property
    def grid_n(self):
        return self.profile.grid.n


def rhs_F(zeta, epsilon, model, grid, profile=None):
    """Right-hand side F(zeta, mu) of L zeta = F."""
    if profile is None:
        profile = RadialProfile.from_zeta(grid, zeta, model.delta)
    V1, V2 = cm.coefficients_V(model, profile.u)
    return V1 * profile.mean2 + epsilon * profile.v ** (1.0 - model.h / 3.0) * V2


def picard_solve(model, epsilon, grid=2048, tol=1e-12, R=None, zeta0=None, max_iter=200):
    """Fixed point of zeta -> L^-1 F(zeta, mu) by Picard iteration.

    The contraction rate reported is the largest ratio of successive
    sup-norm differences, ignoring differences at rounding level.
    """
    grid = as_grid(grid)
    epsilon = float(epsilon)
    if R is not None and abs(epsilon) > R * (1 + 1e-12):
        raise DomainError(f"|epsilon| = {abs(epsilon)!r} exceeds the contraction radius R = {R!r}")
    zeta = np.full(grid.n + 1, 0.6 * epsilon) if zeta0 is None else np.array(zeta0, dtype=float)
    profile = RadialProfile.from_zeta(grid, zeta, model.delta)
    prev = None
    growth = 0
    rate = 0.0
    for it in range(1, max_iter + 1):
        new = apply_L_inverse(rhs_F(zeta, epsilon, model, grid, profile), grid)
        diff = float(np.max(np.abs(new - zeta)))
        zeta = new
        profile = RadialProfile.from_zeta(grid, zeta, model.delta)
        floor = 1e3 * np.finfo(float).eps * max(float(np.max(np.abs(zeta))), 1e-300)
        if prev is not None and prev > 0 and diff > floor:
            rate = max(rate, diff / prev)
            if diff > prev and diff > tol:
                growth += 1
                if growth >= 3:
                    raise DivergenceError(
                        f"Picard differences grew 3 times in a row at eps = {epsilon!r} (last {diff!r})"
                    )
            else:
                growth = 0
        if diff <= tol:
            return FixedPoint(profile, epsilon, rate, it, diff)
        prev = diff
    raise MaxIterationsError(f"no convergence in {max_iter} sweeps at eps = {epsilon!r} (last diff {diff!r})")


def ode_residual(profile: RadialProfile, model, mu: float) -> float:
    """sup over interior nodes of |U1 phi'' + U2 (phi' - phi/r)/r - mu r v^(1-h/3) u|."""
    r = profile.r[1:-1]
    u = profile.u[1:-1]
    U1, U2 = cm.coefficients_U(model, u, check=False)
    lhs = U1 * r * profile.zeta[1:-1] + U2 * r * profile.mean2[1:-1]
    rhs = mu * r * profile.v[1:-1] ** (1.0 - model.h / 3.0) * u
    return float(np.max(np.abs(lhs - rhs))) if r.size else 0.0


def select_radius(model, grid, tol=1e-12, max_halvings=8):
    """Largest R = delta / 2^k for which Picard contracts at rate <= 1/10 at eps = +-R."""
    R = model.delta
    last_error = None
    for _ in range(max_halvings + 1):
        try:
            plus = picard_solve(model, R, grid, tol, R=R)
            minus = picard_solve(model, -R, grid, tol, R=R)
        except SepMotionError as exc:
            last_error = exc
            log.debug("R = %r rejected: %s", R, exc)
        else:
            if max(plus.contraction_rate, minus.contraction_rate) <= TARGET_RATE:
                return R, plus, minus
            last_error = DivergenceError(
                f"contraction rate {max(plus.contraction_rate, minus.contraction_rate)!r} > 1/10 at R = {R!r}"
            )
        R *= 0.5
    raise DivergenceError(f"no contraction radius found after {max_halvings} halvings: {last_error}")


def eigenvalue_solve(model, grid=2048, tol_picard=1e-12, tol_eps=1e-12) -> EigenSolution:
    """Eigenvalue mu for which the radial profile satisfies g(u(1)) = 0."""
    grid = as_grid(grid)
    u0 = cm.find_u0(model)  # raises InsufficientShear
    target = u0 - 1.0
    R, plus, minus = select_radius(model, grid, tol_picard)

    def z(fp):
        return float(fp.profile.u[-1]) - 1.0

    z_plus, z_minus = z(plus), z(minus)
    bracket = {
        "R": R,
        "z_plus": z_plus,
        "z_minus": z_minus,
        "target": target,
        # sufficient condition used in the existence proof; reported, not enforced
        "beta_ge_7h_over_R": bool(model.beta >= 7 * abs(model.h) / R),
        "chain_holds": bool(z_plus > R / 7 > target > -R / 7 > z_minus),
    }
    if not (z_minus < target < z_plus):
        raise BracketFailure(
            f"bracket failure: z(-R) = {z_minus!r}, z(+R) = {z_plus!r} do not straddle u0 - 1 = {target!r}",
            z_minus,
            z_plus,
            target,
        )

    lo, hi = (-R, minus), (R, plus)
    while hi[0] - lo[0] > tol_eps:
        mid_eps = 0.5 * (lo[0] + hi[0])
        if mid_eps in (lo[0], hi[0]):
            break
        mid = picard_solve(model, mid_eps, grid, tol_picard, R=R)
        if z(mid) < target:
            lo = (mid_eps, mid)
        else:
            hi = (mid_eps, mid)

    # one secant step inside the final bracket, kept only if it improves the boundary match
    candidates = [lo[1], hi[1]]
    zl, zh = z(lo[1]) - target, z(hi[1]) - target
    if zh != zl:
        eps_s = lo[0] - zl * (hi[0] - lo[0]) / (zh - zl)
        if lo[0] <= eps_s <= hi[0]:
            candidates.append(picard_solve(model, eps_s, grid, tol_picard, R=R))
    best = min(candidates, key=lambda fp: abs(z(fp) - target))

    eps = best.epsilon
    mu = eps * (model.kappa + model.beta)
    return EigenSolution(
        epsilon=eps,
        mu=mu,
        profile=best.profile,
        u_boundary=float(best.profile.u[-1]),
        u0_target=u0,
        residual_sup=ode_residual(best.profile, model, mu),
        contraction_rate=best.contraction_rate,
        iterations=best.iterations,
        radius=R,
        h=model.h,
        beta=model.beta,
        bracket=bracket,
    )


@dataclass
class VerificationReport:
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(status != "fail" for status, _ in self.checks.values())

    @property
    def failures(self):
        return [f"{name}: {detail}" for name, (status, detail) in self.checks.items() if status == "fail"]

    def lines(self):
        for name, (status, detail) in self.checks.items():
            yield f"[{status.upper()}] {name}: {detail}"


def virial_sides(solution: EigenSolution, model):
    """(mu int phi^2 r^2 dr, -h int L(lambda) r^2 dr) on the solution grid."""
    p = solution.profile
    r2 = p.r**2
    L = cm.lagrangian_derivatives(model, p.lambda1, p.lambda2).L
    return solution.mu * p.grid.integrate(p.phi**2 * r2), -model.h * p.grid.integrate(L * r2)


def verify_solution(solution: EigenSolution, model, boundary_tol=BOUNDARY_TOL, virial_rtol=1e-6):
    p = solution.profile
    r = p.r
    R = solution.radius
    mu = solution.mu
    checks = {}
    slack = 1e-15

    g1 = float(cm.boundary_g(model, solution.u_boundary))
    bc_ok = abs(g1) <= boundary_tol
    checks["boundary condition |g(u(1))|"] = ("pass" if bc_ok else "fail", f"{abs(g1):.3e} (tol {boundary_tol:.0e})")

    worst = max(
        float(np.max(np.abs(p.lambda2 - 1) - R * r**2)),
        float(np.max(np.abs(p.lambda1 - 1) - R * r**2)),
        float(np.max(np.abs(p.u - 1) - R * r**2)),
        float(np.max(np.abs(p.phi_second) - R * r)),
    )
    checks["estimates |.-1| <= R r^2, |phi''| <= R r"] = (
        "pass" if worst <= slack else "fail",
        f"largest excess {worst:.3e}",
    )

    inner = slice(1, None)
    if mu > 0:
        mono = bool(np.all(p.lambda1[inner] > p.lambda2[inner]) and np.all(p.lambda2[inner] > 1))
        checks["monotonicity"] = ("pass" if mono else "fail", "lambda1 > lambda2 > 1 on (0,1]")
    elif mu < 0:
        mono = bool(np.all(p.lambda1[inner] < p.lambda2[inner]) and np.all(p.lambda2[inner] < 1))
        checks["monotonicity"] = ("pass" if mono else "fail", "lambda1 < lambda2 < 1 on (0,1]")
    else:
        checks["monotonicity"] = ("n/a", "mu = 0")

    if bc_ok:
        lhs, rhs = virial_sides(solution, model)
        rel = abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)
        checks["virial identity"] = ("pass" if rel <= virial_rtol else "fail", f"relative mismatch {rel:.3e}")
    else:
        checks["virial identity"] = ("n/a", "boundary condition not satisfied, identity does not apply")

    checks["-h mu >= 0"] = ("pass" if -model.h * mu >= 0 else "fail", f"-h mu = {-model.h * mu!r}")

    s1 = np.sign(solution.u_boundary - 1.0)
    checks["sgn(u(1) - 1) = sgn mu"] = (
        "pass" if s1 == np.sign(mu) else "fail",
        f"u(1) - 1 = {solution.u_boundary - 1.0:.3e}, mu = {mu!r}",
    )
    return VerificationReport(checks)


def trivial_solution(model, grid=2048) -> EigenSolution:
    """The mu = 0 solution phi(r) = r; it never meets the boundary condition since g(1) = h/3."""
    grid = as_grid(grid)
    profile = RadialProfile.from_zeta(grid, np.zeros(grid.n + 1))
    return EigenSolution(0.0, 0.0, profile, 1.0, float("nan"), 0.0, 0.0, 0, model.delta, model.h, model.beta)


__all__ = [
    "RadialProfile",
    "EigenSolution",
    "FixedPoint",
    "VerificationReport",
    "apply_K",
    "rhs_F",
    "picard_solve",
    "ode_residual",
    "select_radius",
    "eigenvalue_solve",
    "verify_solution",
    "virial_sides",
    "trivial_solution",
]
