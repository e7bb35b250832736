"""Grid functions on [0, 1] and the Volterra operators of the radial problem.

The kernels 1/r^3 and 1/r^5 make naive cumulative quadrature lose accuracy
near the origin, so moments int_0^r rho^k zeta(rho) drho are computed by
product integration: zeta is interpolated by a piecewise cubic and each
panel integral of rho^k * cubic is evaluated exactly.  Weighted means
r^-(k+1) int_0^r rho^k zeta are then O(h^4) uniformly in r and take their
analytic limit zeta(0)/(k+1) at r = 0.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np
from scipy.integrate import simpson

from .errors import TubeViolation

_G4_NODES, _G4_WEIGHTS = np.polynomial.legendre.leggauss(4)


def _lagrange_cubic(t):
    """Cubic Lagrange basis on nodes 0, 1, 2, 3 evaluated at t; shape (..., 4)."""
    return np.stack(
        [
            -(t - 1) * (t - 2) * (t - 3) / 6.0,
            t * (t - 2) * (t - 3) / 2.0,
            -t * (t - 1) * (t - 3) / 2.0,
            t * (t - 1) * (t - 2) / 6.0,
        ],
        axis=-1,
    )


class RadialGrid:
    """Uniform nodes r_i = i/n, i = 0..n."""

    def __init__(self, n: int = 2048):
        n = int(n)
        if n < 4:
            raise ValueError("grid needs at least 4 panels")
        self.n = n
        self.r = np.arange(n + 1) / n
        self.spacing = 1.0 / n
        self._weights = {}

    def __repr__(self):
        return f"RadialGrid(n={self.n})"

    def __eq__(self, other):
        return isinstance(other, RadialGrid) and other.n == self.n

    def __hash__(self):
        return hash(self.n)

    @cached_property
    def _stencil(self):
        start = np.clip(np.arange(self.n) - 1, 0, self.n - 3)
        return start[:, None] + np.arange(4)

    def _panel_weights(self, k: int):
        if k not in self._weights:
            n, hgrid = self.n, self.spacing
            start = self._stencil[:, 0]
            # 4-point Gauss is exact for rho^k * cubic with k <= 4
            x = np.arange(n)[:, None] + 0.5 * (_G4_NODES[None, :] + 1.0)  # in units of h
            basis = _lagrange_cubic(x - start[:, None])  # (n, 4 gauss, 4 basis)
            wq = 0.5 * hgrid * _G4_WEIGHTS * (x * hgrid) ** k
            self._weights[k] = np.einsum("pq,pqj->pj", wq, basis)
        return self._weights[k]

    def cumulative_moment(self, values, k: int):
        """int_0^{r_i} rho^k g(rho) drho at every node."""
        values = np.asarray(values, dtype=float)
        panels = np.sum(self._panel_weights(k) * values[self._stencil], axis=1)
        out = np.empty(self.n + 1)
        out[0] = 0.0
        np.cumsum(panels, out=out[1:])
        return out

    def weighted_mean(self, values, k: int):
        """r^-(k+1) int_0^r rho^k g(rho) drho, with value g(0)/(k+1) at r = 0."""
        values = np.asarray(values, dtype=float)
        I = self.cumulative_moment(values, k)
        out = np.empty_like(I)
        out[0] = values[0] / (k + 1)
        out[1:] = I[1:] / self.r[1:] ** (k + 1)
        return out

    def integrate(self, values):
        """int_0^1 g(r) dr by composite Simpson."""
        return float(simpson(np.asarray(values, dtype=float), x=self.r))


def as_grid(grid) -> RadialGrid:
    return grid if isinstance(grid, RadialGrid) else RadialGrid(grid)


def apply_K(zeta, grid: RadialGrid):
    """phi(r) = r + int_0^r (r - rho) rho zeta(rho) drho."""
    r = grid.r
    return r + r**3 * (grid.weighted_mean(zeta, 1) - grid.weighted_mean(zeta, 2))


def apply_L(zeta, grid: RadialGrid):
    """L zeta = zeta + (2/r^3) int_0^r rho^2 zeta; (5/3) zeta(0) at the origin."""
    zeta = np.asarray(zeta, dtype=float)
    return zeta + 2.0 * grid.weighted_mean(zeta, 2)


def apply_L_inverse(eta, grid: RadialGrid):
    """L^-1 eta = eta - (2/r^5) int_0^r rho^4 eta; (3/5) eta(0) at the origin."""
    eta = np.asarray(eta, dtype=float)
    return eta - 2.0 * grid.weighted_mean(eta, 4)


def derived_fields(zeta, grid: RadialGrid, delta: float | None = None):
    """Stretches and (u, v) generated by zeta through phi = r + K zeta.

    Returns ``(lambda1, lambda2, u, v, mean2)`` where ``mean2`` is
    r^-3 int_0^r rho^2 zeta, so lambda1 - lambda2 = r^2 mean2 exactly.
    Raises TubeViolation if ``delta`` is given and |u - 1| > delta somewhere.
    """
    r2 = grid.r**2
    mean1 = grid.weighted_mean(zeta, 1)
    mean2 = grid.weighted_mean(zeta, 2)
    lambda1 = 1.0 + r2 * mean1
    gap = r2 * mean2
    lambda2 = lambda1 - gap
    if np.any(lambda2 <= 0) or np.any(lambda1 <= 0):
        raise TubeViolation("non-positive principal stretch")
    u = 1.0 + gap / lambda2
    v = lambda1 * lambda2 * lambda2
    if delta is not None:
        dev = float(np.max(np.abs(u - 1.0)))
        if dev > delta:
            raise TubeViolation(f"tube violation: max |u - 1| = {dev!r} > delta = {delta!r}")
    return lambda1, lambda2, u, v, mean2
