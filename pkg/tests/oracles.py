"""Independent reference computations used by the tests.

Nothing here imports the package: the shooting solver integrates the radial
equation directly as an initial value problem and tunes mu so that the
traction-free boundary relation holds at r = 1.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq


def _quadratic_terms(h, B, u):
    k = (h / 3) * (h / 3 - 1)
    x = u - 1.0
    f = 1.0 + 0.5 * B * x * x
    fp = B * x
    fpp = B
    ratio = B  # f'(u) / (u - 1)
    U1 = k * f + (2 * h / 3) * u * fp + u * u * fpp
    U2 = 2 * k * u * f + (h / 3 - 1) * u * u * fp + (2 * u * u + u**3) * ratio - u**3 * fpp
    return U1, U2, f, fp


def _shoot(h, B, mu, r0=1e-3, rtol=1e-12):
    """Integrate from a series start near r = 0; returns (lambda1(1), lambda2(1))."""
    k = (h / 3) * (h / 3 - 1)
    c = 3.0 * mu / (5.0 * (k + B))  # phi ~ r + c r^3 / 6 balances the equation at the origin

    def rhs(r, y):
        l2, w = y  # lambda2 = phi/r, w = lambda1 - lambda2
        l1 = l2 + w
        u = l1 / l2
        v = l1 * l2 * l2
        U1, U2, _, _ = _quadratic_terms(h, B, u)
        phi_pp = (mu * r * v ** (1 - h / 3) * u - U2 * w / r) / U1
        dl2 = w / r
        return [dl2, phi_pp - dl2]

    y0 = [1.0 + c * r0 * r0 / 6.0, c * r0 * r0 / 3.0]
    sol = solve_ivp(rhs, (r0, 1.0), y0, method="DOP853", rtol=rtol, atol=1e-14)
    l2, w = sol.y[:, -1]
    return l2 + w, l2


def shooting_boundary_residual(h, B, mu):
    l1, l2 = _shoot(h, B, mu)
    u = l1 / l2
    _, _, f, fp = _quadratic_terms(h, B, u)
    return (h / 3) * f + u * fp


def shooting_eigenvalue(h, B, mu_guess):
    """mu with g(u(1)) = 0, bracketed around ``mu_guess`` (sign taken from it)."""
    lo, hi = 0.5 * mu_guess, 1.5 * mu_guess
    if lo > hi:
        lo, hi = hi, lo
    return brentq(lambda m: shooting_boundary_residual(h, B, m), lo, hi, xtol=1e-14, rtol=1e-13)


def collapse_time_h6():
    """Collapse time for h = 6, mu = -1 from rest at a = 1 via the Beta function."""
    return math.sqrt(3) * math.gamma(1 / 6) * math.gamma(1 / 2) / (6 * math.gamma(2 / 3))


def u0_quadratic_h_minus1_B100():
    """Root of 250/3 x^2 + 100 x - 1/3 = 0 near zero, plus one."""
    a, b, c = 250.0 / 3.0, 100.0, -1.0 / 3.0
    x = (-b + math.sqrt(b * b - 4 * a * c)) / (2 * a)
    return 1.0 + x


def smooth_random_zeta(rng, r, terms=5, scale=0.05):
    """Random smooth grid function: a short cosine series in r."""
    coef = rng.normal(scale=scale, size=terms)
    return sum(c * np.cos(k * np.pi * r) for k, c in enumerate(coef))
