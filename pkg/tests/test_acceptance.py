"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line."""

import math
import time

import numpy as np
import pytest

from sepmotion import constitutive as cm
from sepmotion import dynamics as dyn
from sepmotion import motion as mo
from sepmotion.eigensolver import picard_solve, virial_sides
from sepmotion.operators import RadialGrid, apply_L, apply_L_inverse

from conftest import ACCEPTANCE_LINES, CASES, quadratic, solved
from oracles import collapse_time_h6, shooting_eigenvalue, smooth_random_zeta


def report(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_01_operator_suite():
    start = time.perf_counter()
    g = RadialGrid(2048)
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(20):
        z = smooth_random_zeta(rng, g.r)
        worst = max(worst, float(np.max(np.abs(apply_L_inverse(apply_L(z, g), g) - z))))
    const_err = 0.0
    for eps in (0.01, -0.05, 0.125):
        const_err = max(const_err, float(np.max(np.abs(apply_L_inverse(np.full(g.n + 1, eps), g) - 0.6 * eps))) / abs(eps))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-10 and const_err <= 1e-14 and elapsed < 1.0
    report(1, "operator round trip and L^-1(const)", ok, f"round trip {worst:.2e}, const rel {const_err:.1e}, {elapsed:.2f} s")


def test_02_contraction():
    model = quadratic(-1.0, 100.0)
    R = model.delta
    worst_rate, worst_it = 0.0, 0
    for eps in np.linspace(-R, R, 9):
        fp = picard_solve(model, eps, tol=1e-12, R=R)
        assert fp.final_diff <= 1e-12
        worst_rate = max(worst_rate, fp.contraction_rate)
        worst_it = max(worst_it, fp.iterations)
    zero = float(np.max(np.abs(picard_solve(model, 0.0).profile.zeta)))
    ok = worst_rate <= 0.1 and worst_it <= 30 and zero <= 1e-14
    report(2, "Picard contraction for h=-1, B=100", ok, f"rate {worst_rate:.3e}, iterations {worst_it}, |zeta(eps=0)| {zero:.1e}")


def test_03_eigen_vs_shooting():
    start = time.perf_counter()
    worst = 0.0
    for h, B in CASES:
        _, sol = solved(h, B)
        ref = shooting_eigenvalue(h, B, sol.mu)
        worst = max(worst, abs(sol.mu - ref) / abs(ref))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-6 and elapsed < 30.0
    report(3, "fixed-point mu vs shooting oracle", ok, f"max rel diff {worst:.2e}, {elapsed:.1f} s")


def test_04_boundary_and_signs():
    worst_g, ok = 0.0, True
    for h, B in CASES:
        model, sol = solved(h, B)
        g1 = abs(float(cm.boundary_g(model, sol.u_boundary)))
        worst_g = max(worst_g, g1)
        ok &= g1 <= 1e-10
        ok &= np.sign(sol.mu) == -np.sign(h)
        ok &= np.sign(sol.u_boundary - 1) == -np.sign(h)
        ok &= abs(sol.u_boundary - 1) <= abs(h) / model.beta
    report(4, "boundary relation and sign ledger", bool(ok), f"max |g(u(1))| {worst_g:.1e}")


def test_05_estimates():
    worst, ok = -np.inf, True
    for h, B in CASES:
        _, sol = solved(h, B)
        p, R = sol.profile, sol.radius
        r = p.r
        excess = max(
            float(np.max(np.abs(p.u - 1) - R * r**2)),
            float(np.max(np.abs(p.lambda1 - 1) - R * r**2)),
            float(np.max(np.abs(p.phi_second) - R * r)),
        )
        worst = max(worst, excess)
        ok &= excess <= 0.0
        i = slice(1, None)
        if sol.mu > 0:
            ok &= bool(np.all(p.lambda1[i] > p.lambda2[i]) and np.all(p.lambda2[i] > 1))
        else:
            ok &= bool(np.all(p.lambda1[i] < p.lambda2[i]) and np.all(p.lambda2[i] < 1))
    report(5, "pointwise estimates and monotonicity", bool(ok), f"largest excess over bounds {worst:.1e}")


def test_06_virial():
    worst, ok = 0.0, True
    for h, B in CASES:
        model, sol = solved(h, B)
        lhs, rhs = virial_sides(sol, model)
        rel = abs(lhs - rhs) / max(abs(lhs), abs(rhs))
        worst = max(worst, rel)
        ok &= rel <= 1e-6 and -h * sol.mu >= 0
    report(6, "virial identity and -h mu >= 0", bool(ok), f"max rel mismatch {worst:.1e}")


def test_07_dynamics():
    short = dyn.integrate(-1.0, 1.0, 1.0, 0.0, horizon=100.0)
    long = dyn.integrate(-1.0, 1.0, 1.0, 0.0, horizon=1e4)
    tail = long.expansion_tail()
    ok = (
        short.energy_drift <= 1e-9
        and tail["positive"]
        and tail["decreasing"]
        and tail["final_gap"] < 1e-3
        and tail["limit"] == pytest.approx(math.sqrt(2), rel=1e-15)
    )
    report(7, "energy drift and expansion gap", ok, f"drift {short.energy_drift:.1e}, gap at 1e4 {tail['final_gap']:.2e}")


def test_08_collapse_time():
    start = time.perf_counter()
    tq = dyn.collapse_time_quadrature(6.0, -1.0, 1.0, 0.0)
    oracle = collapse_time_h6()
    tode = dyn.integrate(6.0, -1.0, 1.0, 0.0).tau
    tq2 = dyn.collapse_time_quadrature(6.0, -1.0, 1.0, 1.0)
    tode2 = dyn.integrate(6.0, -1.0, 1.0, 1.0).tau
    elapsed = time.perf_counter() - start
    r0 = abs(tq - oracle) / oracle
    r1 = abs(tode - tq) / tq
    r2 = abs(tode2 - tq2) / tq2
    ok = r0 <= 1e-10 and r1 <= 1e-6 and r2 <= 1e-6 and elapsed < 5.0
    report(8, "collapse time, quadrature vs Beta oracle vs ODE", ok, f"tau {tq:.10f}, rel {r0:.0e}/{r1:.0e}/{r2:.0e}, {elapsed:.2f} s")


def test_09_constitutive_identities():
    rng = np.random.default_rng(99)
    worst = [0.0, 0.0, 0.0]
    for _ in range(100):
        h = rng.uniform(-10, -0.1) if rng.random() < 0.5 else rng.uniform(3.1, 12)
        model = quadratic(h, rng.uniform(1, 100))
        a = rng.uniform(0.2, 5.0)
        d = cm.lagrangian_derivatives(model, a, a)
        worst[0] = max(worst[0], abs(d.L1 - 0.5 * d.L2) / max(1.0, abs(d.L1)))
        _, _, disc = cm.invariants_and_discriminant(u=rng.uniform(0.2, 5.0))
        worst[1] = max(worst[1], abs(disc))
        worst[2] = max(worst[2], abs(float(cm.null_lagrangian_U1(h, rng.uniform(-3, 3), rng.uniform(0.5, 2.0)))))
    model = quadratic(-1.0, 100.0)
    U1, _ = cm.coefficients_U(model, 1.0)
    bulk, shear = cm.moduli(model)
    mod_ok = abs(U1 - (bulk + 4 / 3 * shear)) <= 1e-12 * U1
    ok = worst[0] <= 1e-12 and worst[1] <= 1e-12 and worst[2] <= 1e-12 and mod_ok
    report(9, "constitutive identities", ok, "max residuals " + ", ".join(f"{w:.1e}" for w in worst))


def test_10_vacuum_boundary():
    ok, worst_stress, densities = True, 0.0, []
    for h, B in CASES:
        model, sol = solved(h, B)
        tr = dyn.integrate(h, sol.mu, 1.0, 0.0, horizon=100.0)
        m = mo.assemble(model, sol, tr)
        stress = float(np.max(mo.boundary_stress_residual(m, tr.t)))
        worst_stress = max(worst_stress, stress)
        ok &= stress <= 1e-9
        if h < 0:
            rho = min(mo.sample(m, t, 1.0).material_density for t in tr.t)
            ok &= rho >= 0.5
        else:
            rho = mo.sample(m, 0.0, 1.0).material_density
            ok &= 1.0 <= rho <= 2.0
        densities.append(rho)
    report(10, "traction-free boundary with positive density", bool(ok), f"max stress {worst_stress:.1e}, boundary densities {', '.join(f'{d:.4f}' for d in densities)}")
