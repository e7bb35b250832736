import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sepmotion import dynamics as dyn
from sepmotion import motion as mo
from sepmotion.eigensolver import RadialProfile, picard_solve
from sepmotion.errors import DomainError, RegimeError
from sepmotion.operators import RadialGrid

from conftest import solved


def _motion(h, B, a0=1.0, adot0=0.0, horizon=100.0):
    model, sol = solved(h, B)
    tr = dyn.integrate(h, sol.mu, a0, adot0, horizon=horizon)
    return mo.assemble(model, sol, tr)


@pytest.fixture(scope="module")
def expanding():
    return _motion(-1.0, 100.0)


@pytest.fixture(scope="module")
def collapsing():
    return _motion(6.0, 1000.0)


def test_assemble_accepts_pipeline_output(expanding, collapsing):
    assert expanding.trajectory.regime == dyn.EXPANSION
    assert collapsing.trajectory.regime == dyn.COLLAPSE
    assert np.isfinite(collapsing.trajectory.tau)


def test_assemble_rejects_wrong_mu_sign():
    model, sol = solved(-1.0, 100.0)
    tr = dyn.integrate(-1.0, -sol.mu, horizon=10.0)
    with pytest.raises(RegimeError):
        mo.assemble(model, sol, tr)


def test_check_pairing_rejects_other_model():
    model6, _ = solved(6.0, 1000.0)
    _, sol = solved(-1.0, 100.0)
    with pytest.raises(RegimeError, match="mismatched eigenvalue"):
        mo.check_pairing(model6, sol)


def test_radius_series(expanding, collapsing):
    t, R = mo.radius_series(expanding)
    p = expanding.eigen.profile
    assert R[0] == pytest.approx(p.phi[-1]) and R[0] == pytest.approx(p.lambda2[-1])
    _, Rc = mo.radius_series(collapsing)
    assert Rc[-1] < 1e-5 * Rc[0]


def test_radius_growth_rate():
    m = _motion(-1.0, 100.0, horizon=1e4)
    t, R = mo.radius_series(m)
    limit = np.sqrt(2 * m.trajectory.E0) * m.eigen.profile.phi[-1]
    assert R[-1] / t[-1] == pytest.approx(limit, rel=1e-3)


def test_boundary_stress_vanishes(expanding, collapsing):
    for m in (expanding, collapsing):
        res = mo.boundary_stress_residual(m, m.trajectory.t)
        assert np.max(res) <= mo.BOUNDARY_STRESS_TOL


def test_boundary_stress_of_unsolved_profile(expanding):
    model, sol = expanding.model, expanding.eigen
    fp = picard_solve(model, 0.5 * sol.epsilon, R=sol.radius)
    fake = type(sol)(**{**sol.__dict__, "profile": fp.profile})
    m = mo.SeparableMotion(model, fake, expanding.trajectory)
    r0 = float(mo.boundary_stress_residual(m, 0.0))
    assert r0 > 1e-3
    t2 = 50.0
    a2, _ = expanding.trajectory.at(t2)
    assert float(mo.boundary_stress_residual(m, t2)) / r0 == pytest.approx(a2 ** (model.h - 1), rel=1e-12)


def test_boundary_density(expanding):
    s = mo.sample(expanding, 0.0, 1.0)
    assert s.material_density >= 0.5
    s = mo.sample(expanding, 100.0, 1.0)
    assert s.material_density >= 0.5


def test_robin_form(solved_case):
    _, sol = solved_case
    assert mo.robin_mismatch(sol) <= 1e-9


def test_identity_gradient():
    p = RadialProfile.from_zeta(RadialGrid(64), np.zeros(65))
    F = mo.deformation_gradient(p, 0.5, np.array([0.0, 0.6, 0.8]))
    np.testing.assert_allclose(F, np.eye(3), atol=1e-15)
    assert np.linalg.det(F) == pytest.approx(1.0)
    with pytest.raises(DomainError):
        mo.deformation_gradient(p, 0.5, np.array([1.0, 1.0, 0.0]))


def test_sample_rejects_outside_body(expanding):
    with pytest.raises(DomainError):
        mo.sample(expanding, 0.0, 1.5)


unit_vectors = st.tuples(st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1)).filter(
    lambda v: 0.1 < np.linalg.norm(v)
)


@settings(max_examples=50, deadline=None)
@given(i=st.integers(1, 2048), w=unit_vectors)
def test_determinant_two_routes(expanding, i, w):
    p = expanding.eigen.profile
    omega = np.array(w) / np.linalg.norm(w)
    r = i / p.grid.n
    F = mo.deformation_gradient(p, r, omega)
    l1, l2 = mo.stretches_at(p, r)
    assert np.linalg.det(F) == pytest.approx(l1 * l2 * l2, rel=1e-12)
    assert l1 * l2 * l2 == pytest.approx(p.v[i], rel=1e-14)


@settings(max_examples=50, deadline=None)
@given(t=st.floats(0.0, 100.0), w=unit_vectors, scale=st.floats(0.05, 1.0))
def test_velocity_is_self_similar(expanding, t, w, scale):
    y = scale * np.array(w) / np.linalg.norm(w)
    x, xdot = mo.position_velocity(expanding, t, y)
    a, adot = (float(q) for q in expanding.trajectory.at(t))
    np.testing.assert_allclose(xdot, (adot / a) * x, rtol=1e-12, atol=1e-15)
    assert np.linalg.norm(np.cross(x, y)) <= 1e-12 * np.linalg.norm(x)
