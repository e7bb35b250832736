"""Scale-invariant isotropic strain energy restricted to radial deformations.

On spherically symmetric gradients F(lambda, omega) the strain energy reduces to

    L(lambda1, lambda2) = v**(h/3) * f(u),   v = lambda1*lambda2**2,  u = lambda1/lambda2,

so a material is described by the homogeneity exponent ``h`` and a scalar
shear function ``f``.  Everything in this module is a pure function of
``(h, f, M)`` and is vectorised over ``u`` where that makes sense.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import CoercivityError, ConstitutiveError, DomainError, InsufficientShear

# f'(u)/(u-1) is integrated with a fixed Gauss rule; see q_ratio.
_GAUSS_NODES, _GAUSS_WEIGHTS = np.polynomial.legendre.leggauss(8)
_GAUSS_NODES = 0.5 * (_GAUSS_NODES + 1.0)
_GAUSS_WEIGHTS = 0.5 * _GAUSS_WEIGHTS

CLASS_RADIUS = 0.125
BOUNDARY_CURVE_TOL = 1e-12


# ---------------------------------------------------------------------------
# shear functions
# ---------------------------------------------------------------------------


class ShearFunction:
    """Closed-form shear function f(u) together with its first three derivatives."""

    kind = "abstract"

    def __call__(self, u):
        return self.deriv(u, 0)

    def deriv(self, u, order):
        raise NotImplementedError

    @property
    def params(self) -> list[float]:
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(repr(p) for p in self.params)})"


class QuadraticShear(ShearFunction):
    """f_B(u) = 1 + B/2 (u - 1)**2, the canonical member of C(0)."""

    kind = "quadratic"

    def __init__(self, B: float):
        self.B = float(B)

    @property
    def params(self):
        return [self.B]

    def deriv(self, u, order):
        u = np.asarray(u, dtype=float)
        d = u - 1.0
        if order == 0:
            return 1.0 + 0.5 * self.B * d * d
        if order == 1:
            return self.B * d
        if order == 2:
            return np.full_like(u, self.B)
        if order == 3:
            return np.zeros_like(u)
        raise ValueError(f"unsupported derivative order {order}")


class PolynomialShear(ShearFunction):
    """f(u) = sum_k c_k (u - 1)**k with coefficients listed from k = 0."""

    kind = "poly"

    def __init__(self, coeffs):
        coeffs = [float(c) for c in coeffs]
        if not coeffs:
            raise ValueError("polynomial shear function needs at least one coefficient")
        self.coeffs = coeffs
        self._poly = np.polynomial.Polynomial(coeffs)

    @property
    def params(self):
        return list(self.coeffs)

    def deriv(self, u, order):
        if order > 3:
            raise ValueError(f"unsupported derivative order {order}")
        u = np.asarray(u, dtype=float)
        p = self._poly.deriv(order) if order else self._poly
        return p(u - 1.0) + 0.0 * u


def _power_deriv(u, p, order):
    """d^order/du^order of u**p."""
    coef = 1.0
    for j in range(order):
        coef *= p - j
    return coef * u ** (p - order)


def h1_of_u(u, order=0):
    """First shear invariant along radial gradients, (u^(2/3) + 2u^(-1/3))/3."""
    u = np.asarray(u, dtype=float)
    return (_power_deriv(u, 2.0 / 3.0, order) + 2.0 * _power_deriv(u, -1.0 / 3.0, order)) / 3.0


def h2_of_u(u, order=0):
    """Second shear invariant along radial gradients, (u^(-2/3) + 2u^(1/3))/3."""
    u = np.asarray(u, dtype=float)
    return (_power_deriv(u, -2.0 / 3.0, order) + 2.0 * _power_deriv(u, 1.0 / 3.0, order)) / 3.0


class TwoInvariantShear(ShearFunction):
    """Restriction of W(Sigma) = 1 + c1 (H1 - 1) + c2 (H2 - 1) to radial gradients.

    With l1 = h1 - 1 and l2 = h1 - h2 this is f = 1 + (c1 + c2) l1 - c2 l2,
    so beta = f''(1) = (2/9)(c1 + c2).
    """

    kind = "two-invariant"

    def __init__(self, c1: float, c2: float):
        self.c1 = float(c1)
        self.c2 = float(c2)

    @property
    def params(self):
        return [self.c1, self.c2]

    def deriv(self, u, order):
        if order > 3:
            raise ValueError(f"unsupported derivative order {order}")
        u = np.asarray(u, dtype=float)
        a = h1_of_u(u, order)
        b = h2_of_u(u, order)
        base = 1.0 if order == 0 else 0.0
        # 1 + c1 (h1 - 1) + c2 (h2 - 1)
        shift = -(self.c1 + self.c2) if order == 0 else 0.0
        return base + shift + self.c1 * a + self.c2 * b


class ShiftedShear(ShearFunction):
    """f + f0 where f0 is the radial null Lagrangian of degree h.

    Not representable in a model document; used to check that the radial
    equation ignores null-Lagrangian additions.
    """

    kind = "shifted"

    def __init__(self, base: ShearFunction, h: float, c0: float):
        self.base = base
        self.h = float(h)
        self.c0 = float(c0)

    @property
    def params(self):
        return [*self.base.params, self.h, self.c0]

    def deriv(self, u, order):
        return self.base.deriv(u, order) + null_lagrangian_shift(self.h, self.c0, u, order)


SHEAR_KINDS = {
    "quadratic": (QuadraticShear, 1),
    "two-invariant": (TwoInvariantShear, 2),
    "poly": (PolynomialShear, None),
}


def make_shear(kind: str, params) -> ShearFunction:
    try:
        cls, nparams = SHEAR_KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown shear function kind {kind!r}; expected one of {sorted(SHEAR_KINDS)}")
    params = list(params)
    if nparams is not None and len(params) != nparams:
        raise ValueError(f"kind {kind!r} takes {nparams} parameter(s), got {len(params)}")
    if nparams is None:
        return cls(params)
    return cls(*params)


# ---------------------------------------------------------------------------
# material model
# ---------------------------------------------------------------------------


def kappa(h: float) -> float:
    """Bulk-modulus factor (h/3)(h/3 - 1)."""
    return (h / 3.0) * (h / 3.0 - 1.0)


def _inv8(x: float) -> float:
    return np.inf if x == 0 else 1.0 / (8.0 * abs(x))


@dataclass(frozen=True)
class MaterialModel:
    h: float
    f: ShearFunction
    M: float = 0.0

    @property
    def kappa(self) -> float:
        return kappa(self.h)

    @property
    def beta(self) -> float:
        return float(self.f.deriv(1.0, 2))

    @property
    def delta(self) -> float:
        """Half-width of the interval U(delta) on which the coefficients are controlled."""
        return min(CLASS_RADIUS, _inv8(self.h), _inv8(self.M))

    def with_shear(self, f: ShearFunction) -> "MaterialModel":
        return MaterialModel(self.h, f, self.M)


def smallest_M(f: ShearFunction, samples: int = 10_000) -> float:
    """Smallest M with sup |f'''| <= M beta on |u - 1| <= 1/8, by uniform sampling."""
    beta = float(f.deriv(1.0, 2))
    if beta <= 0:
        return np.inf
    u = np.linspace(1.0 - CLASS_RADIUS, 1.0 + CLASS_RADIUS, samples)
    return float(np.max(np.abs(f.deriv(u, 3)))) / beta


@dataclass
class ValidationReport:
    h: float
    kappa: float
    beta: float
    delta: float
    M: float
    M_sampled: float
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(passed for passed, _ in self.checks.values())

    @property
    def violations(self) -> list[str]:
        return [msg for passed, msg in self.checks.values() if not passed]

    def raise_if_failed(self):
        if not self.ok:
            raise ConstitutiveError("; ".join(self.violations))

    def lines(self):
        yield f"h = {self.h!r}"
        yield f"kappa = {self.kappa!r}"
        yield f"beta = {self.beta!r}"
        yield f"delta = {self.delta!r}"
        yield f"M = {self.M!r} (smallest sampled M = {self.M_sampled!r})"
        for name, (passed, msg) in self.checks.items():
            yield f"[{'PASS' if passed else 'FAIL'}] {name}" + ("" if passed else f": {msg}")


def validate_model(model: MaterialModel, samples: int = 10_000, atol: float = 1e-12) -> ValidationReport:
    """Check membership of ``model`` in the admissible class C(M) with kappa(h) > 0."""
    f = model.f
    k = model.kappa
    beta = model.beta
    f1 = float(f(1.0))
    df1 = float(f.deriv(1.0, 1))
    m_sampled = smallest_M(f, samples)

    checks = {
        "kappa(h) > 0": (k > 0, f"kappa(h) <= 0 (h = {model.h!r} lies in [0, 3])"),
        "f(1) = 1": (abs(f1 - 1.0) <= atol, f"f(1) != 1 (f(1) = {f1!r})"),
        "f'(1) = 0": (abs(df1) <= atol, f"f'(1) != 0 (f'(1) = {df1!r})"),
        "beta > 0": (beta > 0, f"beta <= 0 (f''(1) = {beta!r})"),
        "sup|f'''| <= M beta": (
            model.M >= 0 and beta > 0 and m_sampled <= model.M * (1 + 1e-12),
            f"sup|f'''| > M beta on |u-1| <= 1/8 (needs M >= {m_sampled!r}, got {model.M!r})",
        ),
    }
    return ValidationReport(model.h, k, beta, model.delta, model.M, m_sampled, checks)


# ---------------------------------------------------------------------------
# coefficient functions
# ---------------------------------------------------------------------------


def q_ratio(model: MaterialModel, u):
    """f'(u)/(u-1) as the mean of f'' over [1, u]; equals beta at u = 1."""
    u = np.asarray(u, dtype=float)
    s = _GAUSS_NODES.reshape((-1,) + (1,) * u.ndim)
    w = _GAUSS_WEIGHTS.reshape((-1,) + (1,) * u.ndim)
    return np.sum(w * model.f.deriv(1.0 + s * (u - 1.0), 2), axis=0)


def _check_interval(model, u, what):
    dev = np.max(np.abs(np.asarray(u, dtype=float) - 1.0)) if np.size(u) else 0.0
    if dev > model.delta * (1 + 1e-12):
        raise DomainError(f"{what}: |u - 1| = {dev!r} exceeds delta = {model.delta!r}")


def coefficients_U(model: MaterialModel, u, check: bool = True):
    """Coefficients (U1, U2) of the radial equation in terms of u."""
    if check:
        _check_interval(model, u, "coefficients_U")
    u = np.asarray(u, dtype=float)
    h, k, f = model.h, model.kappa, model.f
    f0, f1, f2 = f(u), f.deriv(u, 1), f.deriv(u, 2)
    u2 = u * u
    U1 = k * f0 + (2.0 * h / 3.0) * u * f1 + u2 * f2
    U2 = 2.0 * k * u * f0 + (h / 3.0 - 1.0) * u2 * f1 + (2.0 * u2 + u2 * u) * q_ratio(model, u) - u2 * u * f2
    return U1, U2


def coefficients_V(model: MaterialModel, u, check: bool = True):
    """Normalised coefficients V1 = (2U1 - U2)/U1 and V2 = (kappa + beta) u / U1."""
    U1, U2 = coefficients_U(model, u, check=check)
    if np.any(U1 <= 0):
        raise CoercivityError(f"U1(u) <= 0 (min {np.min(U1)!r})")
    V1 = (2.0 * U1 - U2) / U1
    V2 = (model.kappa + model.beta) * np.asarray(u, dtype=float) / U1
    return V1, V2


def boundary_g(model: MaterialModel, u):
    """Vacuum boundary function g(u) = (h/3) f(u) + u f'(u)."""
    u = np.asarray(u, dtype=float)
    return (model.h / 3.0) * model.f(u) + u * model.f.deriv(u, 1)


def find_u0(model: MaterialModel, tol: float = 1e-14) -> float:
    """Unique root of g in |u - 1| <= |h|/beta, by bisection."""
    beta = model.beta
    if beta <= 0 or abs(model.h) / beta >= model.delta:
        raise InsufficientShear(
            f"shear modulus too small: |h|/beta = {abs(model.h) / beta if beta > 0 else np.inf!r} "
            f">= delta = {model.delta!r}"
        )
    half = abs(model.h) / beta
    lo, hi = 1.0 - half, 1.0 + half
    glo, ghi = float(boundary_g(model, lo)), float(boundary_g(model, hi))
    if glo == 0:
        return lo
    if ghi == 0:
        return hi
    if glo > 0 or ghi < 0:
        raise ConstitutiveError(f"g does not change sign on U(|h|/beta): g(lo) = {glo!r}, g(hi) = {ghi!r}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        gm = float(boundary_g(model, mid))
        if gm == 0:
            return mid
        if gm < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# restricted energy and stresses
# ---------------------------------------------------------------------------


class LagrangianDerivatives(NamedTuple):
    L: object
    L1: object
    L2: object
    L11: object
    L12: object


def lagrangian_derivatives(model: MaterialModel, lambda1, lambda2) -> LagrangianDerivatives:
    """Restricted energy L(lambda) = v^(h/3) f(u) and its partials."""
    l1 = np.asarray(lambda1, dtype=float)
    l2 = np.asarray(lambda2, dtype=float)
    if np.any(l1 <= 0) or np.any(l2 <= 0):
        raise DomainError("principal stretches must be positive")
    h, f = model.h, model.f
    v = l1 * l2 * l2
    u = l1 / l2
    f0, f1, f2 = f(u), f.deriv(u, 1), f.deriv(u, 2)
    a1 = v ** ((h - 1.0) / 3.0) * u ** (-2.0 / 3.0)
    a2 = v ** ((h - 2.0) / 3.0)
    L = v ** (h / 3.0) * f0
    L1 = a1 * ((h / 3.0) * f0 + u * f1)
    L2 = a1 * ((2.0 * h / 3.0) * u * f0 - u * u * f1)
    L11 = a2 * u ** (-4.0 / 3.0) * (model.kappa * f0 + (2.0 * h / 3.0) * u * f1 + u * u * f2)
    L12 = a2 * u ** (-1.0 / 3.0) * (2.0 * (h / 3.0) ** 2 * f0 + (h / 3.0 - 1.0) * u * f1 - u * u * f2)
    return LagrangianDerivatives(L, L1, L2, L11, L12)


class StressEigenvalues(NamedTuple):
    piola: tuple
    cauchy: tuple


def stress_eigenvalues(model: MaterialModel, lambda1, lambda2) -> StressEigenvalues:
    """Piola and Cauchy eigenvalues on span{omega} and its orthogonal complement."""
    d = lagrangian_derivatives(model, lambda1, lambda2)
    l1 = np.asarray(lambda1, dtype=float)
    l2 = np.asarray(lambda2, dtype=float)
    v = l1 * l2 * l2
    return StressEigenvalues((d.L1, 0.5 * d.L2), (l1 * d.L1 / v, 0.5 * l2 * d.L2 / v))


def residual_pressure(model: MaterialModel, alpha=1.0):
    """P(alpha) = -(h/3) f(1) alpha^(h-3); P(1) is the residual pressure."""
    return -(model.h / 3.0) * float(model.f(1.0)) * np.asarray(alpha, dtype=float) ** (model.h - 3.0)


class Moduli(NamedTuple):
    bulk: float
    shear: float


def moduli(model: MaterialModel) -> Moduli:
    return Moduli(model.kappa, 0.75 * model.beta)


# ---------------------------------------------------------------------------
# invariants of the shear strain tensor
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InvariantPoint:
    x1: float
    x2: float

    @property
    def discriminant(self) -> float:
        return discriminant(self.x1, self.x2)

    @property
    def admissible(self) -> bool:
        return self.discriminant >= -BOUNDARY_CURVE_TOL

    @property
    def on_boundary(self) -> bool:
        return abs(self.discriminant) < BOUNDARY_CURVE_TOL


def discriminant(x1, x2):
    # evaluated term by term in this order; no re-association
    return 3 * x1**2 * x2**2 - 4 * x1**3 - 4 * x2**3 + 6 * x1 * x2 - 1


def invariants_from_stretches(l1: float, l2: float, l3: float) -> InvariantPoint:
    """(H1, H2) of the shear strain tensor with principal stretches l1, l2, l3."""
    J = l1 * l2 * l3
    c = J ** (1.0 / 3.0)
    return InvariantPoint((l1 + l2 + l3) / (3.0 * c), c * (1 / l1 + 1 / l2 + 1 / l3) / 3.0)


def invariants_and_discriminant(u=None, point: InvariantPoint | None = None):
    """Return (h1, h2, Delta) either along the curve H at ``u`` or at ``point``."""
    if (u is None) == (point is None):
        raise TypeError("pass exactly one of u or point")
    if point is not None:
        return point.x1, point.x2, point.discriminant
    if np.any(np.asarray(u) <= 0):
        raise DomainError("u must be positive")
    x1, x2 = h1_of_u(u), h2_of_u(u)
    return x1, x2, discriminant(x1, x2)


# ---------------------------------------------------------------------------
# consistency checks
# ---------------------------------------------------------------------------


def baker_ericksen_margin(model: MaterialModel, u):
    """(3u^2/2) f'(u)/(u-1); the sign of (t1 - t2)/(lambda1 - lambda2) up to a positive factor."""
    u = np.asarray(u, dtype=float)
    return 1.5 * u * u * q_ratio(model, u)


def null_lagrangian_shift(h: float, c0: float, u, order: int = 0):
    """f0(u) = c0 u^(-h/3) ((h/3) u + 1 - h/3) and its derivatives in u."""
    u = np.asarray(u, dtype=float)
    p = -h / 3.0
    # f0 = c0 [ (h/3) u^(p+1) + (1 - h/3) u^p ]
    return c0 * ((h / 3.0) * _power_deriv(u, p + 1.0, order) + (1.0 - h / 3.0) * _power_deriv(u, p, order))


def null_lagrangian_U1(h: float, c0: float, u):
    """kappa f0 + (2h/3) u f0' + u^2 f0''; vanishes identically."""
    u = np.asarray(u, dtype=float)
    return (
        kappa(h) * null_lagrangian_shift(h, c0, u)
        + (2.0 * h / 3.0) * u * null_lagrangian_shift(h, c0, u, 1)
        + u * u * null_lagrangian_shift(h, c0, u, 2)
    )


def shifted_model(model: MaterialModel, c0: float) -> MaterialModel:
    return model.with_shear(ShiftedShear(model.f, model.h, c0))
