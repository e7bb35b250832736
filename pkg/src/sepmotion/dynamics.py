"""Scalar amplitude equation a'' = mu a^(h-1).

The energy E = a'^2/2 - (mu/h) a^h is conserved.  For h < 0, mu > 0 the
amplitude grows like sqrt(2 E) t; for h > 1, mu < 0 it reaches zero at a
finite time tau, which also has a closed quadrature form.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad, solve_ivp

from .errors import DomainError, RegimeError, StepUnderflow

EXPANSION = "expansion"
COLLAPSE = "collapse"
INDETERMINATE = "indeterminate"

COLLAPSE_FRACTION = 1e-6
MIN_STEP = 1e-14


@dataclass
class ScaleState:
    t: float
    a: float
    adot: float


@dataclass
class ScaleTrajectory:
    h: float
    mu: float
    t: np.ndarray
    a: np.ndarray
    adot: np.ndarray
    energy: np.ndarray
    regime: str
    tau: float | None = None
    event_time: float | None = None
    dense: object = field(default=None, repr=False)

    @property
    def E0(self) -> float:
        return float(self.energy[0])

    @property
    def energy_drift(self) -> float:
        return float(np.max(np.abs(self.energy - self.energy[0])) / abs(self.energy[0]))

    def states(self):
        for t, a, ad in zip(self.t, self.a, self.adot):
            yield ScaleState(float(t), float(a), float(ad))

    def at(self, t):
        """(a, adot) at time t inside the integrated span."""
        t = np.asarray(t, dtype=float)
        if np.any(t < self.t[0]) or np.any(t > self.t[-1]):
            raise DomainError(f"t outside trajectory span [{self.t[0]!r}, {self.t[-1]!r}]")
        if self.dense is None:
            return np.interp(t, self.t, self.a), np.interp(t, self.t, self.adot)
        y = self.dense(t)
        return y[0], y[1]

    def expansion_gap(self):
        """(2 E0)^(1/2) - a(t)/t for t > 0."""
        m = self.t > 0
        return self.t[m], np.sqrt(2.0 * self.E0) - self.a[m] / self.t[m]

    def expansion_tail(self, fraction=0.01):
        """Gap summary over samples with t >= fraction * t_end.

        Early on a(t)/t ~ a0/t dominates, so positivity and monotone decay
        are only meaningful on the tail.
        """
        t, gap = self.expansion_gap()
        tail = gap[t >= fraction * self.t[-1]]
        return {
            "final_gap": float(gap[-1]),
            "positive": bool(np.all(tail > 0)),
            "decreasing": bool(np.all(np.diff(tail) < 0)),
            "limit": float(np.sqrt(2.0 * self.E0)),
            "final_ratio": float(self.a[-1] / self.t[-1]),
        }


def energy(state, h, mu):
    """E = a'^2/2 - (mu/h) a^h; ``state`` is a ScaleState or an (a, adot) pair."""
    if h == 0:
        raise DomainError("energy is undefined for h = 0")
    a, adot = (state.a, state.adot) if isinstance(state, ScaleState) else state
    a = np.asarray(a, dtype=float)
    return 0.5 * np.asarray(adot, dtype=float) ** 2 - (mu / h) * a**h


def regime_of(h, mu):
    if h < 0 and mu > 0:
        return EXPANSION
    if h > 1 and mu < 0:
        return COLLAPSE
    return INDETERMINATE


def integrate(h, mu, a0=1.0, adot0=0.0, horizon=1e4, rtol=1e-10, atol=1e-12, method="DOP853"):
    """Integrate a'' = mu a^(h-1) from (a0, adot0) up to ``horizon`` or collapse.

    A collapse event is declared when a falls to 1e-6 a0; tau is then the
    event time plus the exact remaining time from the quadrature.
    """
    if a0 <= 0:
        raise DomainError("a0 must be positive")
    if h == 0:
        raise DomainError("h = 0 is excluded")
    regime = regime_of(h, mu)
    threshold = COLLAPSE_FRACTION * a0

    def rhs(t, y):
        return [y[1], mu * abs(y[0]) ** (h - 1.0)]

    def hit(t, y):
        return y[0] - threshold

    hit.terminal = True
    hit.direction = -1

    sol = solve_ivp(
        rhs,
        (0.0, float(horizon)),
        [float(a0), float(adot0)],
        method=method,
        rtol=rtol,
        atol=atol * a0,
        events=hit,
        dense_output=True,
    )
    event_time = float(sol.t_events[0][0]) if sol.t_events[0].size else None
    if sol.status == -1:
        raise StepUnderflow(f"integration failed: {sol.message}")
    steps = np.diff(sol.t)[:-1]  # the last step may be clipped by the horizon
    if event_time is None and steps.size and np.min(steps) < MIN_STEP:
        raise StepUnderflow("adaptive step fell below 1e-14 away from a collapse event")

    t, a, adot = sol.t, sol.y[0], sol.y[1]
    tau = None
    if event_time is not None:
        if regime == COLLAPSE:
            E0 = float(energy((a0, adot0), h, mu))
            tau = event_time + _time_to_zero(h, mu, E0, float(a[-1]))
        else:
            tau = event_time
    return ScaleTrajectory(h, mu, t, a, adot, energy((a, adot), h, mu), regime, tau, event_time, sol.sol)


# ---------------------------------------------------------------------------
# collapse-time quadrature
# ---------------------------------------------------------------------------


def _travel_time(h, mu, E0, lo, hi, astar=None):
    """int_lo^hi [2 (E0 + (mu/h) s^h)]^(-1/2) ds for 0 <= lo <= hi <= a*.

    With K = -mu/h and a*^h = E0/K the integrand is [2 K (a*^h - s^h)]^(-1/2);
    the substitution s = a* - w^2 removes the inverse square root at s = a*.
    """
    K = -mu / h
    if astar is None:
        astar = (E0 / K) ** (1.0 / h)
    hi = min(hi, astar)
    if hi <= lo:
        return 0.0

    def integrand(w):
        x = w * w / astar
        if x == 0.0:
            ratio = h
        elif x >= 1.0:
            ratio = 1.0 / x
        else:
            # (1 - (1 - x)^h) / x
            ratio = -np.expm1(h * np.log1p(-x)) / x
        return 2.0 / np.sqrt(2.0 * K * astar ** (h - 1.0) * ratio)

    gap = astar - hi
    # sqrt would turn a rounding-level gap into an O(1e-8) offset in w
    w_lo = 0.0 if gap <= 8 * np.finfo(float).eps * astar else np.sqrt(gap)
    w_hi = np.sqrt(astar - lo)
    val, _ = quad(integrand, w_lo, w_hi, epsabs=0.0, epsrel=1e-13, limit=200)
    return val


def _time_to_zero(h, mu, E0, a):
    """Remaining time to collapse from amplitude a with non-positive velocity."""
    return _travel_time(h, mu, E0, 0.0, a)


def turning_amplitude(h, mu, a0, adot0):
    """a* with E0 = -(mu/h) a*^h, the largest amplitude reached."""
    E0 = float(energy((a0, adot0), h, mu))
    return (E0 / (-mu / h)) ** (1.0 / h)


def collapse_time_quadrature(h, mu, a0=1.0, adot0=0.0):
    """Collapse time tau for h > 1, mu < 0 from the energy integral."""
    if not (h > 1 and mu < 0):
        raise RegimeError(f"not a collapse regime (h = {h!r}, mu = {mu!r}); need h > 1 and mu < 0")
    if a0 <= 0:
        raise DomainError("a0 must be positive")
    E0 = float(energy((a0, adot0), h, mu))
    if adot0 == 0:
        return _travel_time(h, mu, E0, 0.0, a0, astar=float(a0))
    if adot0 < 0:
        return _travel_time(h, mu, E0, 0.0, a0)
    astar = turning_amplitude(h, mu, a0, adot0)
    return _travel_time(h, mu, E0, 0.0, astar, astar) + _travel_time(h, mu, E0, a0, astar, astar)


def virial_bounds(trajectory: ScaleTrajectory):
    """Lower/upper envelopes for X(t) - X'(0) t - X(0), X = a^2/2, in the expansion regime.

    From m E0 <= X'' <= M E0 with m = min(2, -h), M = max(2, -h); integrating
    twice gives (m/2) E0 t^2 and (M/2) E0 t^2.
    """
    h = trajectory.h
    m, M = min(2.0, -h), max(2.0, -h)
    t = trajectory.t
    X = 0.5 * trajectory.a**2
    lhs = X - trajectory.a[0] * trajectory.adot[0] * t - X[0]
    E0 = trajectory.E0
    return lhs, 0.5 * m * E0 * t**2, 0.5 * M * E0 * t**2
