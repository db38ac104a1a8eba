"""Grid search over the free parameters of the bound.

The objectives have cliffs (exponential terms spanning ~70 orders of
magnitude) and a hard wall at ``delta = theta_min^2 / r``, so the search is a
log-spaced grid followed by two local passes at half the previous pitch.

The ``delta`` lattice is anchored on ``x = n * delta`` (``x = 10**(j/8)``),
which keeps the same candidate set in ``x`` for every ``n``.  Every term of
the upper bound is non-increasing in ``n`` at fixed ``(x, delta')``, which is
what makes the optimized bound behave monotonically along an ``n`` sweep.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .bounds import K_MIN, h_of_theta, omega_nu, t2_value, table_one, theorem_bounds
from .model import Model
from .special import chi2_cdf

DELTA_FLOOR = 1e-16
DELTA_PER_DECADE = 8
DELTA_PRIME_RANGE = (1e-6, 0.5 - 1e-6)
DELTA_PRIME_POINTS = 64
K_MAX = 50.0

DIRECTIONS = ("upper-min", "lower-max")


@dataclass(frozen=True)
class OptResult:
    delta: float
    delta_prime: float
    objective: float
    evaluations: int


def _delta_cap(m: Model) -> float:
    return m.theta_min**2 / m.r * (1.0 - 1e-6)


def delta_grid(m: Model, n: int) -> np.ndarray:
    """Coarse ``delta`` lattice ``10**(j/8) / n`` inside ``[1e-16, cap]``."""
    cap = _delta_cap(m)
    log_n = math.log10(n)
    j_lo = math.ceil((math.log10(DELTA_FLOOR) + log_n) * DELTA_PER_DECADE)
    j_hi = math.floor((math.log10(cap) + log_n) * DELTA_PER_DECADE)
    j = np.arange(j_lo, j_hi + 1)
    return 10.0 ** (j / DELTA_PER_DECADE - log_n)


def delta_prime_grid() -> np.ndarray:
    return np.geomspace(*DELTA_PRIME_RANGE, DELTA_PRIME_POINTS)


class _Objective:
    """Vectorized raw bounds and ``mu`` over arrays of ``(delta, delta')``."""

    def __init__(self, m: Model, n: int, a: float):
        self.m, self.n, self.a = m, n, a
        self.omega, self.nu = omega_nu(m)
        self.h = h_of_theta(m)

    def _parts(self, d, dp):
        m, n, a = self.m, self.n, self.a
        r, t = m.r, m.theta_min
        ds = dp / (1.0 - dp)
        gap = t - np.sqrt(r * d)
        dn = ds * a + n * r**3 * d**2 / (1.0 - dp) / gap**6 + 2.0 * n * r**1.5 * d**1.5 / (3.0 * gap**3)
        eps = 2.0 * r * np.exp(-0.5 * dp**2 * n / (self.omega + dp * self.nu / 3.0))
        mu = eps + 2.0 * r * np.exp(-2.0 * n * d / r) + self.h / math.sqrt(n)
        return ds, dn, mu

    def upper(self, d, dp):
        ds, dn, mu = self._parts(d, dp)
        return chi2_cdf(self.m.r, self.a + dn / (1.0 - ds)) + mu

    def lower_neg(self, d, dp):
        ds, dn, mu = self._parts(d, dp)
        arg = np.maximum(0.0, self.a - dn / (1.0 + ds))
        return -(chi2_cdf(self.m.r, arg) - mu)

    def mu(self, d, dp):
        return self._parts(d, dp)[2]


def _pick(d, dp, f):
    """Index of the minimum; ties go to the smallest ``(delta, delta')``."""
    best = np.min(f)
    idx = np.flatnonzero(f == best)
    order = np.lexsort((dp[idx], d[idx]))
    return idx[order[0]]


def _search(m: Model, n: int, fn: Callable) -> tuple[float, float, int]:
    cap = _delta_cap(m)
    lo_dp, hi_dp = DELTA_PRIME_RANGE
    dg = delta_grid(m, n)
    dpg = delta_prime_grid()
    D, DP = (x.ravel() for x in np.meshgrid(dg, dpg, indexing="ij"))
    f = fn(D, DP)
    evals = f.size
    i = _pick(D, DP, f)
    d_best, dp_best = D[i], DP[i]
    f_best = f[i]
    pitch_d = 1.0 / DELTA_PER_DECADE
    pitch_dp = math.log10(hi_dp / lo_dp) / (DELTA_PRIME_POINTS - 1)
    for _ in range(2):
        pitch_d /= 2.0
        pitch_dp /= 2.0
        steps = np.arange(-2, 3)
        cd = d_best * 10.0 ** (steps * pitch_d)
        cdp = dp_best * 10.0 ** (steps * pitch_dp)
        cd = cd[(cd >= DELTA_FLOOR) & (cd <= cap)]
        cdp = cdp[(cdp >= lo_dp) & (cdp <= hi_dp)]
        D, DP = (x.ravel() for x in np.meshgrid(cd, cdp, indexing="ij"))
        f = fn(D, DP)
        evals += f.size
        i = _pick(D, DP, f)
        if f[i] < f_best:
            d_best, dp_best, f_best = D[i], DP[i], f[i]
    return float(d_best), float(dp_best), evals


def optimize_theorem(m: Model, n: int, a: float, direction: str = "upper-min") -> OptResult:
    """Tightest upper (``"upper-min"``) or lower (``"lower-max"``) raw bound.

    The reported objective is the raw (unclamped) bound re-evaluated through
    :func:`wilksbound.bounds.theorem_bounds` at the returned point.  Values
    of 1 or more for ``upper-min`` (0 or less for ``lower-max``) mean the best
    bound is vacuous at this ``n``.
    """
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}, got {direction!r}")
    obj = _Objective(m, n, a)
    fn = obj.upper if direction == "upper-min" else obj.lower_neg
    d, dp, evals = _search(m, n, fn)
    res = theorem_bounds(m, n, a, d, dp)
    value = res.raw_upper if direction == "upper-min" else res.raw_lower
    return OptResult(d, dp, float(value), evals)


def optimize_mu(m: Model, n: int, a: float = 1.0) -> OptResult:
    """Smallest ``mu`` over the same grid (``a`` only enters through ``Delta``)."""
    obj = _Objective(m, n, a)
    d, dp, evals = _search(m, n, obj.mu)
    return OptResult(d, dp, table_one(m, n, a, d, dp).mu, evals)


def golden_section(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-6) -> float:
    """Minimizer of a unimodal ``f`` on ``[lo, hi]`` to absolute ``tol``."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def optimize_k(r: int, n: int, a: float) -> tuple[float, float]:
    """Bracketing exponent ``k`` in ``(1.85, 50]`` minimizing ``T2``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    lo = K_MIN + 1e-9
    k = golden_section(lambda k: t2_value(r, n, a, k), lo, K_MAX)
    # the interior search cannot see a minimum sitting on the ends of the range
    cands = [(t2_value(r, n, a, c), c) for c in (k, lo, K_MAX)]
    t2, k = min(cands)
    return float(k), float(t2)
