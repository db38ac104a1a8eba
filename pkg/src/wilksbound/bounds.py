"""Explicit constants and the two-sided CDF bound for the likelihood ratio.

For a model with ``r`` free parameters and smallest probability ``theta_min``
the bound on ``P*_n = Pr(Lambda_n < a)`` reads

    F(r, a - Delta/(1+ds)) - mu  <=  P*_n  <=  F(r, a + Delta/(1-ds)) + mu

with ``ds = d'/(1-d')`` and

    mu = eps(n, d') + 2r exp(-2 n d / r) + h(theta)/sqrt(n).

The tail term ``2r exp(-2 n d / r)`` carries the factor ``n`` everywhere in
this module, including the comparator ``T1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConditionViolated, DegenerateDeltaS, DomainError, InfeasibleGrid
from .model import Model
from .special import chi2_cdf

K_MIN = 1.85


@dataclass(frozen=True)
class TableOneValues:
    """All constants of the bound for one ``(n, a, delta, delta_prime)``."""

    omega: float
    nu: float
    h_theta: float
    epsilon: float
    delta_s: float
    delta_n: float
    mu: float
    tail_l: float
    bentkus: float

    @property
    def dominant(self) -> str:
        """Name of the largest of the three terms of ``mu``."""
        terms = {"epsilon": self.epsilon, "tail_l": self.tail_l, "bentkus": self.bentkus}
        return max(terms, key=terms.get)


@dataclass(frozen=True)
class BoundResult:
    lower: float
    upper: float
    raw_lower: float
    raw_upper: float
    n: int
    a: float
    delta: float
    delta_prime: float
    table: TableOneValues

    @property
    def vacuous(self) -> bool:
        """True when the bound says nothing beyond ``0 <= P <= 1``."""
        return self.raw_lower <= 0.0 and self.raw_upper >= 1.0


@dataclass(frozen=True)
class ComparatorResult:
    t1: float
    t2: float
    k: float
    a_s: float


def omega_nu(m: Model) -> tuple[float, float]:
    """Variance proxy ``omega`` and norm bound ``nu`` for the Bernstein step.

    >>> from wilksbound.model import new_model
    >>> omega_nu(new_model([0.4, 0.6]))
    (31.25, 5.0)
    """
    t, r = m.theta_min, m.r
    omega = t**-3 * (1.0 - t * (r - 1) ** 2 + r**2)
    nu = max((r + 1) / t, r * (t**-2 - 1.0 / t) - 1.0, t**-2 - 1.0 / t)
    return float(omega), float(nu)


def h_of_theta(m: Model) -> float:
    """Constant of the 1/sqrt(n) chi-square approximation penalty.

    ``400 r^(1/4) sum_j theta_j^(-1/2) (1 - theta_j)^(3/2)`` over all ``r + 1``
    categories.
    """
    p = m.theta
    return float(400.0 * m.r**0.25 * np.sum(p**-0.5 * (1.0 - p) ** 1.5))


def epsilon_bound(n: int, delta_prime: float, omega: float, nu: float, r: int) -> float:
    """Matrix-Bernstein tail ``Pr(|R_n| > delta_prime)`` bound."""
    if not 0.0 < delta_prime < 1.0:
        raise DomainError(f"delta_prime={delta_prime!r} must lie in (0, 1)")
    return 2.0 * r * math.exp(-0.5 * delta_prime**2 * n / (omega + delta_prime * nu / 3.0))


def _check_delta(m: Model, delta: float, delta_prime: float) -> None:
    cap = m.theta_min**2 / m.r
    # the gap test catches delta one ulp below a cap that rounded up
    if not 0.0 < delta < cap or m.theta_min - math.sqrt(m.r * delta) <= 0.0:
        raise DomainError(f"delta={delta!r} must lie in (0, theta_min^2/r = {cap!r})")
    if not 0.0 < delta_prime < 1.0:
        raise DomainError(f"delta_prime={delta_prime!r} must lie in (0, 1)")


def delta_fn(m: Model, n: int, a: float, delta: float, delta_prime: float) -> float:
    """Threshold shift ``Delta(n)``."""
    _check_delta(m, delta, delta_prime)
    r, t = m.r, m.theta_min
    ds = delta_prime / (1.0 - delta_prime)
    gap = t - math.sqrt(r * delta)
    quad = n * r**3 * delta**2 / (1.0 - delta_prime) / gap**6
    cubic = 2.0 * n * r**1.5 * delta**1.5 / (3.0 * gap**3)
    return ds * a + quad + cubic


def table_one(m: Model, n: int, a: float, delta: float, delta_prime: float) -> TableOneValues:
    """Evaluate every constant of the bound at one parameter point."""
    _check_delta(m, delta, delta_prime)
    omega, nu = omega_nu(m)
    h = h_of_theta(m)
    eps = epsilon_bound(n, delta_prime, omega, nu, m.r)
    tail = 2.0 * m.r * math.exp(-2.0 * n * delta / m.r)
    bent = h / math.sqrt(n)
    return TableOneValues(
        omega=omega,
        nu=nu,
        h_theta=h,
        epsilon=eps,
        delta_s=delta_prime / (1.0 - delta_prime),
        delta_n=delta_fn(m, n, a, delta, delta_prime),
        mu=eps + tail + bent,
        tail_l=tail,
        bentkus=bent,
    )


def theorem_bounds(m: Model, n: int, a: float, delta: float, delta_prime: float) -> BoundResult:
    """Two-sided bound on ``Pr(Lambda_n < a)``.

    For ``delta_prime >= 1/2`` the upper shift ``Delta/(1-ds)`` is undefined;
    ``raw_upper`` is then ``+inf`` and ``upper`` clamps to 1.

    Raises
    ------
    DomainError
        If ``delta`` is outside ``(0, theta_min^2/r)``, ``delta_prime`` outside
        ``(0, 1)``, ``a < 0`` or ``n < 1``.
    """
    if n < 1:
        raise DomainError("n must be positive")
    if a < 0:
        raise DomainError(f"a={a!r} must be non-negative")
    tab = table_one(m, n, a, delta, delta_prime)
    r = m.r
    lo_arg = max(0.0, a - tab.delta_n / (1.0 + tab.delta_s))
    raw_lower = chi2_cdf(r, lo_arg) - tab.mu
    if tab.delta_s >= 1.0:
        raw_upper = math.inf
    else:
        raw_upper = chi2_cdf(r, a + tab.delta_n / (1.0 - tab.delta_s)) + tab.mu
    return BoundResult(
        lower=min(max(raw_lower, 0.0), 1.0),
        upper=min(max(raw_upper, 0.0), 1.0),
        raw_lower=raw_lower,
        raw_upper=raw_upper,
        n=int(n),
        a=float(a),
        delta=float(delta),
        delta_prime=float(delta_prime),
        table=tab,
    )


def corollary_compact(m: Model, n: int, a: float, delta: float, delta_prime: float) -> float:
    """Symmetric bound ``|P*_n - F(r, a)| <= min(mu', 1)``.

    Valid once ``Delta(n) < a (1 + ds)``.

    Raises
    ------
    ConditionViolated
        If ``Delta(n) >= a (1 + ds)``.
    DegenerateDeltaS
        If ``delta_prime >= 1/2`` so that ``1 - ds <= 0``.
    """
    tab = table_one(m, n, a, delta, delta_prime)
    ds, dn, r = tab.delta_s, tab.delta_n, m.r
    if dn >= a * (1.0 + ds):
        raise ConditionViolated(f"Delta(n)={dn!r} >= a(1+ds)={a * (1.0 + ds)!r}")
    if ds >= 1.0:
        raise DegenerateDeltaS(f"delta_prime={delta_prime!r} gives 1 - ds <= 0")
    if r > 1:
        shift = dn / (2.0 * (1.0 - ds))
        penalty = shift * (a / 2.0 + shift) ** (r / 2.0 - 1.0)
    else:
        up = (a / 2.0) ** -0.5 / (1.0 - ds)
        down = (a / 2.0 - dn / (2.0 * (1.0 + ds))) ** -0.5 / (1.0 + ds)
        penalty = 0.5 * dn * max(up, down)
    return min(tab.mu + penalty, 1.0)


def spokoiny_shift(r: int, n: int, a: float, k: float) -> float:
    """``a_s = a + k sqrt((r + k log n)^3 / n)``."""
    return a + k * math.sqrt((r + k * math.log(n)) ** 3 / n)


def t2_value(r: int, n: int, a: float, k: float) -> float:
    """Gap ``F(r, a_s) + 5 exp(-k log n) - F(r, a)`` of the bracketing bound."""
    if k <= K_MIN:
        raise DomainError(f"k={k!r} must exceed {K_MIN}")
    a_s = spokoiny_shift(r, n, a, k)
    return chi2_cdf(r, a_s) + 5.0 * math.exp(-k * math.log(n)) - chi2_cdf(r, a)


def t1_value(m: Model, n: int, a: float, delta: float, delta_prime: float) -> float:
    """Gap ``min{F(r, a + Delta/(1-ds)) + eps + tail, 1} - F(r, a)``.

    Equals the capped theorem upper bound minus ``h/sqrt(n)`` and ``F(r, a)``.
    """
    tab = table_one(m, n, a, delta, delta_prime)
    if tab.delta_s >= 1.0:
        top = math.inf
    else:
        top = chi2_cdf(m.r, a + tab.delta_n / (1.0 - tab.delta_s)) + tab.epsilon + tab.tail_l
    return min(top, 1.0) - chi2_cdf(m.r, a)


def comparator_t1_t2(
    m: Model, n: int, a: float, delta: float, delta_prime: float, k: float
) -> ComparatorResult:
    """Side-by-side gaps of the Taylor-based bound and the bracketing bound."""
    if k <= K_MIN:
        raise DomainError(f"k={k!r} must exceed {K_MIN}")
    return ComparatorResult(
        t1=t1_value(m, n, a, delta, delta_prime),
        t2=t2_value(m.r, n, a, k),
        k=float(k),
        a_s=spokoiny_shift(m.r, n, a, k),
    )


@dataclass(frozen=True)
class RateProfile:
    """Optimized ``mu*`` along an ``n`` grid and its log-log slope."""

    slope: float
    n: np.ndarray
    mu: np.ndarray
    delta: np.ndarray
    delta_prime: np.ndarray
    dominant: tuple[str, ...]

    @property
    def steep(self) -> bool:
        """Decay faster than ``n^-0.55``: the 1/sqrt(n) term is not in charge."""
        return self.slope < -0.55


def rate_probe(m: Model, n_grid, a: float = 1.0) -> RateProfile:
    """Least-squares slope of ``log mu*`` against ``log n``.

    ``mu*`` is the smallest ``mu`` over the optimizer's ``(delta, delta')``
    grid at each ``n``.

    Raises
    ------
    InfeasibleGrid
        If the grid has fewer than two points, spans under three decades, or
        ``mu* >= 1`` at its smallest ``n``.
    """
    from .optimizer import optimize_mu

    ns = np.asarray(sorted(int(v) for v in n_grid), dtype=np.int64)
    if ns.size < 2:
        raise InfeasibleGrid("a slope needs at least two grid points")
    if math.log10(ns[-1] / ns[0]) < 3.0 - 1e-9:
        raise InfeasibleGrid("the n grid must span at least three decades")
    results = [optimize_mu(m, int(n), a) for n in ns]
    mu = np.array([res.objective for res in results])
    if mu[0] >= 1.0:
        raise InfeasibleGrid(f"mu* = {mu[0]!r} >= 1 at n = {ns[0]}")
    slope = float(np.polyfit(np.log(ns.astype(float)), np.log(mu), 1)[0])
    dominant = tuple(
        table_one(m, int(n), a, res.delta, res.delta_prime).dominant
        for n, res in zip(ns, results)
    )
    return RateProfile(
        slope=slope,
        n=ns,
        mu=mu,
        delta=np.array([res.delta for res in results]),
        delta_prime=np.array([res.delta_prime for res in results]),
        dominant=dominant,
    )
