"""Ground truth for ``P*_n = Pr(Lambda_n < a)``.

Two engines: exhaustive enumeration of every count vector (exact, for small
``C(n + r, r)``) and Monte Carlo with a Dvoretzky-Kiefer-Wolfowitz band.
The inequality is strict throughout.  ``Lambda_n`` lives on a lattice with
atoms, so ``Pr(Lambda_n < a)`` and ``Pr(Lambda_n <= a)`` differ whenever
``a`` hits an atom.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np
from scipy.special import gammaln, xlogy

from .bounds import theorem_bounds
from .errors import TooLarge, WilksBoundError
from .llr import llr_counts, sample_counts_batch
from .model import Model
from .special import chi2_cdf

MAX_COMPOSITIONS = 10**7
MC_FALLBACK_TRIALS = 10**5


@dataclass(frozen=True)
class CdfEstimate:
    value: float
    half_width: float
    method: str
    trials: int = 0
    seed: int | None = None

    @property
    def interval(self) -> tuple[float, float]:
        return self.value - self.half_width, self.value + self.half_width


def composition_count(n: int, r: int) -> int:
    """Number of count vectors of length ``r + 1`` summing to ``n``."""
    return math.comb(n + r, r)


def _compositions(total: int, parts: int) -> np.ndarray:
    """All compositions of ``total`` into ``parts`` ordered lexicographically."""
    if parts == 1:
        return np.array([[total]], dtype=np.int64)
    if parts == 2:
        first = np.arange(total + 1, dtype=np.int64)
        return np.column_stack([first, total - first])
    blocks = []
    for first in range(total + 1):
        rest = _compositions(total - first, parts - 1)
        blocks.append(np.column_stack([np.full(len(rest), first, dtype=np.int64), rest]))
    return np.vstack(blocks)


def iter_compositions(n: int, r: int) -> Iterator[np.ndarray]:
    """Lexicographic compositions chunked by the value of the first coordinate."""
    if r == 1:
        yield _compositions(n, 2)
        return
    for first in range(n + 1):
        rest = _compositions(n - first, r)
        yield np.column_stack([np.full(len(rest), first, dtype=np.int64), rest])


def log_multinomial_pmf(m: Model, k: np.ndarray, n: int) -> np.ndarray:
    """Log pmf of count rows ``k`` under ``Multinomial(n, theta)``."""
    k = np.asarray(k)
    return gammaln(n + 1.0) - np.sum(gammaln(k + 1.0), axis=-1) + np.sum(xlogy(k, m.theta), axis=-1)


def exact_cdf(m: Model, n: int, a: float) -> CdfEstimate:
    """``Pr(Lambda_n < a)`` summed over all count vectors.

    Raises
    ------
    TooLarge
        If there are more than ``1e7`` count vectors.
    """
    size = composition_count(n, m.r)
    if size > MAX_COMPOSITIONS:
        raise TooLarge(f"C(n+r, r) = {size} count vectors exceeds {MAX_COMPOSITIONS}")
    total = 0.0
    for block in iter_compositions(n, m.r):
        hit = llr_counts(m, block, n) < a
        if np.any(hit):
            total += float(np.sum(np.exp(log_multinomial_pmf(m, block[hit], n))))
    return CdfEstimate(min(total, 1.0), 0.0, "exact")


def llr_distribution(m: Model, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Every attainable ``Lambda_n`` with its probability, sorted by value."""
    size = composition_count(n, m.r)
    if size > MAX_COMPOSITIONS:
        raise TooLarge(f"C(n+r, r) = {size} count vectors exceeds {MAX_COMPOSITIONS}")
    lam, prob = [], []
    for block in iter_compositions(n, m.r):
        lam.append(llr_counts(m, block, n))
        prob.append(np.exp(log_multinomial_pmf(m, block, n)))
    lam = np.concatenate(lam)
    prob = np.concatenate(prob)
    order = np.argsort(lam, kind="stable")
    return lam[order], prob[order]


def dkw_half_width(trials: int, alpha: float) -> float:
    """``sqrt(log(2/alpha) / (2 trials))``."""
    return math.sqrt(math.log(2.0 / alpha) / (2.0 * trials))


def _check_mc(trials: int, alpha: float) -> None:
    if trials < 100:
        raise ValueError("Monte Carlo needs at least 100 trials")
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")


def mc_cdf(m: Model, n: int, a: float, trials: int, seed: int, alpha: float = 0.01) -> CdfEstimate:
    """Fraction of ``trials`` simulated draws with ``Lambda_n < a``."""
    _check_mc(trials, alpha)
    below = 0
    for block in sample_counts_batch(m, n, trials, seed):
        below += int(np.count_nonzero(llr_counts(m, block, n) < a))
    return CdfEstimate(below / trials, dkw_half_width(trials, alpha), "monte-carlo", trials, seed)


@dataclass(frozen=True)
class WilksRow:
    a: float
    empirical: float
    chi2: float


def wilks_curve(m: Model, n: int, trials: int, seed: int, a_grid: Sequence[float]) -> list[WilksRow]:
    """Empirical CDF of ``Lambda_n`` against the chi-square CDF on ``a_grid``.

    One pass over the trials; every grid point sees the same draws.
    """
    _check_mc(trials, 0.5)
    grid = np.asarray(a_grid, dtype=float)
    if grid.size == 0:
        raise ValueError("a_grid is empty")
    below = np.zeros(grid.size, dtype=np.int64)
    for block in sample_counts_batch(m, n, trials, seed):
        lam = np.sort(llr_counts(m, block, n))
        below += np.searchsorted(lam, grid, side="left")
    emp = below / trials
    ref = chi2_cdf(m.r, grid)
    return [WilksRow(float(a), float(e), float(f)) for a, e, f in zip(grid, emp, ref)]


@dataclass(frozen=True)
class ValidationCase:
    n: int
    a: float
    delta: float
    delta_prime: float
    lower: float | None = None
    estimate: CdfEstimate | None = None
    upper: float | None = None
    violated: bool = False
    error: str | None = None


@dataclass(frozen=True)
class ValidationReport:
    cases: list[ValidationCase] = field(default_factory=list)

    @property
    def violations(self) -> int:
        return sum(c.violated for c in self.cases)

    @property
    def errors(self) -> int:
        return sum(c.error is not None for c in self.cases)


def validate_bounds(
    m: Model,
    grid: Iterable[tuple[int, float, float, float]],
    *,
    seed: int = 0,
    trials: int = MC_FALLBACK_TRIALS,
    alpha: float = 0.01,
) -> ValidationReport:
    """Check ``lower <= P*_n <= upper`` on each ``(n, a, delta, delta')``.

    Small ``n`` uses :func:`exact_cdf`; larger ones fall back to Monte Carlo
    and the check widens by the DKW half-width.  A domain error marks the
    case as errored and the run continues.
    """
    if trials < MC_FALLBACK_TRIALS:
        raise ValueError(f"Monte Carlo fallback needs at least {MC_FALLBACK_TRIALS} trials")
    cache: dict[tuple[int, float], CdfEstimate] = {}
    cases = []
    for n, a, delta, delta_prime in grid:
        n = int(n)
        try:
            bound = theorem_bounds(m, n, a, delta, delta_prime)
            key = (n, float(a))
            if key not in cache:
                if composition_count(n, m.r) <= MAX_COMPOSITIONS:
                    cache[key] = exact_cdf(m, n, a)
                else:
                    cache[key] = mc_cdf(m, n, a, trials, seed, alpha)
            est = cache[key]
        except WilksBoundError as exc:
            cases.append(ValidationCase(n, a, delta, delta_prime, error=type(exc).__name__))
            continue
        lo, hi = est.interval
        violated = hi < bound.lower or lo > bound.upper
        cases.append(
            ValidationCase(n, a, delta, delta_prime, bound.lower, est, bound.upper, violated)
        )
    return ValidationReport(cases)
