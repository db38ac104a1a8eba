"""Sampling, the exact log-likelihood ratio and per-draw diagnostics.

Everything is expressed through the sufficient statistic, the vector of
category counts.  The ML estimate is the empirical pmf ``k / n`` so the
likelihood ratio has the closed form ``2 * sum_j k_j log(k_j / (n theta_j))``
(with ``0 log 0 = 0``).

Sampling uses :meth:`numpy.random.Generator.multinomial`, which draws the
counts by a chain of conditional binomials.  Generators are ``PCG64`` seeded
from ``numpy.random.SeedSequence``; batched draws are cut into fixed-size
chunks whose seeds are spawned from ``(seed, chunk index)``, so a result only
depends on the seed and the number of trials.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np
from scipy.special import xlogy

from .errors import PreconditionViolated, SingularEmpiricalInfo
from .model import Model, fisher, fisher_inv_sqrt, fisher_inverse, spectral_norm

CHUNK = 1 << 16


@dataclass(frozen=True)
class Counts:
    """Category counts ``k`` (length ``r + 1``) summing to ``n``."""

    n: int
    k: np.ndarray

    def __post_init__(self):
        k = np.array(self.k, dtype=np.int64)
        if k.ndim != 1 or np.any(k < 0):
            raise ValueError("counts must be a 1-d vector of non-negative integers")
        if int(k.sum()) != int(self.n):
            raise ValueError(f"counts sum to {int(k.sum())}, expected n={self.n}")
        if self.n < 1:
            raise ValueError("n must be positive")
        k.setflags(write=False)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "n", int(self.n))

    @property
    def mle(self) -> np.ndarray:
        """Empirical pmf ``k / n``."""
        return self.k / self.n


def counts(k) -> Counts:
    """Shorthand for ``Counts(sum(k), k)``."""
    k = np.asarray(k, dtype=np.int64)
    return Counts(int(k.sum()), k)


def _check_shape(m: Model, c: Counts) -> None:
    if c.k.size != m.r + 1:
        raise ValueError(f"counts have {c.k.size} categories, model has {m.r + 1}")


# --------------------------------------------------------------------------
# sampling
# --------------------------------------------------------------------------


def _rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), *key])))


def sample_counts(m: Model, n: int, seed: int) -> Counts:
    """One multinomial draw of ``n`` samples from ``m``; reproducible in ``seed``."""
    if n < 1:
        raise ValueError("n must be positive")
    k = _rng(seed).multinomial(int(n), m.theta)
    return Counts(int(n), k)


def sample_counts_batch(m: Model, n: int, trials: int, seed: int) -> Iterator[np.ndarray]:
    """Yield arrays of shape ``(chunk, r + 1)`` holding ``trials`` draws in total.

    Chunk ``i`` uses its own generator keyed on ``(seed, i)``, so chunks can be
    produced by independent workers and merged in any order.
    """
    if n < 1 or trials < 1:
        raise ValueError("n and trials must be positive")
    done = 0
    i = 0
    while done < trials:
        size = min(CHUNK, trials - done)
        yield _rng(seed, 1, i).multinomial(int(n), m.theta, size=size)
        done += size
        i += 1


# --------------------------------------------------------------------------
# statistics
# --------------------------------------------------------------------------


def llr_counts(m: Model, k: np.ndarray, n: int) -> np.ndarray:
    """Vectorized likelihood ratio for count rows ``k`` (shape ``(..., r + 1)``)."""
    k = np.asarray(k, dtype=float)
    lam = 2.0 * np.sum(xlogy(k, k / (n * m.theta)), axis=-1)
    # rounding can leave -1e-16 at the exact-fit lattice point
    return np.maximum(lam, 0.0)


def llr(m: Model, c: Counts) -> float:
    """Log-likelihood ratio ``2 [L_n(mle) - L_n(theta)]``."""
    _check_shape(m, c)
    return float(llr_counts(m, c.k, c.n))


def log_likelihood(m: Model, c: Counts, theta=None) -> float:
    """``sum_j k_j log theta_j`` at ``theta`` (defaults to the model pmf)."""
    p = m.theta if theta is None else np.asarray(theta, dtype=float)
    return float(np.sum(xlogy(c.k, p)))


def score(m: Model, c: Counts) -> np.ndarray:
    """Standardized score ``t_n``, a length-``r`` vector."""
    _check_shape(m, c)
    q = c.k / (c.n * m.theta)
    return np.sqrt(c.n) * (q[:-1] - q[-1])


def empirical_info(m: Model, c: Counts) -> np.ndarray:
    """Empirical information ``J_n = -(1/n) sum_i Hessian g(X_i; theta)``."""
    _check_shape(m, c)
    w = c.k / (c.n * m.theta**2)
    r = m.r
    return np.diag(w[:-1]) + np.full((r, r), w[-1])


def l_vector(m: Model, c: Counts) -> np.ndarray:
    """``l_n = sqrt(n) (mle - theta)`` on the free coordinates."""
    _check_shape(m, c)
    return np.sqrt(c.n) * (c.mle[:-1] - m.free)


def g_sup(m: Model, c: Counts) -> float:
    """Exact ``Gbar_n``: sample mean of the third-derivative supremum ``G(X_i)``.

    Along the segment from ``theta`` to the ML estimate each coordinate is
    affine, so ``sup 2 / theta'_j**3`` is reached at the endpoint with the
    smaller coordinate.  Categories with no samples do not enter the mean.
    """
    _check_shape(m, c)
    hit = c.k > 0
    low = np.minimum(m.theta[hit], c.mle[hit])
    return float(np.sum(c.k[hit] * 2.0 / low**3) / c.n)


def gbar_upper(m: Model, l_norm: float, n: int) -> float:
    """Upper bound ``2 / (theta_min - sqrt(r/n) |l_n|)**3`` on ``Gbar_n``.

    Requires ``|l_n| <= sqrt(n/r) theta_min``; at equality the bound is ``inf``.
    """
    limit = np.sqrt(n / m.r) * m.theta_min
    if l_norm > limit:
        raise PreconditionViolated(
            f"|l_n| = {l_norm!r} exceeds sqrt(n/r)*theta_min = {limit!r}"
        )
    gap = m.theta_min - np.sqrt(m.r / n) * l_norm
    if gap <= 0.0:
        return float("inf")
    return float(2.0 / gap**3)


@dataclass(frozen=True)
class DrawDiagnostics:
    """Quantities entering the quadratic-form decomposition of one draw."""

    lambda_n: float
    quad_form: float
    l_norm: float
    r_norm: float
    b_norm: float
    jinv_norm: float
    gbar_exact: float
    gbar_upper: float
    remainder_bound: float
    remainder_bound_exact: float
    sigma_inv_r_radius: float
    t: np.ndarray
    l: np.ndarray
    v: np.ndarray

    @property
    def residual(self) -> float:
        """``|Lambda_n - t^T J^{-1} t|``."""
        return abs(self.lambda_n - self.quad_form)


def _remainder(r: int, n: int, l_norm: float, g: float, jinv_norm: float) -> float:
    a2 = (r**3 / 4.0) * (l_norm**4 / n) * g**2 * jinv_norm
    a3 = (r**1.5 / 3.0) * (l_norm**3 / np.sqrt(n)) * g
    return float(a2 + a3)


def diagnostics(m: Model, c: Counts) -> DrawDiagnostics:
    """Evaluate every per-draw diagnostic.

    ``remainder_bound`` bounds ``|Lambda_n - t^T J^{-1} t|`` using the closed
    bound on ``Gbar_n`` when its precondition holds and the exact value
    otherwise; ``remainder_bound_exact`` always uses the exact value.

    Raises
    ------
    SingularEmpiricalInfo
        If any category count is zero.
    """
    _check_shape(m, c)
    if np.any(c.k == 0):
        raise SingularEmpiricalInfo(f"zero count in category {int(np.argmin(c.k))}")
    n, r = c.n, m.r
    t = score(m, c)
    jn = empirical_info(m, c)
    sigma = fisher(m)
    rn = jn - sigma
    s_half = fisher_inv_sqrt(m)
    b = s_half @ rn @ s_half
    b = 0.5 * (b + b.T)
    jinv = np.linalg.inv(jn)
    jinv = 0.5 * (jinv + jinv.T)
    quad = float(t @ np.linalg.solve(jn, t))
    l = l_vector(m, c)
    l_norm = float(np.linalg.norm(l))
    g_exact = g_sup(m, c)
    if l_norm < np.sqrt(n / r) * m.theta_min:
        g_up = gbar_upper(m, l_norm, n)
        g_used = g_up
    else:
        g_up = float("inf")
        g_used = g_exact
    jinv_norm = spectral_norm(jinv)
    return DrawDiagnostics(
        lambda_n=llr(m, c),
        quad_form=quad,
        l_norm=l_norm,
        r_norm=spectral_norm(rn),
        b_norm=spectral_norm(b),
        jinv_norm=jinv_norm,
        gbar_exact=g_exact,
        gbar_upper=g_up,
        remainder_bound=_remainder(r, n, l_norm, g_used, jinv_norm),
        remainder_bound_exact=_remainder(r, n, l_norm, g_exact, jinv_norm),
        sigma_inv_r_radius=float(np.max(np.abs(np.linalg.eigvals(fisher_inverse(m) @ rn)))),
        t=t,
        l=l,
        v=s_half @ t,
    )


def hessian_deviation(m: Model, x: int) -> np.ndarray:
    """``M = -Hessian g(x; theta) - Sigma`` for a single observation ``x`` (0-based)."""
    r = m.r
    h = np.zeros((r, r))
    if x < r:
        h[x, x] = 1.0 / m.theta[x] ** 2
    else:
        h[:] = 1.0 / m.residual**2
    return h - fisher(m)
