"""Categorical model over ``r + 1`` symbols and its Fisher information.

The free parameter is the vector of the first ``r`` probabilities; the last
category carries the residual mass ``1 - sum(theta[:r])``.  Symmetric
matrices are plain ``numpy`` arrays of shape ``(r, r)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import EigenFailure, NonPositiveProbability, NotNormalized

NORMALIZATION_TOL = 1e-12
EIGEN_TOL = 1e-14


@dataclass(frozen=True)
class Model:
    """True pmf ``theta`` over ``r + 1`` categories.

    Build instances with :func:`new_model`, which validates the input.
    """

    theta: np.ndarray
    r: int = field(init=False)
    theta_min: float = field(init=False)

    def __post_init__(self):
        theta = np.array(self.theta, dtype=float)
        theta.setflags(write=False)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "r", theta.size - 1)
        object.__setattr__(self, "theta_min", float(theta.min()))

    @property
    def free(self) -> np.ndarray:
        """The free parameters ``theta[:r]``."""
        return self.theta[:-1]

    @property
    def residual(self) -> float:
        """Probability of the last category."""
        return float(self.theta[-1])

    def __repr__(self):
        return f"Model(theta={self.theta.tolist()})"


def new_model(theta: Sequence[float]) -> Model:
    """Validate a probability vector and wrap it as a :class:`Model`.

    All entries must be strictly positive and sum to one within ``1e-12``.
    Inputs inside that tolerance are renormalized; anything further off is
    rejected rather than silently fixed.
    """
    p = np.asarray(theta, dtype=float).ravel()
    if p.size < 2:
        raise ValueError("a categorical model needs at least two categories")
    if not np.all(np.isfinite(p)):
        raise ValueError("probabilities must be finite")
    if np.any(p <= 0.0):
        bad = int(np.argmax(p <= 0.0))
        raise NonPositiveProbability(f"theta[{bad}] = {p[bad]!r} is not strictly positive")
    total = float(np.sum(p))
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise NotNormalized(f"probabilities sum to {total!r}, not 1")
    return Model(p / total)


def fisher(m: Model) -> np.ndarray:
    """Fisher information ``diag(1/theta_j) + (1/theta_{r+1}) * 1 1^T``."""
    r = m.r
    return np.diag(1.0 / m.free) + np.full((r, r), 1.0 / m.residual)


def fisher_inverse(m: Model) -> np.ndarray:
    """Closed-form inverse ``diag(theta) - theta theta^T`` (first ``r`` entries)."""
    t = m.free
    return np.diag(t) - np.outer(t, t)


def fisher_inv_sqrt(m: Model) -> np.ndarray:
    """Symmetric positive-definite square root of :func:`fisher_inverse`."""
    w, q = np.linalg.eigh(fisher_inverse(m))
    if np.any(w <= EIGEN_TOL):
        raise EigenFailure(f"smallest eigenvalue {w.min()!r} of the inverse Fisher matrix")
    s = (q * np.sqrt(w)) @ q.T
    return 0.5 * (s + s.T)


def spectral_norm(a: np.ndarray) -> float:
    """``max(lambda_max, -lambda_min)`` of a symmetric matrix."""
    w = np.linalg.eigvalsh(a)
    return float(max(w[-1], -w[0]))
