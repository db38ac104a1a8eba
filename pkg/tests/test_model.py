import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wilksbound import (
    EigenFailure,
    NonPositiveProbability,
    NotNormalized,
    fisher,
    fisher_inv_sqrt,
    fisher_inverse,
    new_model,
    spectral_norm,
)

from conftest import random_theta


@st.composite
def models(draw, max_r=12):
    r = draw(st.integers(1, max_r))
    w = draw(st.lists(st.floats(0.05, 1.0), min_size=r + 1, max_size=r + 1))
    w = np.array(w)
    return new_model(w / w.sum())


@pytest.mark.parametrize(
    "theta, r, theta_min",
    [([0.4, 0.6], 1, 0.4), ([0.5, 0.5], 1, 0.5), ([0.25, 0.25, 0.5], 2, 0.25)],
)
def test_new_model_fields(theta, r, theta_min):
    m = new_model(theta)
    assert m.r == r
    assert m.theta_min == theta_min
    np.testing.assert_array_equal(m.free, theta[:-1])
    assert m.residual == theta[-1]


@pytest.mark.parametrize(
    "theta, err",
    [
        ([0.4, 0.0, 0.6], NonPositiveProbability),
        ([-0.1, 1.1], NonPositiveProbability),
        ([0.4, 0.7], NotNormalized),
        ([0.4, 0.6 + 1e-10], NotNormalized),
    ],
)
def test_new_model_rejects(theta, err):
    with pytest.raises(err):
        new_model(theta)


def test_new_model_needs_two_categories():
    with pytest.raises(ValueError):
        new_model([1.0])


def test_normalization_tolerance_edge():
    m = new_model([0.4, 0.6 + 5e-13])
    assert abs(m.theta.sum() - 1.0) < 1e-15


def test_model_is_immutable(binary):
    with pytest.raises(Exception):
        binary.theta[0] = 0.5


@pytest.mark.parametrize(
    "theta, expected",
    [
        ([0.4, 0.6], [[2.5 + 1 / 0.6]]),
        ([0.25, 0.25, 0.5], [[6.0, 2.0], [2.0, 6.0]]),
        ([0.5, 0.5], [[4.0]]),
    ],
)
def test_fisher_examples(theta, expected):
    np.testing.assert_allclose(fisher(new_model(theta)), expected, rtol=1e-14)


@pytest.mark.parametrize(
    "theta, expected",
    [
        ([0.4, 0.6], [[0.24]]),
        ([0.25, 0.25, 0.5], [[0.1875, -0.0625], [-0.0625, 0.1875]]),
        ([0.5, 0.5], [[0.25]]),
    ],
)
def test_fisher_inverse_examples(theta, expected):
    np.testing.assert_allclose(fisher_inverse(new_model(theta)), expected, rtol=1e-14)


@pytest.mark.parametrize("theta, root", [([0.4, 0.6], np.sqrt(0.24)), ([0.5, 0.5], 0.5)])
def test_fisher_inv_sqrt_scalar(theta, root):
    np.testing.assert_allclose(fisher_inv_sqrt(new_model(theta)), [[root]], rtol=1e-12)


def test_fisher_inv_sqrt_squares_to_inverse(ternary):
    s = fisher_inv_sqrt(ternary)
    np.testing.assert_allclose(s, s.T, atol=0)
    np.testing.assert_allclose(s @ s, fisher_inverse(ternary), atol=1e-9)


def test_fisher_inv_sqrt_eigen_failure(monkeypatch):
    import wilksbound.model as model

    monkeypatch.setattr(model, "fisher_inverse", lambda m: np.diag([1.0, 0.0]))
    with pytest.raises(EigenFailure):
        model.fisher_inv_sqrt(new_model([0.2, 0.3, 0.5]))


def test_fisher_product_identity_random():
    rng = np.random.default_rng(20)
    for _ in range(100):
        r = int(rng.integers(1, 51))
        m = new_model(random_theta(rng, r, floor=1e-3))
        err = np.max(np.abs(fisher(m) @ fisher_inverse(m) - np.eye(r)))
        assert err < 1e-10


@given(models())
@settings(max_examples=60, deadline=None)
def test_fisher_min_eigenvalue_at_least_one(m):
    assert np.linalg.eigvalsh(fisher(m)).min() >= 1.0 - 1e-9


@given(models())
@settings(max_examples=60, deadline=None)
def test_fisher_inverse_entry_structure(m):
    inv = fisher_inverse(m)
    d = np.diag(inv)
    assert np.all((d > 0) & (d <= 0.25 + 1e-15))
    off = inv[~np.eye(m.r, dtype=bool)]
    assert np.all(off < 0)
    np.testing.assert_allclose(inv.sum(axis=1), m.free * m.residual, rtol=1e-10, atol=1e-15)


def test_spectral_norm_counts_negative_eigenvalues():
    assert spectral_norm(np.diag([0.5, -2.0])) == 2.0
    assert spectral_norm(np.array([[0.0]])) == 0.0
