"""Special functions against scipy oracles and classical identities."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad
from scipy.special import eval_genlaguerre, gamma, j0, jv

from htlab.specfun import (
    gauss_hermite,
    gauss_legendre,
    hermite_function,
    hermite_tensor,
    laguerre_normalized,
    laguerre_stack,
    reduced_bessel,
)


def test_hermite_orthonormality():
    x, w = gauss_hermite(80)
    H = np.stack([hermite_function(n, x) for n in range(12)])
    # gauss_hermite returns physicists' nodes/weights for exp(-x^2);
    # the hermite functions already carry exp(-x^2/2) each.
    gram = (H * np.exp(x * x) * w) @ H.T
    assert np.max(np.abs(gram - np.eye(12))) <= 1e-12


def test_hermite_parity_and_ode_recurrence():
    x = np.linspace(-3.0, 3.0, 31)
    for n in range(8):
        hn = hermite_function(n, x)
        assert np.allclose(hermite_function(n, -x), (-1.0) ** n * hn,
                           atol=1e-13)
    # x h_n = sqrt((n+1)/2) h_{n+1} + sqrt(n/2) h_{n-1}
    for n in range(1, 8):
        lhs = x * hermite_function(n, x)
        rhs = (np.sqrt((n + 1) / 2.0) * hermite_function(n + 1, x)
               + np.sqrt(n / 2.0) * hermite_function(n - 1, x))
        assert np.max(np.abs(lhs - rhs)) <= 1e-12


def test_hermite_tensor_factorizes():
    xi = np.random.default_rng(0).standard_normal((5, 2))
    val = hermite_tensor((2, 3), xi)
    ref = hermite_function(2, xi[:, 0]) * hermite_function(3, xi[:, 1])
    assert np.allclose(val, ref, atol=1e-14)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=12),
       st.integers(min_value=0, max_value=3),
       st.floats(min_value=0.0, max_value=30.0))
def test_laguerre_normalized_matches_series_oracle(k, delta, t):
    """Independent oracle: explicit hypergeometric series for the
    Laguerre polynomial, normalized to value 1 at t = 0."""
    from math import comb, factorial
    series = sum((-1) ** i * comb(k + delta, k - i) * t ** i / factorial(i)
                 for i in range(k + 1))
    ref = series / comb(k + delta, k) * np.exp(-t / 2.0)
    val = float(laguerre_normalized(k, float(delta), np.array([t]))[0])
    assert np.isclose(val, ref, atol=1e-10, rtol=1e-9)


def test_laguerre_normalized_is_one_at_zero():
    for k in (0, 3, 25, 90):
        for delta in (0.0, 1.0, 2.5):
            assert np.isclose(
                float(laguerre_normalized(k, delta, np.array([0.0]))[0]),
                1.0, atol=1e-13)


def test_laguerre_stack_matches_pointwise():
    t = np.linspace(0.0, 80.0, 37)
    L = laguerre_stack(60, t)
    for k in (0, 1, 5, 17, 42, 59):
        assert np.allclose(L[k], laguerre_normalized(k, 0.0, t), atol=1e-11)


def test_laguerre_quadrature_orthonormality_high_level():
    """The damped recurrence stays orthonormal at levels near 100."""
    x, w = gauss_legendre(4000, 0.0, 600.0)
    L = laguerre_stack(101, x)
    for k in (80, 100):
        assert np.isclose(np.sum(w * L[k] * L[k]), 1.0, atol=1e-8)
        assert abs(np.sum(w * L[k] * L[k - 10])) <= 1e-8


def test_reduced_bessel_d1_is_j0():
    r = np.linspace(0.0, 20.0, 401)
    assert np.max(np.abs(reduced_bessel(1, r) - j0(r))) <= 1e-8


def test_reduced_bessel_d2_oracle():
    """Sphere average of exp(i r s_1) over S^3 equals
    Gamma(2) (2/r)^1 J_1(r) for d = 2 (checked by direct quadrature)."""
    for r in (0.5, 2.0, 7.0):
        def integrand(th):
            # average over S^3 reduces to int cos(r cos th) sin^2 th dth
            return np.cos(r * np.cos(th)) * np.sin(th) ** 2
        ref = quad(integrand, 0.0, np.pi)[0] / (np.pi / 2.0)
        val = float(reduced_bessel(2, np.array([r]))[0])
        assert np.isclose(val, ref, atol=1e-10)
        assert np.isclose(val, gamma(2.0) * (2.0 / r) * jv(1.0, r),
                          atol=1e-10)


def test_gauss_rules_polynomial_exactness():
    x, w = gauss_legendre(6, -1.0, 3.0)
    for k in range(11):
        exact = (3.0 ** (k + 1) - (-1.0) ** (k + 1)) / (k + 1)
        assert np.isclose(np.sum(w * x ** k), exact, rtol=1e-13, atol=1e-13)
    xh, wh = gauss_hermite(8)
    moments = {0: np.sqrt(np.pi), 2: np.sqrt(np.pi) / 2,
               4: 3 * np.sqrt(np.pi) / 4}
    for k, exact in moments.items():
        assert np.isclose(np.sum(wh * xh ** k), exact, rtol=1e-13)
