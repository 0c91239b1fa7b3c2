"""Hermite, Laguerre and Bessel-type special functions and quadrature rules.

Everything here is vectorized over point arrays; the Hermite functions are
evaluated with the normalized three-term recurrence, which is stable for
levels well into the thousands as long as the evaluation points stay inside
the classically allowed region plus a moderate margin.
"""

from __future__ import annotations

import numpy as np
from scipy import special as sp

__all__ = [
    "hermite_function",
    "hermite_batch",
    "hermite_tensor",
    "laguerre_normalized",
    "reduced_bessel",
    "gauss_hermite",
    "gauss_legendre",
    "hermite_support_radius",
]


def hermite_batch(nmax: int, xi) -> np.ndarray:
    """Evaluate the L2-normalized Hermite functions ``h_0 .. h_nmax``.

    Parameters
    ----------
    nmax : int
        Highest level to evaluate.
    xi : array_like
        Evaluation points, any shape.

    Returns
    -------
    ndarray, shape ``xi.shape + (nmax + 1,)``
        ``out[..., n] = h_n(xi)`` with ``int h_n h_m = delta_{nm}``.

    Notes
    -----
    Uses the normalized recurrence
    ``h_{n+1} = sqrt(2/(n+1)) xi h_n - sqrt(n/(n+1)) h_{n-1}``
    seeded with ``h_0 = pi^{-1/4} exp(-xi^2/2)``, so the Gaussian weight is
    carried inside the iterates and no overflow occurs.
    """
    xi = np.asarray(xi, dtype=float)
    out = np.empty(xi.shape + (nmax + 1,), dtype=float)
    h0 = np.pi ** -0.25 * np.exp(-0.5 * xi * xi)
    out[..., 0] = h0
    if nmax >= 1:
        out[..., 1] = np.sqrt(2.0) * xi * h0
    for n in range(1, nmax):
        out[..., n + 1] = (
            np.sqrt(2.0 / (n + 1)) * xi * out[..., n]
            - np.sqrt(n / (n + 1.0)) * out[..., n - 1]
        )
    return out


def hermite_function(n: int, xi) -> np.ndarray:
    """The single L2-normalized Hermite function ``h_n``."""
    return hermite_batch(n, xi)[..., n]


def hermite_tensor(alpha, xi) -> np.ndarray:
    """Tensor Hermite function ``h_alpha(xi) = prod_j h_{alpha_j}(xi_j)``.

    ``xi`` has shape ``(..., d)`` matching ``len(alpha)``.
    """
    alpha = np.atleast_1d(np.asarray(alpha, dtype=int))
    xi = np.asarray(xi, dtype=float)
    if xi.shape[-1] != alpha.size:
        raise ValueError("xi last axis must match len(alpha)")
    vals = np.ones(xi.shape[:-1], dtype=float)
    for j, nj in enumerate(alpha):
        vals = vals * hermite_function(int(nj), xi[..., j])
    return vals


def hermite_support_radius(n: int, margin: float = 4.0) -> float:
    """Effective support radius of ``h_n`` (turning point plus a margin)."""
    return float(np.sqrt(2.0 * n + 1.0) + margin)


def laguerre_stack(size: int, t) -> np.ndarray:
    """``laguerre_normalized(k, 0, t)`` for all ``k < size``, stacked.

    Uses the three-term recurrence
    ``(k+1) L_{k+1} = (2k+1-t) L_k - k L_{k-1}`` (stable for the
    exponentially damped functions), shape ``(size, *t.shape)``.
    """
    t = np.asarray(t, dtype=float)
    out = np.empty((size,) + t.shape)
    damp = np.exp(-0.5 * t)
    out[0] = damp
    if size > 1:
        out[1] = (1.0 - t) * damp
    for k in range(1, size - 1):
        out[k + 1] = ((2 * k + 1 - t) * out[k] - k * out[k - 1]) / (k + 1)
    return out


def laguerre_normalized(k: int, delta: float, t) -> np.ndarray:
    """Normalized Laguerre function ``L_k^delta(t)/L_k^delta(0) e^{-t/2}``.

    Value 1 at ``t = 0``; these appear as the matrix coefficients of
    irreducible representations against radial functions.
    """
    t = np.asarray(t, dtype=float)
    norm = sp.binom(k + delta, k)
    return sp.eval_genlaguerre(k, delta, t) / norm * np.exp(-0.5 * t)


def reduced_bessel(d: int, r) -> np.ndarray:
    """Spherical average ``int_{S^{2d-1}} exp(-i r s.e) ds`` (probability).

    Equals ``Gamma(d) (r/2)^{1-d} J_{d-1}(r)``, with value 1 at ``r = 0``;
    for ``d = 1`` this is the Bessel function ``J_0(r)``.
    """
    r = np.asarray(r, dtype=float)
    if d == 1:
        return sp.j0(r)
    out = np.empty(r.shape, dtype=float)
    small = np.abs(r) < 1e-12
    rs = np.where(small, 1.0, r)
    out = sp.gamma(d) * (rs / 2.0) ** (1 - d) * sp.jv(d - 1, rs)
    return np.where(small, 1.0, out)


def gauss_hermite(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Hermite nodes/weights for the weight ``exp(-x^2)`` on R."""
    return np.polynomial.hermite.hermgauss(n)


def gauss_legendre(n: int, a: float = -1.0, b: float = 1.0):
    """Gauss-Legendre nodes/weights on ``[a, b]``."""
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (b - a)
    return 0.5 * (a + b) + half * x, half * w


def dump_table(path, headers, columns) -> None:
    """Write columns to CSV with 17 significant digits (RFC 4180)."""
    from .reports import write_csv

    write_csv(path, headers, columns)
