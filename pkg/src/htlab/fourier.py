"""Irreducible representations, group Fourier transform and its inverse.

The generic irreducible representations act on ``L^2(R^d)`` and are realized
on a truncated tensor Hermite basis of size ``N^d``.  For a center covector
``lam`` the horizontal coordinates are read through an adapted orthonormal
basis that conjugates ``sum_m lam_m J^(m) / |lam|`` to the canonical
symplectic matrix; in these coordinates

    pi^lam_x Phi(xi) = exp(i lam.z + i |lam| p.q / 2 + i sqrt(|lam|) xi.q)
                       Phi(xi + sqrt(|lam|) p).

Matrix elements against Hermite functions are available through two routes:
direct quadrature (`rep_matrix_element`) and a batched evaluation based on
the one-parameter-group identity ``pi(Exp V) = exp(pi(V))`` whose matrix
elements reduce to Laguerre-type recurrences (`rep_v_matrices`).  The two
routes are cross-checked in the test suite; the batched one powers the
Fourier engine.

The finite-dimensional representations are the characters
``x -> exp(i omega(v))`` for ``omega`` in the horizontal covector space.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .group import GroupElement, HTypeStructure, HaarGrid
from .specfun import (
    gauss_legendre,
    hermite_batch,
    hermite_support_radius,
    laguerre_normalized,
    reduced_bessel,
)

__all__ = [
    "HermiteBasisSpec",
    "adapted_basis",
    "rep_matrix_element",
    "rep_matrix",
    "rep_v_matrices",
    "displacement_matrix",
    "infinitesimal_rep",
    "ladder_matrices",
    "sublaplacian_symbol",
    "spherical_inf",
    "spherical_finite",
    "LambdaGrid",
    "annulus_lambda_grid",
    "FourierEngine",
    "fourier_finite",
    "fan_data",
    "lemma_limit_experiment",
]


@dataclass(frozen=True)
class HermiteBasisSpec:
    """Truncated tensor Hermite basis of ``L^2(R^d)``.

    Multi-indices run over ``{0..N-1}^d`` in lexicographic order (first axis
    slowest); ``margin`` marks how many top levels per axis are regarded as
    polluted by truncation, identities are asserted on the interior block.
    """

    d: int
    N: int
    margin: int = 4

    @property
    def size(self) -> int:
        return self.N ** self.d

    def indices(self) -> np.ndarray:
        """All multi-indices, shape ``(size, d)``, lexicographic."""
        return np.asarray(list(itertools.product(range(self.N), repeat=self.d)),
                          dtype=int)

    def flat_index(self, alpha) -> int:
        alpha = np.atleast_1d(np.asarray(alpha, dtype=int))
        idx = 0
        for a in alpha:
            idx = idx * self.N + int(a)
        return idx

    def interior_mask(self) -> np.ndarray:
        """Boolean mask (size,) of indices with every entry < N - margin."""
        return np.all(self.indices() < self.N - self.margin, axis=1)

    def total_degree(self) -> np.ndarray:
        """``|alpha|`` for each flat index."""
        return self.indices().sum(axis=1)


def adapted_basis(G: HTypeStructure, lam) -> np.ndarray:
    """Adapted orthonormal basis for the covector ``lam``.

    Returns the orthogonal matrix ``M`` (rows ``P_1..P_d, Q_1..Q_d`` in the
    ``v``-coordinates) with ``M (B/|lam|) M^T = J_can`` where
    ``B = sum lam_m J^(m)`` and ``J_can`` has blocks ``[[0, I], [-I, 0]]``.

    The construction is deterministic: candidate directions are the
    coordinate axes in order, projected onto the orthogonal complement of
    the planes found so far; the in-plane phase is fixed by making the
    first nonzero component of each ``P_j`` positive.
    """
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    norm = np.linalg.norm(lam)
    if norm == 0:
        raise ValueError("adapted basis requires lam != 0")
    A = G.J_lambda(lam) / norm
    d = G.d
    P, Q = [], []
    for i in range(2 * d):
        if len(P) == d:
            break
        c = np.zeros(2 * d)
        c[i] = 1.0
        for pj, qj in zip(P, Q):
            c -= (pj @ c) * pj + (qj @ c) * qj
        nrm = np.linalg.norm(c)
        if nrm < 1e-8:
            continue
        c /= nrm
        nz = np.nonzero(np.abs(c) > 1e-9)[0]
        if nz.size and c[nz[0]] < 0:
            c = -c
        P.append(c)
        Q.append(-A @ c)
    if len(P) != d:
        raise RuntimeError("adapted basis construction failed")
    M = np.vstack(P + Q)
    return M


# ---------------------------------------------------------------------------
# representation matrices
# ---------------------------------------------------------------------------


def _pq_coords(G: HTypeStructure, lam, v: np.ndarray):
    """Map ``v`` arrays (..., 2d) to adapted coordinates ``p, q``."""
    M = adapted_basis(G, lam)
    pq = np.asarray(v, dtype=float) @ M.T
    return pq[..., : G.d], pq[..., G.d:], M


def rep_matrix_element(G: HTypeStructure, lam, x: GroupElement,
                       alpha, beta, basis: HermiteBasisSpec | None = None,
                       xi_order: int | None = None) -> complex:
    """Matrix element ``(pi^lam_x h_alpha, h_beta)`` by direct quadrature.

    The ``xi`` integral along each axis is done with Gauss-Legendre on a box
    covering the effective supports; pass ``xi_order`` to override the
    automatic order (refinement studies use 4x the default).
    """
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    alpha = np.atleast_1d(np.asarray(alpha, dtype=int))
    beta = np.atleast_1d(np.asarray(beta, dtype=int))
    absl = np.linalg.norm(lam)
    sq = np.sqrt(absl)
    p, q, _ = _pq_coords(G, lam, x.v)
    val = np.exp(1j * (lam @ x.z) + 0.5j * absl * (p @ q))
    for j in range(G.d):
        n_hi = int(max(alpha[j], beta[j]))
        R = hermite_support_radius(n_hi) + abs(sq * p[j]) + 1.0
        if xi_order is None:
            order = int(np.ceil(2.0 * R * (np.sqrt(2 * n_hi + 1.0)
                                           + abs(sq * q[j])) / np.pi)) + 40
        else:
            order = xi_order
        xi, w = gauss_legendre(order, -R, R)
        ha = hermite_batch(int(alpha[j]), xi + sq * p[j])[:, alpha[j]]
        hb = hermite_batch(int(beta[j]), xi)[:, beta[j]]
        val = val * np.sum(w * np.exp(1j * sq * xi * q[j]) * ha * hb)
    return complex(val)


def _laguerre_rows(k: int, nmax: int, t: np.ndarray) -> np.ndarray:
    """``L_n^{(k)}(t)`` for ``n = 0..nmax``; shape ``(nmax+1,) + t.shape``."""
    L = np.empty((nmax + 1,) + t.shape)
    L[0] = 1.0
    if nmax >= 1:
        L[1] = 1.0 + k - t
    for n in range(1, nmax):
        L[n + 1] = ((2 * n + k + 1 - t) * L[n] - (n + k) * L[n - 1]) / (n + 1)
    return L


def displacement_matrix(alpha: np.ndarray, N: int) -> np.ndarray:
    """Matrices of ``exp(a conj-creation - conj(a) annihilation)`` on levels ``< N``.

    Parameters
    ----------
    alpha : ndarray, shape (n,)
        Complex displacement parameters.
    N : int
        Truncation; output has shape ``(n, N, N)`` with
        ``out[, m, n] = (D(alpha) h_n, h_m)``.

    Notes
    -----
    Entries are ``sqrt(n!/m!) alpha^{m-n} e^{-|alpha|^2/2} L_n^{(m-n)}(|alpha|^2)``
    for ``m >= n`` (conjugate-reflected below the diagonal), evaluated with
    stable coupled recurrences; this is the exponential of the Hermite
    ladder generator and therefore equals the horizontal part of the
    representation at ``a = sqrt(|lam|) (-p + i q) / sqrt(2)``.
    """
    alpha = np.atleast_1d(np.asarray(alpha, dtype=complex))
    npts = alpha.shape[0]
    t = (alpha.real ** 2 + alpha.imag ** 2)
    expf = np.exp(-0.5 * t)
    out = np.zeros((npts, N, N), dtype=complex)
    fac_up = np.ones((npts, N), dtype=complex)
    fac_lo = np.ones((npts, N), dtype=complex)
    for k in range(N):
        nmax = N - 1 - k
        ns = np.arange(nmax + 1)
        if k > 0:
            fac_up = fac_up[:, : nmax + 1] * (alpha[:, None] / np.sqrt(ns + k))
            fac_lo = fac_lo[:, : nmax + 1] * (-np.conj(alpha)[:, None]
                                              / np.sqrt(ns + k))
        L = _laguerre_rows(k, nmax, t)  # (nmax+1, npts)
        vals_up = fac_up[:, : nmax + 1] * expf[:, None] * L.T
        out[:, ns + k, ns] = vals_up
        if k > 0:
            out[:, ns, ns + k] = fac_lo[:, : nmax + 1] * expf[:, None] * L.T
    return out


def rep_v_matrices(G: HTypeStructure, lam, v_points: np.ndarray,
                   basis: HermiteBasisSpec) -> np.ndarray:
    """Batched matrices of the horizontal part ``Pi^lam(v)`` of ``pi^lam``.

    ``v_points`` has shape ``(n, 2d)``; returns ``(n, N^d, N^d)`` such that
    ``rep_matrix = exp(i lam.z) * Pi^lam(v)``.
    """
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    absl = np.linalg.norm(lam)
    p, q, _ = _pq_coords(G, lam, np.atleast_2d(v_points))
    a = np.sqrt(absl / 2.0) * (-p + 1j * q)  # (n, d)
    mats = displacement_matrix(a[:, 0], basis.N)
    for j in range(1, G.d):
        mats = np.einsum("nab,ncd->nacbd", mats,
                         displacement_matrix(a[:, j], basis.N))
        s = mats.shape[1] * mats.shape[2]
        mats = mats.reshape(mats.shape[0], s, s)
    return mats


def rep_matrix(G: HTypeStructure, lam, x: GroupElement,
               basis: HermiteBasisSpec) -> np.ndarray:
    """Full representation matrix ``(pi^lam_x h_alpha, h_beta)_{beta,alpha}``."""
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    phase = np.exp(1j * float(lam @ np.atleast_1d(x.z)))
    return phase * rep_v_matrices(G, lam, np.atleast_2d(x.v), basis)[0]


# ---------------------------------------------------------------------------
# infinitesimal representation and the sublaplacian symbol
# ---------------------------------------------------------------------------


def _ladder_1d(N: int):
    n = np.arange(N - 1)
    xi = np.zeros((N, N))
    xi[n + 1, n] = np.sqrt((n + 1) / 2.0)
    xi[n, n + 1] = np.sqrt((n + 1) / 2.0)
    dx = np.zeros((N, N))
    dx[n, n + 1] = np.sqrt((n + 1) / 2.0)
    dx[n + 1, n] = -np.sqrt((n + 1) / 2.0)
    return xi, dx


def ladder_matrices(basis: HermiteBasisSpec):
    """Position and derivative matrices ``Xi_j``, ``D_j`` on the tensor basis.

    ``Xi_j`` is multiplication by ``xi_j`` and ``D_j`` is ``d/dxi_j``; both
    are exact on the interior block of the truncation.
    """
    N, d = basis.N, basis.d
    xi1, dx1 = _ladder_1d(N)
    eye = np.eye(N)
    Xi, D = [], []
    for j in range(d):
        facs_x = [xi1 if i == j else eye for i in range(d)]
        facs_d = [dx1 if i == j else eye for i in range(d)]
        mx, md = facs_x[0], facs_d[0]
        for fx, fd in zip(facs_x[1:], facs_d[1:]):
            mx = np.kron(mx, fx)
            md = np.kron(md, fd)
        Xi.append(mx)
        D.append(md)
    return np.stack(Xi), np.stack(D)


def infinitesimal_rep(G: HTypeStructure, lam, basis: HermiteBasisSpec):
    """Matrices of ``pi^lam`` on the Lie algebra basis.

    Returns a dict with stacks ``P`` (shape ``(d, n, n)``), ``Q`` and ``Z``
    where ``pi^lam(P_j) = sqrt|lam| d/dxi_j``, ``pi^lam(Q_j) = i sqrt|lam| xi_j``
    and ``pi^lam(Z_m) = i lam_m``.
    """
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    absl = np.linalg.norm(lam)
    Xi, D = ladder_matrices(basis)
    eye = np.eye(basis.size)
    return {
        "P": np.sqrt(absl) * D,
        "Q": 1j * np.sqrt(absl) * Xi,
        "Z": np.stack([1j * lm * eye for lm in lam]),
    }


def sublaplacian_symbol(G: HTypeStructure, lam, basis: HermiteBasisSpec) -> np.ndarray:
    """Diagonal matrix of ``-Delta`` at ``lam``: entries ``|lam| (2|alpha| + d)``."""
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    absl = np.linalg.norm(lam)
    return np.diag(absl * (2.0 * basis.total_degree() + G.d)).astype(complex)


def spherical_inf(G: HTypeStructure, lam, k: int, v, z) -> np.ndarray:
    """Spherical function of the generic representations at level ``k``.

    ``exp(-i lam.z) L~_k^{d-1}(|lam| |v|^2 / 2)`` with the normalized
    Laguerre function ``L~``.
    """
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    absl = np.linalg.norm(lam)
    v = np.asarray(v, dtype=float)
    z = np.asarray(z, dtype=float)
    t = absl * np.sum(v * v, axis=-1) / 2.0
    return np.exp(-1j * (z @ lam)) * laguerre_normalized(k, G.d - 1, t)


def spherical_finite(G: HTypeStructure, omega, v, z=None) -> np.ndarray:
    """Spherical function of the finite-dimensional sheet at ``omega``.

    The average of the characters over the sphere ``|omega| S^{2d-1}``,
    i.e. ``reduced_bessel(d, |omega| |v|)``; independent of ``z``.
    """
    omega = np.atleast_1d(np.asarray(omega, dtype=float))
    v = np.asarray(v, dtype=float)
    r = np.linalg.norm(omega) * np.sqrt(np.sum(v * v, axis=-1))
    return reduced_bessel(G.d, r)


def fourier_finite(grid: HaarGrid, samples: np.ndarray, omega) -> complex:
    """Finite-sheet Fourier transform ``int f(v,z) exp(-i omega.v) dv dz``."""
    omega = np.atleast_1d(np.asarray(omega, dtype=float))
    phase = np.exp(-1j * grid.v_nodes @ omega)
    return complex(np.einsum("i,ik,i,k->", phase, np.asarray(samples),
                             grid.v_weights, grid.z_weights))


# ---------------------------------------------------------------------------
# lambda grids and the Fourier engine
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LambdaGrid:
    """Quadrature nodes/weights in the center covector space (minus 0)."""

    nodes: np.ndarray  # (n, p)
    weights: np.ndarray  # (n,)

    @property
    def n(self) -> int:
        return self.nodes.shape[0]

    @property
    def abs(self) -> np.ndarray:
        return np.linalg.norm(self.nodes, axis=1)


def annulus_lambda_grid(r_min: float, r_max: float, n_nodes: int,
                        p: int = 1) -> LambdaGrid:
    """Gauss-Legendre grid on the annulus ``r_min <= |lam| <= r_max``.

    For ``p = 1`` this is two symmetric segments with ``n_nodes // 2`` points
    each.  The Plancherel weight ``|lam|^d`` is *not* folded in here; the
    engine applies it explicitly.
    """
    if p != 1:
        raise NotImplementedError("lambda annuli are built in for p = 1; "
                                  "pass explicit nodes for larger centers")
    half = n_nodes // 2
    xp, wp = gauss_legendre(half, r_min, r_max)
    xm, wm = gauss_legendre(half, -r_max, -r_min)
    nodes = np.concatenate([xm, xp])[:, None]
    weights = np.concatenate([wm, wp])
    return LambdaGrid(nodes=nodes, weights=weights)


class FourierEngine:
    """Discretized group Fourier transform on a Haar grid.

    Realizes the forward transform ``Ff(lam) = int f(x) pi^lam_{x^{-1}} dx``,
    its inverse ``f(x) = c0 int Tr(pi^lam_x Ff(lam)) |lam|^d dlam`` and the
    Plancherel pairing on a fixed product of a Haar grid and a lambda grid.
    The constant ``c0`` is never assumed in closed form: it is calibrated
    once on a reference function via :meth:`calibrate`.
    """

    def __init__(self, G: HTypeStructure, grid: HaarGrid,
                 basis: HermiteBasisSpec, lam_grid: LambdaGrid,
                 c0: float | None = None, cache_pi: bool = False):
        if basis.d != G.d:
            raise ValueError("basis dimension must match the group")
        self.G = G
        self.grid = grid
        self.basis = basis
        self.lam_grid = lam_grid
        self.c0 = c0
        self.cache_pi = cache_pi
        self._pi_cache: dict[bytes, np.ndarray] = {}

    # -- helpers ----------------------------------------------------------

    def pi_v(self, lam) -> np.ndarray:
        """Horizontal representation matrices on the grid's v-nodes."""
        if not self.cache_pi:
            return rep_v_matrices(self.G, lam, self.grid.v_nodes, self.basis)
        key = np.asarray(lam, dtype=float).tobytes()
        out = self._pi_cache.get(key)
        if out is None:
            out = rep_v_matrices(self.G, lam, self.grid.v_nodes, self.basis)
            self._pi_cache[key] = out
        return out

    def z_phase(self, lam) -> np.ndarray:
        """``exp(i lam.z)`` on the grid's z-nodes."""
        lam = np.atleast_1d(np.asarray(lam, dtype=float))
        return np.exp(1j * self.grid.z_nodes @ lam)

    # -- transforms -------------------------------------------------------

    def forward_at(self, samples: np.ndarray, lam,
                   pi=None) -> np.ndarray:
        """Fourier coefficient at one ``lam``; samples ``(..., n_v, n_z)``."""
        samples = np.asarray(samples)
        if pi is None:
            pi = self.pi_v(lam)
        ph = np.conj(self.z_phase(lam)) * self.grid.z_weights
        ghat = samples @ ph  # (..., n_v)
        ghat = ghat * self.grid.v_weights
        # F f(lam) = sum_v ghat(v) Pi(v)^H
        return np.einsum("...v,vab->...ba", ghat, np.conj(pi))

    def forward(self, samples: np.ndarray) -> np.ndarray:
        """Fourier coefficients on the lambda grid, ``(..., n_lam, n, n)``."""
        samples = np.asarray(samples)
        n = self.basis.size
        out = np.empty(samples.shape[:-2] + (self.lam_grid.n, n, n),
                       dtype=complex)
        for i, lam in enumerate(self.lam_grid.nodes):
            out[..., i, :, :] = self.forward_at(samples, lam)
        return out

    def inverse(self, coeffs: np.ndarray) -> np.ndarray:
        """Inverse transform sampled on the Haar grid, ``(..., n_v, n_z)``."""
        if self.c0 is None:
            raise RuntimeError("calibrate c0 before inverting")
        coeffs = np.asarray(coeffs)
        lead = coeffs.shape[:-3]
        out = np.zeros(lead + (self.grid.n_v, self.grid.n_z), dtype=complex)
        dfac = self.lam_grid.weights * self.lam_grid.abs ** self.G.d
        for i, lam in enumerate(self.lam_grid.nodes):
            pi = self.pi_v(lam)
            tr = np.einsum("vab,...ba->...v", pi, coeffs[..., i, :, :])
            out += dfac[i] * tr[..., None] * self.z_phase(lam)[None, :]
        return self.c0 * out

    def inverse_at(self, coeffs: np.ndarray, v_pts: np.ndarray,
                   z_pts: np.ndarray) -> np.ndarray:
        """Inverse transform at arbitrary points ``(v_pts[i], z_pts[i])``."""
        if self.c0 is None:
            raise RuntimeError("calibrate c0 before inverting")
        coeffs = np.asarray(coeffs)
        v_pts = np.atleast_2d(np.asarray(v_pts, dtype=float))
        z_pts = np.atleast_2d(np.asarray(z_pts, dtype=float))
        lead = coeffs.shape[:-3]
        out = np.zeros(lead + (v_pts.shape[0],), dtype=complex)
        dfac = self.lam_grid.weights * self.lam_grid.abs ** self.G.d
        for i, lam in enumerate(self.lam_grid.nodes):
            pi = rep_v_matrices(self.G, lam, v_pts, self.basis)
            tr = np.einsum("vab,...ba->...v", pi, coeffs[..., i, :, :])
            out += dfac[i] * tr * np.exp(1j * z_pts @ lam)
        return self.c0 * out

    # -- Plancherel -------------------------------------------------------

    def hs_density(self, coeffs: np.ndarray) -> np.ndarray:
        """``|lam|^d ||Ff(lam)||_HS^2`` at the lambda nodes (no weights)."""
        coeffs = np.asarray(coeffs)
        hs = np.sum(np.abs(coeffs) ** 2, axis=(-2, -1))
        return hs * self.lam_grid.abs ** self.G.d

    def plancherel_sum(self, coeffs: np.ndarray) -> np.ndarray:
        """``c0 int ||Ff(lam)||_HS^2 |lam|^d dlam`` (uses calibrated c0)."""
        if self.c0 is None:
            raise RuntimeError("calibrate c0 first")
        return self.c0 * np.einsum("...l,l->...", self.hs_density(coeffs),
                                   self.lam_grid.weights)

    def pairing(self, coeffs_a: np.ndarray, coeffs_b: np.ndarray) -> complex:
        """Plancherel inner product ``c0 int Tr(A B^*) |lam|^d dlam``."""
        if self.c0 is None:
            raise RuntimeError("calibrate c0 first")
        tr = np.einsum("lab,lab->l", np.asarray(coeffs_a),
                       np.conj(np.asarray(coeffs_b)))
        return complex(self.c0 * np.sum(
            tr * self.lam_grid.weights * self.lam_grid.abs ** self.G.d))

    def calibrate(self, samples: np.ndarray) -> float:
        """Fix ``c0`` so the Plancherel identity is exact on ``samples``."""
        norm_sq = self.grid.integrate(np.abs(np.asarray(samples)) ** 2).real
        coeffs = self.forward(samples)
        raw = np.einsum("l,l->", self.hs_density(coeffs), self.lam_grid.weights)
        self.c0 = float(norm_sq / raw.real)
        return self.c0


# ---------------------------------------------------------------------------
# spectral fan and the diagonal-coefficient limit
# ---------------------------------------------------------------------------


def fan_data(G: HTypeStructure, k_max: int, lam_max: float,
             n_samples: int = 64):
    """Spectral fan of the sublaplacian for ``p = 1``.

    Returns a list of rows ``(branch, parameter, zeta)``: rays
    ``zeta = |lam| (2k + d)`` for ``k <= k_max`` sampled on
    ``[0, lam_max]`` and the finite-dimensional parabola sheet
    ``zeta = |omega|^2``.
    """
    rows = []
    ts = np.linspace(0.0, lam_max, n_samples)
    for k in range(k_max + 1):
        for t in ts:
            rows.append((f"ray_k{k}", float(t), float(t * (2 * k + G.d))))
    omegas = np.linspace(0.0, np.sqrt(lam_max * (2 * k_max + G.d)), n_samples)
    for w in omegas:
        rows.append(("sheet", float(w), float(w * w)))
    return rows


def lemma_limit_experiment(G: HTypeStructure, grid: HaarGrid,
                           samples: np.ndarray, mu: float,
                           n_values, circle_order: int = 64):
    """Diagonal Fourier coefficients along a fan ray versus the sheet limit.

    For each Hermite level ``n`` the covector is ``lam_n = mu^2/(2n + d)``
    on the first center axis so that ``|lam_n| (2n + d) = mu^2``, and the
    diagonal coefficient ``(Ff(lam_n) h_{alpha_n}, h_{alpha_n})`` with
    ``alpha_n = (n, 0, ..)`` is compared with the spherical average
    ``int_{S^{2d-1}} Ff(0, mu s) ds`` of the finite-sheet transform
    (probability measure on the sphere).

    Returns ``(left_values, right_value)`` with ``left_values`` aligned
    with ``n_values``.
    """
    samples = np.asarray(samples)
    n_values = np.asarray(n_values, dtype=int)
    lefts = np.empty(n_values.shape, dtype=complex)
    v2 = np.sum(grid.v_nodes ** 2, axis=-1)
    for idx, n in enumerate(n_values):
        lam = mu * mu / (2.0 * n + G.d)
        lam_vec = np.zeros(G.p)
        lam_vec[0] = lam
        ph = np.exp(-1j * grid.z_nodes @ lam_vec) * grid.z_weights
        ghat = samples @ ph  # (n_v,)
        t = lam * v2 / 2.0
        # Diagonal of Pi(v)^H for alpha = (n, 0, ..): a product over axes of
        # Laguerre diagonals exp(-t_j/2) L_{alpha_j}(t_j) with
        # t_j = lam (p_j^2 + q_j^2)/2; the t_j sum to t = lam |v|^2 / 2.
        if G.d == 1:
            diag = laguerre_normalized(int(n), 0.0, t)
        else:
            p1q1 = grid.v_nodes @ adapted_basis(G, lam_vec).T
            t1 = lam * (p1q1[:, 0] ** 2 + p1q1[:, G.d] ** 2) / 2.0
            diag = (laguerre_normalized(int(n), 0.0, t1)
                    * np.exp(-0.5 * (t - t1)))
        lefts[idx] = np.sum(grid.v_weights * ghat * diag)
    # finite-sheet spherical average at radius mu (probability measure)
    theta, wth = gauss_legendre(circle_order, 0.0, 2.0 * np.pi)
    right = 0.0 + 0.0j
    if G.d == 1:
        for th, w in zip(theta, wth):
            omega = mu * np.array([np.cos(th), np.sin(th)])
            right += w * fourier_finite(grid, samples, omega)
        right /= 2.0 * np.pi
    else:
        rng = np.random.default_rng(0)
        n_dirs = 256
        dirs = rng.normal(size=(n_dirs, 2 * G.d))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
        vals = [fourier_finite(grid, samples, mu * e) for e in dirs]
        right = np.mean(vals)
    return lefts, complex(right)
