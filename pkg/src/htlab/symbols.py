"""Operator-valued symbols with convolution kernels, norms and differences.

A symbol is a field ``sigma(x, lam) = F(kappa_x)(lam)`` where ``kappa_x`` is
a convolution kernel depending smoothly and compactly on ``x``.  Here
symbols are finite mixtures

    sigma(x, lam) = sum_i a_i(x) b_i(lam)

with scalar ``x``-profiles ``a_i`` and operator parts ``b_i``; the parts can
be kernel-backed (``b_i = F(k_i)`` with an explicit kernel callable),
spectral multipliers ``phi(H(lam))``, constant matrices, or derived objects
(products, commutator differences).  Mixtures are closed under products,
adjoints and all the difference operators, which keeps both quantization
routes (Fourier-side trace formula and kernel-side convolution) available.

Difference operators:

* ``Delta^lam_{p_j} = |lam|^{-1/2} [xi_j, .]`` and
  ``Delta^lam_{q_j} = |lam|^{-1/2} [i d_{xi_j}, .]``,
* ``Delta_v``: the fixed-frame differences obtained by rotating
  ``(Delta_p; Delta_q)`` back through the adapted basis,
* ``Delta_{z_m}``: ``i d_{lam_m}`` (finite differences with one Richardson
  level) plus the curvature corrections; the kernel-route
  ``F(z_m kappa)`` is the ground truth it is validated against.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .group import HTypeStructure, HaarGrid, bracket, dilate, GroupElement
from .fourier import (
    HermiteBasisSpec,
    adapted_basis,
    ladder_matrices,
    rep_v_matrices,
    sublaplacian_symbol,
)

__all__ = [
    "BPart",
    "KernelBPart",
    "SpectralBPart",
    "ConstBPart",
    "ProductBPart",
    "CallableBPart",
    "Symbol",
    "SymbolNorms",
    "symbol_from_kernel",
    "separable_symbol",
    "multiplier_symbol",
    "compose",
    "difference_general",
    "difference_pq",
    "difference_v",
    "difference_z",
    "symbol_norms",
    "kernel_cutoff",
    "radialize_symbol",
    "flow_derivative_profile",
    "random_symbol_suite",
]


def _lam_key(lam) -> bytes:
    return np.asarray(lam, dtype=float).tobytes()


def fourier_of_kernel(G: HTypeStructure, basis: HermiteBasisSpec,
                      grid: HaarGrid, k_samples: np.ndarray, lam) -> np.ndarray:
    """Group Fourier transform of kernel samples on a Haar grid at ``lam``."""
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    ph = np.exp(-1j * grid.z_nodes @ lam) * grid.z_weights
    ghat = np.asarray(k_samples) @ ph
    pi = rep_v_matrices(G, lam, grid.v_nodes, basis)
    return np.einsum("v,vab->ba", ghat * grid.v_weights, np.conj(pi))


class BPart:
    """Operator part ``lam -> complex matrix`` of a symbol term."""

    def eval(self, lam) -> np.ndarray:  # pragma: no cover - interface
        raise NotImplementedError

    def adjoint(self) -> "BPart":
        return CallableBPart(lambda lam: self.eval(lam).conj().T)

    def kernel(self):
        """Kernel callable ``(zv, zz) -> values`` or None if unavailable."""
        return None


class KernelBPart(BPart):
    """Kernel-backed part ``b(lam) = F(k)(lam)`` with cached evaluations.

    ``k`` is a vectorized callable ``(zv, zz) -> values`` with ``zv`` of
    shape ``(..., 2d)`` and ``zz`` of shape ``(..., p)``; ``coord`` is an
    optional extra coordinate factor ``(zv, zz, lam) -> values`` used by the
    difference-operator oracle (it may depend on ``lam`` through the
    adapted basis).
    """

    def __init__(self, G, basis, grid: HaarGrid, k, coord=None):
        self.G = G
        self.basis = basis
        self.grid = grid
        self.k = k
        self.coord = coord
        self._cache: dict[bytes, np.ndarray] = {}
        self._base_samples = None

    def _samples(self, lam):
        if self.coord is None:
            if self._base_samples is None:
                self._base_samples = np.asarray(
                    self.k(self.grid.v_nodes[:, None, :],
                           self.grid.z_nodes[None, :, :]))
            return self._base_samples
        vals = self.k(self.grid.v_nodes[:, None, :],
                      self.grid.z_nodes[None, :, :])
        return np.asarray(vals) * np.asarray(
            self.coord(self.grid.v_nodes[:, None, :],
                       self.grid.z_nodes[None, :, :], lam))

    def eval(self, lam) -> np.ndarray:
        key = _lam_key(lam)
        out = self._cache.get(key)
        if out is None:
            out = fourier_of_kernel(self.G, self.basis, self.grid,
                                    self._samples(lam), lam)
            self._cache[key] = out
        return out

    def adjoint(self) -> "KernelBPart":
        if self.coord is not None:
            return super().adjoint()
        k = self.k
        return KernelBPart(self.G, self.basis, self.grid,
                           lambda zv, zz: np.conj(k(-zv, -zz)))

    def kernel(self):
        if self.coord is not None:
            return None
        return self.k


class SpectralBPart(BPart):
    """Multiplier part ``phi(H(lam))`` (diagonal in the Hermite basis)."""

    def __init__(self, G, basis, phi):
        self.G = G
        self.basis = basis
        self.phi = phi
        self._deg = basis.total_degree()

    def eval(self, lam) -> np.ndarray:
        lam = np.atleast_1d(np.asarray(lam, dtype=float))
        zeta = np.linalg.norm(lam) * (2.0 * self._deg + self.G.d)
        return np.diag(np.asarray(self.phi(zeta), dtype=complex))

    def adjoint(self) -> "SpectralBPart":
        phi = self.phi
        return SpectralBPart(self.G, self.basis, lambda z: np.conj(phi(z)))


class ConstBPart(BPart):
    """A ``lam``-independent matrix part (used for test panels)."""

    def __init__(self, matrix: np.ndarray):
        self.matrix = np.asarray(matrix, dtype=complex)

    def eval(self, lam) -> np.ndarray:
        return self.matrix

    def adjoint(self) -> "ConstBPart":
        return ConstBPart(self.matrix.conj().T)


class LambdaWindowBPart(BPart):
    """Scalar covector cutoff ``chi(|lam|) b(lam)`` of a base part.

    Used for symbols supported away from ``lam = 0``; ``chi`` is a
    vectorizable scalar function of ``|lam|``.
    """

    def __init__(self, base: BPart, chi):
        self.base = base
        self.chi = chi

    def eval(self, lam) -> np.ndarray:
        r = float(np.linalg.norm(np.atleast_1d(np.asarray(lam,
                                                          dtype=float))))
        return complex(self.chi(r)) * self.base.eval(lam)

    def adjoint(self) -> "LambdaWindowBPart":
        chi = self.chi
        return LambdaWindowBPart(self.base.adjoint(),
                                 lambda r: np.conj(chi(r)))


class ProductBPart(BPart):
    def __init__(self, left: BPart, right: BPart):
        self.left = left
        self.right = right

    def eval(self, lam) -> np.ndarray:
        return self.left.eval(lam) @ self.right.eval(lam)

    def adjoint(self) -> "ProductBPart":
        return ProductBPart(self.right.adjoint(), self.left.adjoint())


class CallableBPart(BPart):
    """Generic part from an explicit evaluator, with a small cache."""

    def __init__(self, fn, adjoint_fn=None):
        self.fn = fn
        self.adjoint_fn = adjoint_fn
        self._cache: dict[bytes, np.ndarray] = {}

    def eval(self, lam) -> np.ndarray:
        key = _lam_key(lam)
        out = self._cache.get(key)
        if out is None:
            out = np.asarray(self.fn(lam), dtype=complex)
            self._cache[key] = out
        return out

    def adjoint(self) -> "CallableBPart":
        if self.adjoint_fn is not None:
            return CallableBPart(self.adjoint_fn, self.fn)
        return CallableBPart(lambda lam: self.eval(lam).conj().T)


def const_profile(value: complex = 1.0):
    return lambda v, z: value * np.ones(np.broadcast(
        np.asarray(v)[..., 0], np.asarray(z)[..., 0]).shape)


@dataclass
class SymbolNorms:
    """The two symbol norms: sup of operator norms and the kernel L1 norm."""

    normA: float
    normA0: float | None


@dataclass
class Symbol:
    """A mixture symbol ``sigma(x, lam) = sum_i a_i(x) b_i(lam)``.

    ``terms`` is a list of ``(a_i, b_i)`` with vectorized profiles
    ``a_i(v, z)`` and :class:`BPart` operator parts.  ``kernel_grid`` is the
    quadrature grid used for kernel-side integrals (norms, oracles).
    """

    G: HTypeStructure
    basis: HermiteBasisSpec
    terms: list
    kernel_grid: HaarGrid | None = None
    kind: str = "kernel-backed"

    @property
    def n_terms(self) -> int:
        return len(self.terms)

    def b_matrices(self, lam) -> list[np.ndarray]:
        return [part.eval(lam) for _, part in self.terms]

    def profiles(self, v, z) -> list[np.ndarray]:
        return [np.asarray(a(v, z)) for a, _ in self.terms]

    def evaluate(self, v, z, lam) -> np.ndarray:
        """The matrix ``sigma(x, lam)`` at a single point ``x = (v, z)``."""
        v = np.atleast_1d(np.asarray(v, dtype=float))
        z = np.atleast_1d(np.asarray(z, dtype=float))
        out = np.zeros((self.basis.size, self.basis.size), dtype=complex)
        for a, part in self.terms:
            out += complex(np.asarray(a(v, z))) * part.eval(lam)
        return out

    def is_kernel_backed(self) -> bool:
        return all(part.kernel() is not None for _, part in self.terms)

    def kernel_value(self, av, az, zv, zz) -> np.ndarray:
        """``kappa_x(z)`` = sum of profile values times part kernels.

        ``av, az`` are the ``x``-profile arguments, ``zv, zz`` the kernel
        arguments; all broadcast together.
        """
        out = None
        for a, part in self.terms:
            k = part.kernel()
            if k is None:
                raise ValueError("symbol has a term without explicit kernel")
            val = np.asarray(a(av, az)) * np.asarray(k(zv, zz))
            out = val if out is None else out + val
        return out

    def adjoint(self) -> "Symbol":
        terms = [((lambda a: (lambda v, z: np.conj(a(v, z))))(a),
                  part.adjoint()) for a, part in self.terms]
        return replace(self, terms=terms)

    def scaled(self, c: complex) -> "Symbol":
        terms = [((lambda a: (lambda v, z: c * np.asarray(a(v, z))))(a), part)
                 for a, part in self.terms]
        return replace(self, terms=terms)

    def plus(self, other: "Symbol") -> "Symbol":
        return replace(self, terms=self.terms + other.terms,
                       kind="kernel-backed" if (self.is_kernel_backed()
                                                and other.is_kernel_backed())
                       else "mixed")


def symbol_from_kernel(G, basis, kernel_grid: HaarGrid, profile, k) -> Symbol:
    """Symbol with kernel ``kappa_x(z) = profile(x) k(z)`` (one term)."""
    return Symbol(G, basis, [(profile, KernelBPart(G, basis, kernel_grid, k))],
                  kernel_grid, kind="kernel-backed")


def separable_symbol(G, basis, kernel_grid, profile, part: BPart) -> Symbol:
    return Symbol(G, basis, [(profile, part)], kernel_grid, kind="separable")


def multiplier_symbol(G, basis, phi, kernel_grid=None) -> Symbol:
    """Spectral multiplier symbol ``phi(H(lam))`` (no ``x`` dependence)."""
    return Symbol(G, basis, [(const_profile(), SpectralBPart(G, basis, phi))],
                  kernel_grid, kind="multiplier")


def compose(s1: Symbol, s2: Symbol) -> Symbol:
    """Pointwise product symbol ``sigma_1 sigma_2`` (kernel: ``k2 * k1``)."""
    if s1.basis.size != s2.basis.size:
        raise ValueError("basis mismatch")
    terms = []
    for a1, p1 in s1.terms:
        for a2, p2 in s2.terms:
            prof = (lambda f, g: (lambda v, z: np.asarray(f(v, z))
                                  * np.asarray(g(v, z))))(a1, a2)
            terms.append((prof, ProductBPart(p1, p2)))
    return Symbol(s1.G, s1.basis, terms, s1.kernel_grid or s2.kernel_grid,
                  kind="product")


# ---------------------------------------------------------------------------
# difference operators
# ---------------------------------------------------------------------------


def difference_general(sym: Symbol, coord) -> Symbol:
    """``Delta_phi sigma = F(phi . kappa_x)`` for a coordinate function.

    ``coord(zv, zz, lam)`` may read coordinates through the adapted basis
    (hence depend on ``lam``).  This is the ground-truth oracle route for
    all structured difference operators.
    """
    terms = []
    for a, part in sym.terms:
        k = part.kernel()
        if k is None:
            raise ValueError("difference_general requires kernel-backed terms")
        terms.append((a, KernelBPart(sym.G, sym.basis, sym.kernel_grid, k,
                                     coord=coord)))
    return replace(sym, terms=terms, kind="kernel-backed")


def _commutator_part(part: BPart, mat: np.ndarray, scale_fn) -> CallableBPart:
    def fn(lam):
        B = part.eval(lam)
        return scale_fn(lam) * (mat @ B - B @ mat)
    return CallableBPart(fn)


def difference_pq(sym: Symbol, j: int):
    """``(Delta^lam_{p_j} sigma, Delta^lam_{q_j} sigma)`` as symbols.

    ``Delta^lam_{p_j} = |lam|^{-1/2} [xi_j, .]`` and
    ``Delta^lam_{q_j} = |lam|^{-1/2} [i d_{xi_j}, .]`` on the Hermite block.
    """
    Xi, D = ladder_matrices(sym.basis)
    inv_sqrt = lambda lam: 1.0 / np.sqrt(np.linalg.norm(np.atleast_1d(lam)))
    terms_p = [(a, _commutator_part(p, Xi[j], inv_sqrt)) for a, p in sym.terms]
    terms_q = [(a, _commutator_part(p, 1j * D[j], inv_sqrt))
               for a, p in sym.terms]
    return (replace(sym, terms=terms_p, kind="derived"),
            replace(sym, terms=terms_q, kind="derived"))


def _pq_stack(sym: Symbol):
    """All ``Delta_p`` then all ``Delta_q`` applied to ``sym``."""
    out = []
    for j in range(sym.G.d):
        dp, _ = difference_pq(sym, j)
        out.append(dp)
    for j in range(sym.G.d):
        _, dq = difference_pq(sym, j)
        out.append(dq)
    return out


def difference_v(sym: Symbol):
    """Differences along the fixed frame: ``Delta_v = M(lam)^T (Delta_p; Delta_q)``.

    Returns a list of ``2d`` symbols; the parts evaluate the adapted basis
    at each requested ``lam``.
    """
    stack = _pq_stack(sym)
    G = sym.G
    out = []
    for jv in range(2 * G.d):
        terms = []
        for i_term in range(sym.n_terms):
            a = sym.terms[i_term][0]
            parts = [s.terms[i_term][1] for s in stack]

            def fn(lam, parts=parts, jv=jv):
                M = adapted_basis(G, lam)
                B = None
                for k in range(2 * G.d):
                    c = M[k, jv]
                    if abs(c) < 1e-15:
                        continue
                    term = c * parts[k].eval(lam)
                    B = term if B is None else B + term
                return B

            terms.append((a, CallableBPart(fn)))
        out.append(replace(sym, terms=terms, kind="derived"))
    return out


def difference_z(sym: Symbol, m: int, h: float = 0.05) -> Symbol:
    """Center difference ``Delta_{z_m} sigma``.

    Implemented as ``i d_{lam_m} sigma`` by central finite differences with
    one Richardson level, plus the curvature corrections

        (lam_m/|lam|) sum_j [ 1/2 Delta_{p_j} Delta_{q_j}
                              + (i/2|lam|) pi(Q_j) . Delta_{q_j}
                              + (i/2|lam|) Delta_{p_j} ( . ) pi(P_j) ] sigma,

    which is the reading of the center-difference display validated against
    the kernel-route oracle ``F(z_m kappa)``.
    """
    Xi, D = ladder_matrices(sym.basis)
    G = sym.G

    def make_fn(part):
        def fn(lam):
            lam = np.atleast_1d(np.asarray(lam, dtype=float)).copy()
            absl = np.linalg.norm(lam)
            sgn = lam[m] / absl
            hm = min(h, 0.25 * absl)

            def at(t):
                l2 = lam.copy()
                l2[m] += t
                return part.eval(l2)

            def central(step):
                return (at(step) - at(-step)) / (2.0 * step)

            dB = (4.0 * central(hm / 2.0) - central(hm)) / 3.0
            B = part.eval(lam)
            s = 1.0 / np.sqrt(absl)
            out = 1j * dB
            for j in range(G.d):
                CpB = s * (Xi[j] @ B - B @ Xi[j])
                CqB = s * 1j * (D[j] @ B - B @ D[j])
                # 1/2 Delta_p Delta_q
                out += sgn * 0.5 * s * (Xi[j] @ CqB - CqB @ Xi[j])
                # (i/2|lam|) pi(Q_j) Delta_q sigma ; pi(Q_j) = i sqrt|lam| Xi_j
                out += sgn * (0.5j / absl) * (1j * np.sqrt(absl)) * (Xi[j] @ CqB)
                # (i/2|lam|) Delta_p sigma . pi(P_j) ; pi(P_j) = sqrt|lam| D_j
                out += sgn * (0.5j / absl) * np.sqrt(absl) * (CpB @ D[j])
            return out
        return fn

    terms = [(a, CallableBPart(make_fn(part))) for a, part in sym.terms]
    return replace(sym, terms=terms, kind="derived")


# ---------------------------------------------------------------------------
# norms, cutoffs, radialization
# ---------------------------------------------------------------------------


def symbol_norms(sym: Symbol, x_sample, lam_sample,
                 norm_grid: HaarGrid | None = None) -> SymbolNorms:
    """Compute both norms of a symbol.

    ``normA``: sup over the ``x`` sample and ``lam`` sample of the operator
    norm of ``sigma(x, lam)``.  ``normA0``: quadrature of
    ``sup_x |kappa_x(z)|`` over the kernel grid (None when some term has no
    explicit kernel).  ``x_sample`` is a pair of arrays ``(vs, zs)`` with
    matching leading length.
    """
    vs, zs = x_sample
    vs = np.atleast_2d(np.asarray(vs, dtype=float))
    zs = np.atleast_2d(np.asarray(zs, dtype=float))
    avals = np.stack([np.asarray(a(vs, zs)) for a, _ in sym.terms])  # (T, nx)
    normA = 0.0
    for lam in lam_sample:
        Bs = np.stack(sym.b_matrices(lam))  # (T, n, n)
        combos = np.einsum("tx,tab->xab", avals.astype(complex), Bs)
        svals = np.linalg.svd(combos, compute_uv=False)
        normA = max(normA, float(svals[:, 0].max()))
    grid = norm_grid or sym.kernel_grid
    normA0 = None
    if grid is not None and sym.is_kernel_backed():
        kvals = np.stack([
            np.asarray(part.kernel()(grid.v_nodes[:, None, :],
                                     grid.z_nodes[None, :, :]))
            for _, part in sym.terms])  # (T, nv, nz)
        kap = np.einsum("tx,tvz->xvz", avals.astype(complex), kvals)
        sup = np.abs(kap).max(axis=0)
        normA0 = float(np.einsum("vz,v,z->", sup, grid.v_weights,
                                 grid.z_weights).real)
    return SymbolNorms(normA=normA, normA0=normA0)


def kernel_cutoff(sym: Symbol, chi, eps: float) -> Symbol:
    """Near-diagonal cutoff ``sigma_eps = F(kappa_x . chi(delta_eps .))``.

    ``chi(zv, zz)`` must be identically 1 near the origin; the returned
    symbol keeps the same ``x``-profiles with kernels multiplied by the
    dilated cutoff.
    """
    terms = []
    for a, part in sym.terms:
        k = part.kernel()
        if k is None:
            raise ValueError("kernel_cutoff requires kernel-backed terms")
        kc = (lambda kf: (lambda zv, zz:
                          np.asarray(kf(zv, zz))
                          * np.asarray(chi(eps * np.asarray(zv),
                                           eps * eps * np.asarray(zz)))))(k)
        terms.append((a, KernelBPart(sym.G, sym.basis, sym.kernel_grid, kc)))
    return replace(sym, terms=terms, kind="kernel-backed")


def rotation_2d(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def radialize_symbol(sym: Symbol, n_rot: int = 16, seed: int = 0) -> Symbol:
    """Average the kernel over rotations of the horizontal layer.

    For ``d = 1`` uses the exact equal-weight circle rule; for ``d >= 2`` a
    fixed-seed Haar sample of orthogonal matrices commuting with the
    structure is not constructed here (only ``d = 1`` is supported).
    """
    if sym.G.d != 1:
        raise NotImplementedError("radialization implemented for d = 1")
    thetas = 2.0 * np.pi * np.arange(n_rot) / n_rot
    rots = [rotation_2d(t) for t in thetas]
    terms = []
    for a, part in sym.terms:
        k = part.kernel()
        if k is None:
            raise ValueError("radialize_symbol requires kernel-backed terms")

        def k_avg(zv, zz, k=k):
            acc = None
            for R in rots:
                val = np.asarray(k(np.asarray(zv) @ R.T, zz))
                acc = val if acc is None else acc + val
            return acc / len(rots)

        terms.append((a, KernelBPart(sym.G, sym.basis, sym.kernel_grid, k_avg)))
    return replace(sym, terms=terms, kind="kernel-backed")


# ---------------------------------------------------------------------------
# x-derivatives along flows and a randomized suite
# ---------------------------------------------------------------------------


def flow_derivative_profile(G: HTypeStructure, a, direction: np.ndarray,
                            h: float = 1e-4):
    """Left-invariant derivative of a profile along ``Exp(t direction)``.

    ``direction`` is a horizontal vector (length ``2d``); returns the
    central finite-difference profile
    ``x -> [a(x Exp(h V)) - a(x Exp(-h V))] / 2h``.
    """
    V = np.asarray(direction, dtype=float)

    def da(v, z):
        br = bracket(G, v, V)  # (..., p)
        up = a(v + h * V, z + 0.5 * h * br)
        dn = a(v - h * V, z - 0.5 * h * br)
        return (np.asarray(up) - np.asarray(dn)) / (2.0 * h)

    return da


def gaussian_profile(center_v, center_z, width_v, width_z, poly=None):
    """A compactly-concentrated Gaussian bump profile on the group."""
    cv = np.asarray(center_v, dtype=float)
    cz = np.asarray(center_z, dtype=float)

    def a(v, z):
        dv = np.asarray(v) - cv
        dz = np.asarray(z) - cz
        val = np.exp(-np.sum(dv * dv, axis=-1) / (2.0 * width_v ** 2)
                     - np.sum(dz * dz, axis=-1) / (2.0 * width_z ** 2))
        if poly is not None:
            val = val * poly(v, z)
        return val

    return a


def gaussian_kernel(center_v, width_v, width_z, z_freq=0.0, phase=0.0,
                    v_poly=None):
    """Schwartz kernel: Gaussian in ``v``, modulated Gaussian in ``z``."""
    cv = np.asarray(center_v, dtype=float)

    def k(zv, zz):
        dv = np.asarray(zv) - cv
        zz1 = np.asarray(zz)[..., 0]
        val = (np.exp(-np.sum(dv * dv, axis=-1) / (2.0 * width_v ** 2))
               * np.exp(-np.sum(np.asarray(zz) ** 2, axis=-1)
                        / (2.0 * width_z ** 2)))
        if z_freq:
            val = val * np.cos(z_freq * zz1 + phase)
        if v_poly is not None:
            val = val * v_poly(zv)
        return val

    return k


def random_symbol_suite(G, basis, kernel_grid, rng, n_symbols: int,
                        n_terms: int = 2, z_freq_range=(1.6, 2.4),
                        x_width=(0.8, 1.4), x_width_z=None) -> list[Symbol]:
    """Randomized kernel-backed mixtures for property tests.

    The kernels are Gaussian-type and center-modulated so their Fourier
    content stays inside the default lambda annulus; the profiles are
    Gaussian bumps with random centers, hence compactly concentrated.  For
    quantization experiments pass ``z_freq_range=(0, 0)`` (so the symbol
    does not vanish at small frequencies) and a wide ``x_width_z`` (so
    multiplication by the profiles stays spectrally inside the annulus).
    """
    if x_width_z is None:
        x_width_z = x_width
    syms = []
    for _ in range(n_symbols):
        terms = []
        for _ in range(n_terms):
            a = gaussian_profile(rng.uniform(-0.8, 0.8, size=2 * G.d),
                                 rng.uniform(-0.8, 0.8, size=G.p),
                                 rng.uniform(*x_width),
                                 rng.uniform(*x_width_z))
            k = gaussian_kernel(rng.uniform(-0.6, 0.6, size=2 * G.d),
                                rng.uniform(0.7, 1.1),
                                rng.uniform(2.2, 3.0),
                                z_freq=rng.uniform(*z_freq_range),
                                phase=rng.uniform(0.0, np.pi))
            terms.append((a, KernelBPart(G, basis, kernel_grid, k)))
        syms.append(Symbol(G, basis, terms, kernel_grid, "kernel-backed"))
    return syms
