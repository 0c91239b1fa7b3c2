"""Semi-classical quantization: two routes, norms and expansion checks.

``Op_eps(sigma) f (x) = c0 int Tr( pi^lam_x  sigma(x, eps^2 lam)  Ff(lam) )
|lam|^d dlam`` is realized two independent ways:

* Fourier route (:class:`FourierApplier`): forward transform of the grid
  samples, multiplication by the symbol parts at ``eps^2 lam`` and an
  inverse-type trace accumulation.  This is a genuine linear map on grid
  samples; its weighted-L2 adjoint is applied term-by-term (conjugate
  profile then Hermitian part), so composite operators such as remainders
  admit power iteration.
* Kernel route (:func:`op_apply_kernel`): the convolution-kernel formula
  ``Op f(x) = int f(x delta_eps(w^{-1})) kappa_x(w) dw`` evaluated by
  quadrature at arbitrary output points; the ``w``-integral runs at unit
  scale so its resolution does not degrade as ``eps`` shrinks.  The same
  routine implements the whole ``tau``-family of quantizations with symbol
  point ``delta_tau(x) delta_{1-tau}(y)``.

Expansion checks realize the first semi-classical commutator expansions

    Op(sigma)^*   = Op(sigma^*) - eps Op(V . Delta_v sigma^*) + O(eps^2),
    Op(s1) Op(s2) = Op(s1 s2)  - eps Op(Delta_v s1 . V s2)   + O(eps^2),

by measuring remainder operator norms (power iteration) along an eps
ladder and fitting log-log slopes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .group import HTypeStructure, HaarGrid, bracket
from .fourier import FourierEngine, adapted_basis
from .symbols import (
    Symbol,
    compose,
    difference_v,
    difference_pq,
    flow_derivative_profile,
    symbol_norms,
)

__all__ = [
    "FourierApplier",
    "op_apply",
    "op_apply_kernel",
    "tau_quantize",
    "assemble_operator",
    "operator_norm",
    "loglog_slope",
    "x_derivative_symbol",
    "adjoint_correction",
    "composition_correction",
    "correction_matrix",
    "l2_bound_suite",
    "adjoint_expansion_check",
    "composition_expansion_check",
    "tau_expansion_check",
    "tau_adjoint_pairing",
]


def _profile_samples(grid: HaarGrid, a) -> np.ndarray:
    return np.asarray(a(grid.v_nodes[:, None, :], grid.z_nodes[None, :, :]))


class FourierApplier:
    """``Op_eps(sigma)`` as a linear map on Haar-grid samples."""

    def __init__(self, engine: FourierEngine, sym: Symbol, eps: float):
        if engine.c0 is None:
            raise RuntimeError("calibrate the Fourier engine first")
        self.engine = engine
        self.sym = sym
        self.eps = float(eps)
        self.a_samp = [_profile_samples(engine.grid, a) for a, _ in sym.terms]
        # symbol parts at the semi-classically scaled frequencies
        self.B = [np.stack([part.eval(self.eps ** 2 * lam)
                            for lam in engine.lam_grid.nodes])
                  for _, part in sym.terms]
        self.dfac = (engine.c0 * engine.lam_grid.weights
                     * engine.lam_grid.abs ** engine.G.d)

    def apply(self, samples: np.ndarray) -> np.ndarray:
        """Apply to samples of shape ``(..., n_v, n_z)`` (batched)."""
        eng = self.engine
        samples = np.asarray(samples)
        lead = samples.shape[:-2]
        F = eng.forward(samples)  # (..., n_lam, n, n)
        grid = eng.grid
        outs = [np.zeros(lead + (grid.n_v, grid.n_z), dtype=complex)
                for _ in self.sym.terms]
        for i, lam in enumerate(eng.lam_grid.nodes):
            pi = eng.pi_v(lam)
            ph = self.dfac[i] * eng.z_phase(lam)
            for t in range(self.sym.n_terms):
                C = self.B[t][i] @ F[..., i, :, :]
                tr = np.einsum("vab,...ba->...v", pi, C)
                outs[t] += tr[..., :, None] * ph
        g = np.zeros(lead + (grid.n_v, grid.n_z), dtype=complex)
        for t in range(self.sym.n_terms):
            g += self.a_samp[t] * outs[t]
        return g

    def apply_adjoint(self, samples: np.ndarray) -> np.ndarray:
        """Weighted-L2 adjoint: sum of multiplier-adjoint then profile bar.

        Forward and inverse transforms are exact adjoints with respect to
        the Haar-weighted and Plancherel-weighted inner products, so this
        is the exact discrete adjoint of :meth:`apply`.  Batched like
        :meth:`apply`.
        """
        eng = self.engine
        samples = np.asarray(samples)
        lead = samples.shape[:-2]
        grid = eng.grid
        h = np.stack([np.conj(a) * samples for a in self.a_samp])
        F = eng.forward(h)  # (T, ..., n_lam, n, n)
        out = np.zeros(lead + (grid.n_v, grid.n_z), dtype=complex)
        n = eng.basis.size
        for i, lam in enumerate(eng.lam_grid.nodes):
            pi = eng.pi_v(lam)
            C = np.zeros(lead + (n, n), dtype=complex)
            for t in range(self.sym.n_terms):
                C += self.B[t][i].conj().T @ F[t][..., i, :, :]
            tr = np.einsum("vab,...ba->...v", pi, C)
            out += self.dfac[i] * tr[..., :, None] * eng.z_phase(lam)
        return out


def op_apply(engine: FourierEngine, sym: Symbol, eps: float,
             samples: np.ndarray) -> np.ndarray:
    """Fourier-route application of ``Op_eps(sigma)`` to grid samples."""
    return FourierApplier(engine, sym, eps).apply(samples)


def op_apply_kernel(G: HTypeStructure, sym: Symbol, eps: float, f,
                    xv: np.ndarray, xz: np.ndarray,
                    w_grid: HaarGrid | None = None,
                    tau: float = 1.0) -> np.ndarray:
    """Kernel-route point evaluation of ``Op^tau_eps(sigma) f``.

    ``f`` is a vectorized callable ``(v, z) -> values``; ``xv, xz`` are the
    output points.  Uses ``Op^tau f(x) = int f(x delta_eps(w^{-1}))
    kappa_m(w) dw`` with symbol point ``m = delta_tau(x) delta_{1-tau}(y)``
    and ``y = x delta_eps(w^{-1})``.
    """
    if not 0.0 <= tau <= 1.0:
        raise ValueError("tau must lie in [0, 1]")
    grid = w_grid or sym.kernel_grid
    if grid is None:
        raise ValueError("need a quadrature grid for the kernel route")
    xv = np.atleast_2d(np.asarray(xv, dtype=float))
    xz = np.atleast_2d(np.asarray(xz, dtype=float))
    wv = grid.v_nodes
    br = bracket(G, xv[:, None, :], wv[None, :, :])  # (nx, nw, p)
    yv = xv[:, None, :] - eps * wv[None, :, :]
    out = np.zeros(xv.shape[0], dtype=complex)
    for iz, wz in enumerate(grid.z_nodes):
        yz = xz[:, None, :] - eps * eps * wz[None, None, :] - 0.5 * eps * br
        fv = np.asarray(f(yv, yz))
        if tau == 1.0:
            av, az = xv[:, None, :], xz[:, None, :]
        else:
            av = tau * xv[:, None, :] + (1.0 - tau) * yv
            az = (tau ** 2 * xz[:, None, :] + (1.0 - tau) ** 2 * yz
                  + 0.5 * tau * (1.0 - tau) * bracket(G, xv[:, None, :], yv))
        kval = sym.kernel_value(av, az, wv[None, :, :], wz[None, None, :])
        out += grid.z_weights[iz] * ((fv * kval) @ grid.v_weights)
    return out


def tau_quantize(G: HTypeStructure, sym: Symbol, tau: float, eps: float, f,
                 xv: np.ndarray, xz: np.ndarray,
                 w_grid: HaarGrid | None = None) -> np.ndarray:
    """``Op^tau_eps(sigma) f`` at points (kernel route); ``tau = 1`` is
    the standard quantization."""
    return op_apply_kernel(G, sym, eps, f, xv, xz, w_grid=w_grid, tau=tau)


def assemble_operator(G: HTypeStructure, sym: Symbol, eps: float,
                      grid: HaarGrid, tau: float = 1.0,
                      max_size: int = 5000) -> np.ndarray:
    """Dense matrix of ``Op^tau_eps(sigma)`` on a (small) Haar grid.

    Row ``x``, column ``y``: ``w_y eps^{-Q} kappa_m(delta_{1/eps}(y^{-1}x))``
    acting on the flattened ``(v, z)`` sample vector.
    """
    if not 0.0 <= tau <= 1.0:
        raise ValueError("tau must lie in [0, 1]")
    n = grid.size
    if n > max_size:
        raise ValueError(f"grid too large for dense assembly ({n})")
    xv = np.repeat(grid.v_nodes, grid.n_z, axis=0)
    xz = np.tile(grid.z_nodes, (grid.n_v, 1))
    wts = np.repeat(grid.v_weights, grid.n_z) * np.tile(grid.z_weights,
                                                        grid.n_v)
    K = np.empty((n, n), dtype=complex)
    ieps = 1.0 / eps
    for r in range(n):
        # u = y^{-1} x for all y at fixed x = row r
        uv = xv[r][None, :] - xv
        uz = xz[r][None, :] - xz - 0.5 * bracket(G, xv, xv[r][None, :] - xv)
        dv = ieps * uv
        dz = ieps * ieps * uz
        if tau == 1.0:
            av, az = xv[r][None, :], xz[r][None, :]
        else:
            av = tau * xv[r][None, :] + (1.0 - tau) * xv
            az = (tau ** 2 * xz[r][None, :] + (1.0 - tau) ** 2 * xz
                  + 0.5 * tau * (1.0 - tau)
                  * bracket(G, np.broadcast_to(xv[r], xv.shape), xv))
        K[r] = (eps ** (-G.Q)
                * sym.kernel_value(av, az, dv, dz) * wts)
    return K


def operator_norm(apply_fn, adjoint_fn, grid: HaarGrid, n_iter: int = 120,
                  tol: float = 1e-5, seed: int = 0) -> float:
    """Top singular value of a grid-sample operator by power iteration.

    Iterates ``x <- A^dagger A x`` in the Haar-weighted inner product with
    a deterministic random start; returns the converged ``||A x||``.
    """
    rng = np.random.default_rng(seed)
    x = (rng.standard_normal((grid.n_v, grid.n_z))
         + 1j * rng.standard_normal((grid.n_v, grid.n_z)))
    x /= grid.l2_norm(x)
    est_prev = -1.0
    est = 0.0
    for _ in range(n_iter):
        y = apply_fn(x)
        est = float(grid.l2_norm(y))
        if est == 0.0:
            return 0.0
        x = adjoint_fn(y)
        nx = float(grid.l2_norm(x))
        if nx == 0.0:
            return est
        x /= nx
        if abs(est - est_prev) <= tol * max(est, 1e-300):
            break
        est_prev = est
    return est


def loglog_slope(eps_list, values) -> float:
    """Least-squares slope of ``log(values)`` against ``log(eps)``."""
    e = np.log(np.asarray(eps_list, dtype=float))
    v = np.log(np.maximum(np.asarray(values, dtype=float), 1e-300))
    return float(np.polyfit(e, v, 1)[0])


# ---------------------------------------------------------------------------
# first-order correction symbols
# ---------------------------------------------------------------------------


def x_derivative_symbol(G: HTypeStructure, sym: Symbol, k: int,
                        h: float = 1e-3) -> Symbol:
    """Left-invariant derivative of the profiles along the fixed frame
    vector ``V_k`` (differences on profiles only)."""
    e = np.zeros(2 * G.d)
    e[k] = 1.0
    terms = [(flow_derivative_profile(G, a, e, h), part)
             for a, part in sym.terms]
    from dataclasses import replace
    return replace(sym, terms=terms, kind="derived")


def adjoint_correction(G: HTypeStructure, sym: Symbol,
                       h: float = 1e-3) -> Symbol:
    """``V . Delta_v sigma^*``: the first-order adjoint correction symbol."""
    star = sym.adjoint()
    parts = difference_v(star)
    out = None
    for k in range(2 * G.d):
        term = x_derivative_symbol(G, parts[k], k, h)
        out = term if out is None else out.plus(term)
    return out


def composition_correction(G: HTypeStructure, s1: Symbol, s2: Symbol,
                           h: float = 1e-3) -> Symbol:
    """``Delta_v s1 . V s2``: the first-order composition correction."""
    d1 = difference_v(s1)
    out = None
    for k in range(2 * G.d):
        term = compose(d1[k], x_derivative_symbol(G, s2, k, h))
        out = term if out is None else out.plus(term)
    return out


def correction_matrix(G: HTypeStructure, s1: Symbol, s2: Symbol | None,
                      xv, xz, lam, form: str = "v",
                      h: float = 1e-3) -> np.ndarray:
    """Evaluate the first-order correction at a point in either frame.

    ``form="v"`` uses the fixed frame (``Delta_v``, coordinate flows);
    ``form="pq"`` uses the lambda-adapted frame with the left-invariant
    fields ``P_j, Q_j`` expanded linearly in the fixed frame.  With
    ``s2 = None`` the adjoint-type contraction ``sum_j X_j(Delta_X s1)`` is
    evaluated instead of the composition-type ``sum_j Delta_X s1 . X_j s2``.
    """
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    d2 = 2 * G.d

    def frame_rows():
        if form == "v":
            return np.eye(d2)
        if form == "pq":
            return adapted_basis(G, lam)
        raise ValueError("form must be 'v' or 'pq'")

    # difference symbols along the frame
    if form == "v":
        diffs = difference_v(s1)
    else:
        diffs = []
        for j in range(G.d):
            dp, _ = difference_pq(s1, j)
            diffs.append(dp)
        for j in range(G.d):
            _, dq = difference_pq(s1, j)
            diffs.append(dq)
    rows = frame_rows()
    xv = np.atleast_1d(np.asarray(xv, dtype=float))
    xz = np.atleast_1d(np.asarray(xz, dtype=float))
    out = np.zeros((s1.basis.size, s1.basis.size), dtype=complex)
    for j in range(d2):
        # left-invariant field along frame row j, expanded in fixed frame
        if s2 is None:
            acc = np.zeros_like(out)
            for k in range(d2):
                c = rows[j, k]
                if abs(c) < 1e-15:
                    continue
                acc += c * x_derivative_symbol(G, diffs[j], k,
                                               h).evaluate(xv, xz, lam)
            out += acc
        else:
            D1 = diffs[j].evaluate(xv, xz, lam)
            acc = np.zeros_like(out)
            for k in range(d2):
                c = rows[j, k]
                if abs(c) < 1e-15:
                    continue
                acc += c * x_derivative_symbol(G, s2, k, h).evaluate(xv, xz,
                                                                     lam)
            out += D1 @ acc
    return out


# ---------------------------------------------------------------------------
# suites and expansion checks
# ---------------------------------------------------------------------------


def band_limited_probes(engine: FourierEngine, n_probe: int = 6,
                        seed: int = 0) -> np.ndarray:
    """Stack of smooth probe functions with controlled Fourier content.

    Each probe is synthesized by the inverse transform of random
    coefficient fields windowed to vanish at the lambda-annulus edges and
    damped at high Hermite indices, so norm estimates over the probes see
    the operator away from the discretization's band-edge artifacts.
    """
    rng = np.random.default_rng(seed)
    lg = engine.lam_grid
    t = ((np.log(lg.abs) - np.log(lg.abs.min()))
         / (np.log(lg.abs.max()) - np.log(lg.abs.min())))
    win = np.sin(np.pi * t) ** 4
    deg = engine.basis.total_degree()
    damp = np.exp(-3.0 * (deg / max(engine.basis.N - 1, 1)) ** 2)
    damp2 = np.outer(damp, damp)
    probes = []
    n = engine.basis.size
    for _ in range(n_probe):
        mats = (rng.standard_normal((len(lg.nodes), n, n))
                + 1j * rng.standard_normal((len(lg.nodes), n, n)))
        coeffs = mats * damp2[None, :, :] * win[:, None, None]
        f = engine.inverse(coeffs)
        probes.append(f / engine.grid.l2_norm(f))
    return np.stack(probes)


def shell_probes(engine: FourierEngine, lam_target: float, deg_target: int,
                 width: float = 0.15, n_probe: int = 4,
                 seed: int = 0) -> np.ndarray:
    """Probes concentrated on one spectral shell.

    Coefficients live on the Hermite row of total degree ``deg_target``
    under a narrow log-lambda window at ``lam_target``; the Rayleigh
    quotient of a Fourier multiplier ``phi(|lam|(2 deg + d))`` over such a
    probe approaches ``|phi|`` at the shell, which realizes the sup of the
    multiplier when the shell is chosen at its maximizer.
    """
    rng = np.random.default_rng(seed)
    lg = engine.lam_grid
    win = np.exp(-((np.log(lg.abs) - np.log(lam_target)) / width) ** 2)
    deg = engine.basis.total_degree()
    row = (deg == deg_target).astype(float)
    n = engine.basis.size
    probes = []
    for _ in range(n_probe):
        vec = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        coeffs = (win[:, None, None]
                  * np.outer(row, vec)[None, :, :])
        f = engine.inverse(coeffs)
        probes.append(f / engine.grid.l2_norm(f))
    return np.stack(probes)


def l2_bound_suite(engine: FourierEngine, syms, eps_list, x_sample,
                   lam_sample, n_iter: int = 60, seed: int = 0,
                   probes: np.ndarray | None = None):
    """Rows of ``(index, eps, op_norm, normA, normA0, ratio)`` for a suite.

    With ``probes`` the operator norm is estimated as the max Rayleigh
    quotient ``||Op f|| / ||f||`` over the probe set (the discretized
    operator's power-iteration norm overshoots on vectors concentrated at
    the sharp annulus edges, an artifact of the frequency cutoff rather
    than of the quantization); without probes it is the full
    power-iteration norm.  The ratio uses the kernel L1 norm ``normA0``
    when available and falls back to ``normA`` otherwise.
    """
    if probes is not None:
        probes = np.asarray(probes)
        pn = np.array([float(engine.grid.l2_norm(p)) for p in probes])
    rows = []
    for i, sym in enumerate(syms):
        norms = symbol_norms(sym, x_sample, lam_sample)
        denom = norms.normA0 if norms.normA0 is not None else norms.normA
        for eps in eps_list:
            ap = FourierApplier(engine, sym, eps)
            if probes is not None:
                nrm = _probe_ratio(engine.grid, ap.apply(probes), pn)
            else:
                nrm = operator_norm(ap.apply, ap.apply_adjoint, engine.grid,
                                    n_iter=n_iter, seed=seed)
            rows.append({"index": i, "eps": float(eps), "op_norm": nrm,
                         "normA": norms.normA, "normA0": norms.normA0,
                         "ratio": nrm / denom})
    return rows


def _probe_ratio(grid: HaarGrid, outputs: np.ndarray,
                 probe_norms: np.ndarray) -> float:
    """Max over probes of ``||R f|| / ||f||`` for batched outputs."""
    out_norms = np.array([float(grid.l2_norm(o)) for o in outputs])
    return float(np.max(out_norms / probe_norms))


def adjoint_expansion_check(engine: FourierEngine, sym: Symbol, eps_list,
                            probes: np.ndarray) -> dict:
    """Remainder sizes and slopes for the adjoint expansion.

    ``probes`` is a stack of grid samples ``(n_probe, n_v, n_z)`` of smooth
    functions whose Fourier content lies well inside the lambda annulus.
    Remainder size at each ``eps`` is the max Rayleigh quotient
    ``||R f|| / ||f||`` over the probe family — a lower bound for the
    operator norm that carries its ``eps`` scaling while staying clear of
    the band-edge artifacts of the sharp discrete frequency cutoff.
    """
    G = engine.G
    corr = adjoint_correction(G, sym)
    star = sym.adjoint()
    probes = np.asarray(probes)
    pn = np.array([float(engine.grid.l2_norm(p)) for p in probes])
    r0, r1 = [], []
    for eps in eps_list:
        A = FourierApplier(engine, sym, eps)
        S = FourierApplier(engine, star, eps)
        C = FourierApplier(engine, corr, eps)
        base = A.apply_adjoint(probes) - S.apply(probes)
        r0.append(_probe_ratio(engine.grid, base, pn))
        r1.append(_probe_ratio(engine.grid, base + eps * C.apply(probes), pn))
    return {"eps": list(map(float, eps_list)), "zeroth": r0, "first": r1,
            "slope0": loglog_slope(eps_list, r0),
            "slope1": loglog_slope(eps_list, r1)}


def composition_expansion_check(engine: FourierEngine, s1: Symbol,
                                s2: Symbol, eps_list,
                                probes: np.ndarray) -> dict:
    """Remainder sizes and slopes for the composition expansion (probe
    Rayleigh quotients, see :func:`adjoint_expansion_check`)."""
    G = engine.G
    prod = compose(s1, s2)
    corr = composition_correction(G, s1, s2)
    probes = np.asarray(probes)
    pn = np.array([float(engine.grid.l2_norm(p)) for p in probes])
    r0, r1 = [], []
    for eps in eps_list:
        A1 = FourierApplier(engine, s1, eps)
        A2 = FourierApplier(engine, s2, eps)
        P = FourierApplier(engine, prod, eps)
        C = FourierApplier(engine, corr, eps)
        base = A1.apply(A2.apply(probes)) - P.apply(probes)
        r0.append(_probe_ratio(engine.grid, base, pn))
        r1.append(_probe_ratio(engine.grid, base + eps * C.apply(probes), pn))
    return {"eps": list(map(float, eps_list)), "zeroth": r0, "first": r1,
            "slope0": loglog_slope(eps_list, r0),
            "slope1": loglog_slope(eps_list, r1)}


def tau_expansion_check(G: HTypeStructure, sym: Symbol, tau: float, eps_list,
                        probes, x_grid: HaarGrid,
                        w_grid: HaarGrid | None = None) -> dict:
    """Decay of ``||Op^tau - Op||`` estimated on a probe family.

    For each ``eps`` the norm is the max over normalized probe functions of
    the weighted-L2 norm of ``(Op^tau - Op^1) f`` on ``x_grid`` (a Rayleigh
    lower bound that carries the same ``eps`` scaling as the operator
    norm).
    """
    xv = np.repeat(x_grid.v_nodes, x_grid.n_z, axis=0)
    xz = np.tile(x_grid.z_nodes, (x_grid.n_v, 1))
    norms = []
    for eps in eps_list:
        best = 0.0
        for f in probes:
            d = (op_apply_kernel(G, sym, eps, f, xv, xz, w_grid, tau=tau)
                 - op_apply_kernel(G, sym, eps, f, xv, xz, w_grid, tau=1.0))
            dn = float(x_grid.l2_norm(d.reshape(x_grid.n_v, x_grid.n_z)))
            fn = float(x_grid.l2_norm(
                np.asarray(f(x_grid.v_nodes[:, None, :],
                             x_grid.z_nodes[None, :, :]))))
            best = max(best, dn / fn)
        norms.append(best)
    return {"eps": list(map(float, eps_list)), "norms": norms,
            "slope": loglog_slope(eps_list, norms)}


def tau_adjoint_pairing(G: HTypeStructure, sym: Symbol, eps: float, f, g,
                        x_grid: HaarGrid,
                        w_grid: HaarGrid | None = None):
    """Both sides of ``(Op^1(sigma) f, g) = (f, Op^0(sigma^*) g)``."""
    xv = np.repeat(x_grid.v_nodes, x_grid.n_z, axis=0)
    xz = np.tile(x_grid.z_nodes, (x_grid.n_v, 1))
    w = (np.repeat(x_grid.v_weights, x_grid.n_z)
         * np.tile(x_grid.z_weights, x_grid.n_v))
    fx = np.asarray(f(xv, xz))
    gx = np.asarray(g(xv, xz))
    lhs_vals = op_apply_kernel(G, sym, eps, f, xv, xz, w_grid, tau=1.0)
    rhs_vals = op_apply_kernel(G, sym.adjoint(), eps, g, xv, xz, w_grid,
                               tau=0.0)
    lhs = complex(np.sum(lhs_vals * np.conj(gx) * w))
    rhs = complex(np.sum(fx * np.conj(rhs_vals) * w))
    return lhs, rhs
