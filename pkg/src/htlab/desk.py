"""Frozen desk-scale configurations shared by the CLI and the test suite.

Each builder freezes grid boxes, quadrature orders and basis sizes that
were validated for the identity it serves; experiments and acceptance
tests construct their objects through these helpers so that the same
numbers are used everywhere.
"""

from __future__ import annotations

import numpy as np

from .config import RunConfig
from .fourier import FourierEngine, HermiteBasisSpec, annulus_lambda_grid
from .group import HTypeStructure, haar_grid, heisenberg, quaternionic
from .symbols import Symbol, KernelBPart, gaussian_kernel, gaussian_profile


def build_group(cfg: RunConfig) -> HTypeStructure:
    if cfg.group == "heisenberg":
        return heisenberg(cfg.d)
    return quaternionic()


def calibration_profile(v, z):
    """Schwartz function used to calibrate the Plancherel constant."""
    v = np.asarray(v)
    z = np.asarray(z)
    return np.exp(-np.sum(v * v, axis=-1) / 2.0 - z[..., 0] ** 2 / 16.0
                  + 1.5j * z[..., 0])


def schwartz_suite(seed: int = 0, n: int = 5):
    """Deterministic Schwartz-class test functions (Gaussian x polynomial
    x modulation), independent of the calibration profile."""
    rng = np.random.default_rng(seed)
    funcs = []
    for _ in range(n):
        wv = rng.uniform(0.95, 1.1)
        wz = rng.uniform(2.7, 3.0)
        om = rng.choice([-1.0, 1.0]) * rng.uniform(1.4, 1.7)
        cv = rng.uniform(-0.3, 0.3, 2)
        slope = rng.uniform(-0.3, 0.3)

        def f(v, z, wv=wv, wz=wz, om=om, cv=cv, slope=slope):
            v = np.asarray(v)
            z = np.asarray(z)
            q = np.sum((v - cv) ** 2, axis=-1)
            return ((1.0 + slope * v[..., 0])
                    * np.exp(-q / (2.0 * wv ** 2)
                             - z[..., 0] ** 2 / (2.0 * wz ** 2)
                             + 1j * om * z[..., 0]))

        funcs.append(f)
    return funcs


def desk_engine(cfg: RunConfig | None = None, calibrated: bool = True,
                scale: float = 1.0) -> FourierEngine:
    """Fourier engine for transform-level identities (Plancherel,
    inversion, Wigner marginals).  ``scale`` multiplies quadrature orders
    for grid-doubling stability checks."""
    cfg = cfg or RunConfig()
    G = build_group(cfg)
    grid = haar_grid(G, cfg.v_box, cfg.z_box,
                     int(round(cfg.v_orders * scale)),
                     int(round(cfg.z_orders * scale)))
    basis = HermiteBasisSpec(G.d, cfg.basis_n)
    lam_grid = annulus_lambda_grid(cfg.lam_min, cfg.lam_max,
                                   int(round(cfg.lam_nodes * scale)))
    engine = FourierEngine(G, grid, basis, lam_grid, c0=None)
    if calibrated:
        engine.calibrate(grid.sample(calibration_profile))
    return engine


def op_engine(cfg: RunConfig | None = None) -> FourierEngine:
    """Coarser engine for operator-level suites (symbolic calculus,
    L2 bounds); trades transform accuracy for applier speed."""
    cfg = cfg or RunConfig()
    G = build_group(cfg)
    grid = haar_grid(G, 4.5, 11.0, 48, 48)
    basis = HermiteBasisSpec(G.d, cfg.basis_n)
    lam_grid = annulus_lambda_grid(cfg.lam_min, cfg.lam_max, 48)
    return FourierEngine(G, grid, basis, lam_grid,
                         c0=(2.0 * np.pi) ** (-(G.d + G.p)))


_PROBE_DEFS = [(2.0, 1.0, 2.6, (0.0, 0.0)),
               (2.1, 0.9, 2.8, (0.4, -0.3)),
               (1.9, 1.1, 2.5, (-0.3, 0.2))]


def quantization_probes(engine: FourierEngine) -> np.ndarray:
    """Smooth modulated-Gaussian probes for expansion-remainder estimates.

    Rayleigh quotients over these probes track the continuum operator
    norm's epsilon scaling; rougher probe families (random coefficient
    fields) put weight at the frequency-cutoff edges where the discrete
    remainder saturates instead of decaying."""
    probes = []
    for om, sv, sz, cv in _PROBE_DEFS:
        def f(v, z, om=om, sv=sv, sz=sz, cv=np.asarray(cv)):
            v = np.asarray(v)
            z1 = np.asarray(z)[..., 0]
            r2 = np.sum((v - cv) ** 2, axis=-1)
            return (np.exp(-r2 / (2.0 * sv ** 2) - z1 ** 2 / (2.0 * sz ** 2))
                    * np.cos(om * z1))
        probes.append(engine.grid.sample(f))
    return np.stack(probes)


def kernel_grid(cfg: RunConfig | None = None):
    cfg = cfg or RunConfig()
    G = build_group(cfg)
    return haar_grid(G, cfg.kernel_v_box, cfg.kernel_z_box,
                     cfg.kernel_v_orders, cfg.kernel_z_orders)


def mild_symbol_pair(G, basis, kgrid, rng):
    """One random symbol from the mild suite: gentle Gaussian profile and
    kernel widths for which the operator suites were validated."""
    prof = gaussian_profile(rng.uniform(-0.5, 0.5, 2 * G.d),
                            rng.uniform(-0.5, 0.5, G.p),
                            rng.uniform(1.2, 1.8), rng.uniform(2.6, 3.4))
    kern = gaussian_kernel(rng.uniform(-0.3, 0.3, 2 * G.d),
                           rng.uniform(0.55, 0.75),
                           rng.uniform(2.2, 3.0), z_freq=0.0)
    return Symbol(G, basis, [(prof, KernelBPart(G, basis, kgrid, kern))],
                  kgrid, kind="kernel-backed")


def mild_symbol_suite(G, basis, kgrid, n_symbols: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    return [mild_symbol_pair(G, basis, kgrid, rng) for _ in range(n_symbols)]
