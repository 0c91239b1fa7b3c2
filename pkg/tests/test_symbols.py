"""Symbol algebra, difference operators (kernel-route oracle), norms."""

import numpy as np
import pytest

from htlab.fourier import (
    HermiteBasisSpec,
    adapted_basis,
    infinitesimal_rep,
    sublaplacian_symbol,
)
from htlab.group import haar_grid, heisenberg
from htlab.symbols import (
    ConstBPart,
    KernelBPart,
    LambdaWindowBPart,
    SpectralBPart,
    Symbol,
    compose,
    const_profile,
    difference_general,
    difference_pq,
    difference_v,
    difference_z,
    gaussian_kernel,
    gaussian_profile,
    kernel_cutoff,
    multiplier_symbol,
    radialize_symbol,
    random_symbol_suite,
    symbol_from_kernel,
    symbol_norms,
)

G1 = heisenberg(1)
BASIS = HermiteBasisSpec(1, 18)
KGRID = haar_grid(G1, 4.5, 10.0, 36, 48)
X = (np.array([0.3, -0.2]), np.array([0.1]))
MASK = BASIS.interior_mask()
IX = np.ix_(MASK, MASK)


def _suite(n, seed=0):
    return random_symbol_suite(G1, BASIS, KGRID, np.random.default_rng(seed),
                               n)


def test_symbol_evaluate_is_linear_mixture():
    sym = _suite(1)[0]
    lam = np.array([0.9])
    direct = sym.evaluate(*X, lam)
    acc = np.zeros_like(direct)
    for a, part in sym.terms:
        acc += complex(np.asarray(a(X[0], X[1]))) * part.eval(lam)
    assert np.max(np.abs(direct - acc)) <= 1e-14


def test_adjoint_symbol_is_conjugate_transpose():
    sym = _suite(1, seed=3)[0]
    lam = np.array([-0.7])
    A = sym.evaluate(*X, lam)
    B = sym.adjoint().evaluate(*X, lam)
    assert np.max(np.abs((B - A.conj().T)[IX])) <= 1e-8


def test_compose_evaluates_to_matrix_product():
    s1, s2 = _suite(2, seed=5)
    lam = np.array([1.1])
    P = compose(s1, s2).evaluate(*X, lam)
    ref = s1.evaluate(*X, lam) @ s2.evaluate(*X, lam)
    assert np.max(np.abs(P - ref)) <= 1e-12


@pytest.mark.parametrize("lam", [np.array([0.7]), np.array([-1.3])])
def test_difference_pq_matches_kernel_oracle(lam):
    """Criterion: Delta_p, Delta_q vs F(coordinate * kappa) on the interior
    block; a 20-symbol random suite, tolerance 1e-5 (relative)."""
    syms = _suite(20, seed=1)

    def coord_p(zv, zz, lv):
        M = adapted_basis(G1, lv)
        return np.einsum("k,...k->...", M[0], zv)

    def coord_q(zv, zz, lv):
        M = adapted_basis(G1, lv)
        return np.einsum("k,...k->...", M[G1.d], zv)

    for sym in syms:
        dp, dq = difference_pq(sym, 0)
        for dsym, coord in ((dp, coord_p), (dq, coord_q)):
            a = dsym.evaluate(*X, lam)[IX]
            b = difference_general(sym, coord).evaluate(*X, lam)[IX]
            assert np.max(np.abs(a - b)) <= 1e-5 * max(np.max(np.abs(b)),
                                                       1e-12)


def test_difference_v_matches_kernel_oracle():
    syms = _suite(20, seed=2)
    lam = np.array([0.9])
    for sym in syms:
        dvs = difference_v(sym)
        for jv in range(2 * G1.d):
            a = dvs[jv].evaluate(*X, lam)[IX]
            oracle = difference_general(
                sym, lambda zv, zz, lv, jv=jv: zv[..., jv])
            b = oracle.evaluate(*X, lam)[IX]
            assert np.max(np.abs(a - b)) <= 1e-5 * max(np.max(np.abs(b)),
                                                       1e-12)


@pytest.mark.parametrize("lam", [np.array([0.7]), np.array([-1.1])])
def test_difference_z_matches_kernel_oracle(lam):
    syms = _suite(20, seed=4)
    for sym in syms:
        dz = difference_z(sym, 0)
        oracle = difference_general(sym, lambda zv, zz, lv: zz[..., 0])
        a = dz.evaluate(*X, lam)[IX]
        b = oracle.evaluate(*X, lam)[IX]
        # Delta_z uses a lambda-derivative route; agreement with the
        # kernel-route oracle is limited by quadrature, so compare
        # entrywise relative to 1 + |oracle|.
        assert np.max(np.abs(a - b) / (1.0 + np.abs(b))) <= 1e-5


def test_delta_h_identities_exact():
    """Delta_p H(lam) = 2 pi(P), Delta_q H(lam) = 2 pi(Q) exactly (1e-12)
    on the interior block."""
    Hs = multiplier_symbol(G1, BASIS, lambda z: z)
    dpH, dqH = difference_pq(Hs, 0)
    for lam in (np.array([0.9]), np.array([-0.4])):
        gen = infinitesimal_rep(G1, lam, BASIS)
        zero = (np.zeros(2), np.zeros(1))
        rp = (dpH.evaluate(*zero, lam) - 2.0 * gen["P"][0])[IX]
        rq = (dqH.evaluate(*zero, lam) - 2.0 * gen["Q"][0])[IX]
        assert np.max(np.abs(rp)) <= 1e-12
        assert np.max(np.abs(rq)) <= 1e-12


def test_difference_of_identity_multiplier_vanishes():
    sym = multiplier_symbol(G1, BASIS, lambda z: np.ones_like(z))
    dp, dq = difference_pq(sym, 0)
    lam = np.array([0.8])
    assert np.max(np.abs(dp.evaluate(np.zeros(2), np.zeros(1), lam))) == 0.0
    assert np.max(np.abs(dq.evaluate(np.zeros(2), np.zeros(1), lam))) == 0.0


def test_multiplier_symbol_is_spectral_diagonal():
    phi = lambda z: np.exp(-0.3 * z)
    sym = multiplier_symbol(G1, BASIS, phi)
    lam = np.array([0.6])
    H = np.diag(sublaplacian_symbol(G1, lam, BASIS)).real
    assert np.allclose(sym.evaluate(np.zeros(2), np.zeros(1), lam),
                       np.diag(phi(H)), atol=1e-14)


def test_symbol_norms_trivial_cases():
    """Multiplication symbol -> normA = sup |a| over the x sample; zero
    symbol -> 0."""
    xs = (np.array([[0.0, 0.0], [1.0, -0.5], [0.2, 0.4]]),
          np.array([[0.0], [0.3], [-0.6]]))
    lam_sample = np.array([[0.5], [1.5]])
    a = lambda v, z: 2.0 + np.asarray(v)[..., 0]
    sym = Symbol(G1, BASIS, [(a, ConstBPart(np.eye(BASIS.size)))], KGRID,
                 kind="mult")
    norms = symbol_norms(sym, xs, lam_sample)
    assert np.isclose(norms.normA, 3.0, atol=1e-12)
    zero = Symbol(G1, BASIS,
                  [(const_profile(0.0), ConstBPart(np.eye(BASIS.size)))],
                  KGRID, kind="zero")
    assert symbol_norms(zero, xs, lam_sample).normA <= 1e-15


def test_norm_a0_gaussian_closed_form():
    """normA0 of a positive x-independent Gaussian kernel equals its L1
    norm, known in closed form."""
    wv, wz = 0.7, 2.0
    k = gaussian_kernel([0.0, 0.0], wv, wz)
    sym = symbol_from_kernel(G1, BASIS, KGRID, const_profile(1.0), k)
    norms = symbol_norms(sym, (np.zeros((1, 2)), np.zeros((1, 1))),
                         np.array([[1.0]]))
    ref = (2.0 * np.pi * wv ** 2) * np.sqrt(2.0 * np.pi) * wz
    assert abs(norms.normA0 - ref) <= 1e-5 * ref


def test_kernel_cutoff_identity_chi():
    sym = _suite(1, seed=6)[0]
    cut = kernel_cutoff(sym, lambda zv, zz: np.ones(
        np.asarray(zv).shape[:-1]), 0.5)
    lam = np.array([0.8])
    assert np.max(np.abs(cut.evaluate(*X, lam)
                         - sym.evaluate(*X, lam))) <= 1e-12


def test_lambda_window_part_scales_base():
    k = gaussian_kernel([0.1, 0.0], 0.7, 2.4)
    base = KernelBPart(G1, BASIS, KGRID, k)
    chi = lambda r: 1.0 / (1.0 + r)
    part = LambdaWindowBPart(base, chi)
    lam = np.array([0.9])
    assert np.allclose(part.eval(lam), chi(0.9) * base.eval(lam), atol=1e-13)
    # adjoint consistency
    A = part.adjoint().eval(lam)
    assert np.max(np.abs((A - part.eval(lam).conj().T)[IX])) <= 1e-8


def test_radialize_fixes_radial_symbols():
    """A v-radial kernel is a fixed point of the rotation average."""
    k = lambda zv, zz: np.exp(-np.sum(np.asarray(zv) ** 2, axis=-1)
                              - np.asarray(zz)[..., 0] ** 2 / 4.0)
    sym = symbol_from_kernel(G1, BASIS, KGRID, const_profile(1.0), k)
    rad = radialize_symbol(sym, n_rot=8)
    lam = np.array([1.2])
    assert np.max(np.abs(rad.evaluate(*X, lam)
                         - sym.evaluate(*X, lam))) <= 1e-10


def test_spectral_vs_kernel_route_for_heat_multiplier():
    """The same operator through two constructions: phi(H) as a spectral
    multiplier versus the Fourier transform of its explicit kernel is
    exercised indirectly: phi(H) diagonals must match
    phi(|lam| (2a + d))."""
    phi = lambda z: np.exp(-0.5 * z)
    part = SpectralBPart(G1, BASIS, phi)
    lam = np.array([0.85])
    deg = BASIS.total_degree()
    assert np.allclose(np.diag(part.eval(lam)),
                       phi(0.85 * (2 * deg + 1)), atol=1e-14)


def test_gaussian_profile_and_kernel_shapes():
    a = gaussian_profile([0.1, -0.2], [0.05], 1.3, 2.7)
    vals = np.asarray(a(np.zeros((4, 2)), np.zeros((4, 1))))
    assert vals.shape == (4,)
    k = gaussian_kernel([0.0, 0.0], 0.6, 2.5)
    kv = np.asarray(k(np.zeros((3, 5, 2)), np.zeros((3, 5, 1))))
    assert kv.shape == (3, 5)
