"""Group layer: axioms, dilations, H-type structure, Haar quadrature."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from htlab.group import (
    GroupElement,
    bracket,
    convolve,
    dilate,
    group_inverse,
    group_product,
    haar_grid,
    heisenberg,
    homogeneous_norm,
    product_arrays,
    quaternionic,
    structure_from_json,
    structure_to_json,
)

RNG = np.random.default_rng(42)


def random_element(G, rng):
    return GroupElement(v=rng.standard_normal(2 * G.d),
                        z=rng.standard_normal(G.p))


@pytest.mark.parametrize("make", [heisenberg, quaternionic])
def test_group_axioms_random_tuples(make):
    G = make()
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(1000):
        x, y, w = (random_element(G, rng) for _ in range(3))
        lhs = group_product(G, group_product(G, x, y), w)
        rhs = group_product(G, x, group_product(G, y, w))
        worst = max(worst, np.max(np.abs(lhs.v - rhs.v)),
                    np.max(np.abs(lhs.z - rhs.z)))
        e = group_product(G, x, group_inverse(x))
        worst = max(worst, np.max(np.abs(e.v)), np.max(np.abs(e.z)))
    assert worst <= 1e-12


@pytest.mark.parametrize("make", [heisenberg, quaternionic])
def test_dilations_are_automorphisms(make):
    G = make()
    rng = np.random.default_rng(3)
    for _ in range(200):
        x, y = random_element(G, rng), random_element(G, rng)
        t = float(rng.uniform(0.1, 3.0))
        lhs = dilate(group_product(G, x, y), t)
        rhs = group_product(G, dilate(x, t), dilate(y, t))
        assert np.max(np.abs(lhs.v - rhs.v)) <= 1e-12
        assert np.max(np.abs(lhs.z - rhs.z)) <= 1e-12


@pytest.mark.parametrize("make", [heisenberg, quaternionic])
def test_htype_condition(make):
    """J(lam)^2 = -|lam|^2 I on 1000 random covectors."""
    G = make()
    rng = np.random.default_rng(11)
    for _ in range(1000):
        lam = rng.standard_normal(G.p)
        J = G.J_lambda(lam)
        res = J @ J + float(lam @ lam) * np.eye(2 * G.d)
        assert np.max(np.abs(res)) <= 1e-12
        assert np.max(np.abs(J + J.T)) <= 1e-12


def test_bracket_antisymmetric_and_central():
    G = heisenberg(1)
    rng = np.random.default_rng(5)
    u, v = rng.standard_normal(2), rng.standard_normal(2)
    assert np.allclose(bracket(G, u, v), -bracket(G, v, u), atol=1e-14)
    # the product differs from the abelian sum exactly by the half bracket
    x = GroupElement(v=u, z=np.zeros(1))
    y = GroupElement(v=v, z=np.zeros(1))
    xy = group_product(G, x, y)
    assert np.allclose(xy.z, 0.5 * bracket(G, u, v), atol=1e-14)


def test_homogeneous_norm_scaling():
    G = heisenberg(1)
    rng = np.random.default_rng(1)
    v = rng.standard_normal(2)
    z = rng.standard_normal(1)
    for t in (0.5, 2.0, 3.7):
        x = dilate(GroupElement(v=v, z=z), t)
        assert np.isclose(float(homogeneous_norm(x.v, x.z)),
                          t * float(homogeneous_norm(v, z)), rtol=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_product_arrays_matches_elementwise(seed):
    G = heisenberg(1)
    rng = np.random.default_rng(seed)
    vx, zx = rng.standard_normal((4, 2)), rng.standard_normal((4, 1))
    vy, zy = rng.standard_normal((4, 2)), rng.standard_normal((4, 1))
    v, z = product_arrays(G, vx, zx, vy, zy)
    for i in range(4):
        ref = group_product(G, GroupElement(v=vx[i], z=zx[i]),
                            GroupElement(v=vy[i], z=zy[i]))
        assert np.allclose(v[i], ref.v, atol=1e-14)
        assert np.allclose(z[i], ref.z, atol=1e-14)


def test_haar_grid_integrates_gaussian():
    """Quadrature against the closed form
    int exp(-|v|^2/2 - z^2) dv dz = 2 pi sqrt(pi)."""
    G = heisenberg(1)
    grid = haar_grid(G, 8.0, 6.0, 48, 48)
    vals = grid.sample(lambda v, z: np.exp(
        -np.sum(np.asarray(v) ** 2, axis=-1) / 2.0
        - np.asarray(z)[..., 0] ** 2))
    assert np.isclose(complex(grid.integrate(vals)).real,
                      2.0 * np.pi * np.sqrt(np.pi), rtol=1e-12)


def test_haar_measure_is_inversion_invariant():
    """int f(x^{-1}) dx = int f(x) dx for Lebesgue = Haar on the group."""
    G = heisenberg(1)
    grid = haar_grid(G, 8.0, 8.0, 40, 40)

    def f(v, z):
        v = np.asarray(v)
        z = np.asarray(z)
        return np.exp(-np.sum(v ** 2, axis=-1) / 2.0 - z[..., 0] ** 2 / 2.0
                      + 0.3 * v[..., 0] - 0.2 * z[..., 0])

    direct = complex(grid.integrate(grid.sample(f)))
    flipped = complex(grid.integrate(grid.sample(
        lambda v, z: f(-np.asarray(v), -np.asarray(z)))))
    assert abs(direct - flipped) / abs(direct) <= 1e-12


def test_convolution_agrees_with_commutative_case():
    """For functions of z alone the group convolution reduces to the
    abelian one; checked against an independent direct quadrature."""
    G = heisenberg(1)
    grid = haar_grid(G, 6.0, 10.0, 24, 64)

    def f(v, z):
        return np.exp(-np.sum(np.asarray(v) ** 2, axis=-1)
                      - np.asarray(z)[..., 0] ** 2)

    conv = convolve(G, grid, f, f)
    # direct oracle at one point
    iv, iz = 3, 10
    x_v, x_z = grid.v_nodes[iv], grid.z_nodes[iz]
    yv = grid.v_nodes[:, None, :]
    yz = grid.z_nodes[None, :, :]
    wv, wz = product_arrays(G, x_v, x_z, -yv, -yz)
    vals = np.asarray(f(yv, yz)) * np.asarray(
        np.exp(-np.sum(wv ** 2, axis=-1) - wz[..., 0] ** 2))
    oracle = np.einsum("i,ik,k->", grid.v_weights, vals, grid.z_weights)
    assert abs(conv[iv, iz] - oracle) <= 1e-10 * max(1.0, abs(oracle))


def test_structure_roundtrip():
    G = quaternionic()
    G2 = structure_from_json(structure_to_json(G))
    assert G2.d == G.d and G2.p == G.p
    lam = np.array([0.3, -0.7, 1.1])
    assert np.allclose(G2.J_lambda(lam), G.J_lambda(lam), atol=1e-15)
