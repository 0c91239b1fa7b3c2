"""Step-2 H-type group structures, group operations and Haar quadrature.

An H-type structure on ``R^{2d} x R^p`` is encoded by ``p`` skew-symmetric
orthogonal matrices ``J^(m)`` of size ``2d`` satisfying the Clifford-type
anti-commutation relations

    J^(m) J^(l) + J^(l) J^(m) = -2 delta_{ml} I.

The bracket of two horizontal vectors is ``[U, V]_m = U^T J^(m) V`` and the
group law on exponential coordinates ``(v, z)`` is the step-2
Baker-Campbell-Hausdorff product.  Dilations act by ``t`` on the horizontal
layer and ``t^2`` on the center, so the homogeneous dimension is
``Q = 2d + 2p``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "HTypeStructure",
    "GroupElement",
    "HaarGrid",
    "heisenberg",
    "quaternionic",
    "make_from_matrices",
    "bracket",
    "group_product",
    "group_inverse",
    "dilate",
    "homogeneous_norm",
    "exp_coords",
    "haar_grid",
    "convolve",
    "structure_to_json",
    "structure_from_json",
    "save_grid",
    "load_grid",
]

_ATOL = 1e-12


@dataclass(frozen=True)
class HTypeStructure:
    """An H-type group, given by its bracket matrices.

    Parameters
    ----------
    d : int
        Half the dimension of the horizontal layer ``v`` (so ``dim v = 2d``).
    p : int
        Dimension of the center ``z``.
    J : ndarray, shape (p, 2d, 2d)
        Stack of skew-symmetric orthogonal matrices defining the bracket.
    """

    d: int
    p: int
    J: np.ndarray = field(repr=False)

    def __post_init__(self):
        J = np.asarray(self.J, dtype=float)
        if J.shape != (self.p, 2 * self.d, 2 * self.d):
            raise ValueError(
                f"J has shape {J.shape}, expected {(self.p, 2 * self.d, 2 * self.d)}"
            )
        object.__setattr__(self, "J", J)
        _validate_htype(J)

    @property
    def Q(self) -> int:
        """Homogeneous dimension ``2d + 2p``."""
        return 2 * self.d + 2 * self.p

    @property
    def dim_v(self) -> int:
        return 2 * self.d

    @property
    def dim(self) -> int:
        """Topological dimension ``2d + p``."""
        return 2 * self.d + self.p

    def J_lambda(self, lam: np.ndarray) -> np.ndarray:
        """Return ``sum_m lam_m J^(m)`` for a center covector ``lam``."""
        lam = np.atleast_1d(np.asarray(lam, dtype=float))
        return np.tensordot(lam, self.J, axes=(0, 0))


def _validate_htype(J: np.ndarray) -> None:
    p, n, _ = J.shape
    eye = np.eye(n)
    for m in range(p):
        if not np.allclose(J[m], -J[m].T, atol=_ATOL):
            raise ValueError(f"J^({m}) is not skew-symmetric")
        if not np.allclose(J[m] @ J[m].T, eye, atol=1e-10):
            raise ValueError(f"J^({m}) is not orthogonal")
    for m in range(p):
        for l in range(m + 1, p):
            anti = J[m] @ J[l] + J[l] @ J[m]
            if not np.allclose(anti, 0.0, atol=1e-10):
                raise ValueError(f"J^({m}), J^({l}) do not anti-commute")


@dataclass(frozen=True)
class GroupElement:
    """A point of the group in exponential coordinates ``(v, z)``."""

    v: np.ndarray
    z: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "v", np.atleast_1d(np.asarray(self.v, dtype=float)))
        object.__setattr__(self, "z", np.atleast_1d(np.asarray(self.z, dtype=float)))


def heisenberg(d: int = 1) -> HTypeStructure:
    """The ``2d+1`` dimensional Heisenberg group (``p = 1``)."""
    J = np.zeros((1, 2 * d, 2 * d))
    J[0, :d, d:] = np.eye(d)
    J[0, d:, :d] = -np.eye(d)
    return HTypeStructure(d=d, p=1, J=J)


def quaternionic() -> HTypeStructure:
    """The 7-dimensional quaternionic H-type group (``d = 2``, ``p = 3``)."""
    i = np.array([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]], dtype=float)
    j = np.array([[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]], dtype=float)
    k = i @ j
    return HTypeStructure(d=2, p=3, J=np.stack([i, j, k]))


def make_from_matrices(J) -> HTypeStructure:
    """Build an :class:`HTypeStructure` from a stack of bracket matrices.

    Raises
    ------
    ValueError
        If the matrices fail skew-symmetry, orthogonality or the H-type
        anti-commutation relations, or if the horizontal dimension is odd.
    """
    J = np.asarray(J, dtype=float)
    if J.ndim != 3 or J.shape[1] != J.shape[2]:
        raise ValueError("J must be a stack of square matrices")
    if J.shape[1] % 2:
        raise ValueError("horizontal dimension must be even")
    return HTypeStructure(d=J.shape[1] // 2, p=J.shape[0], J=J)


# ---------------------------------------------------------------------------
# group operations (batched over leading axes)
# ---------------------------------------------------------------------------


def bracket(G: HTypeStructure, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Bracket ``[u, v]`` of horizontal vectors, shape ``(..., p)``."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    # [u, v]_m = u . J^(m) v
    return np.einsum("...i,mij,...j->...m", u, G.J, v)


def group_product(G: HTypeStructure, x: GroupElement, y: GroupElement) -> GroupElement:
    """Group product in exponential coordinates (step-2 BCH)."""
    v = x.v + y.v
    z = x.z + y.z + 0.5 * bracket(G, x.v, y.v)
    return GroupElement(v, z)


def group_inverse(x: GroupElement) -> GroupElement:
    return GroupElement(-x.v, -x.z)


def dilate(x: GroupElement, t: float) -> GroupElement:
    """Anisotropic dilation ``delta_t(v, z) = (t v, t^2 z)``."""
    return GroupElement(t * np.asarray(x.v), t * t * np.asarray(x.z))


def product_arrays(G, vx, zx, vy, zy):
    """Batched group product on coordinate arrays (broadcasting)."""
    v = vx + vy
    z = zx + zy + 0.5 * bracket(G, vx, vy)
    return v, z


def homogeneous_norm(v, z) -> np.ndarray:
    """The homogeneous gauge ``(|v|^4 + |z|^2)^{1/4}``."""
    v = np.asarray(v, dtype=float)
    z = np.asarray(z, dtype=float)
    return (np.sum(v * v, axis=-1) ** 2 + np.sum(z * z, axis=-1)) ** 0.25


def exp_coords(G: HTypeStructure, V: np.ndarray, Z: np.ndarray) -> GroupElement:
    """Exponential map; in exponential coordinates this is the identity."""
    return GroupElement(np.asarray(V, dtype=float), np.asarray(Z, dtype=float))


# ---------------------------------------------------------------------------
# Haar quadrature grids
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HaarGrid:
    """Tensor Gauss-Legendre quadrature for the (Lebesgue) Haar measure.

    The grid is a tensor product of one-dimensional Gauss-Legendre rules,
    one per coordinate of ``v`` and of ``z``.  ``v_nodes``/``z_nodes`` hold
    the flattened tensor products of the horizontal and central axes;
    quadrature of ``f`` is ``sum_{i,k} v_weights[i] z_weights[k] f(v_i, z_k)``.
    """

    G: HTypeStructure
    v_box: np.ndarray  # (2d,) half-widths
    z_box: np.ndarray  # (p,) half-widths
    v_orders: np.ndarray  # (2d,) ints
    z_orders: np.ndarray  # (p,) ints
    v_nodes: np.ndarray = field(repr=False)  # (nv, 2d)
    v_weights: np.ndarray = field(repr=False)  # (nv,)
    z_nodes: np.ndarray = field(repr=False)  # (nz, p)
    z_weights: np.ndarray = field(repr=False)  # (nz,)

    @property
    def n_v(self) -> int:
        return self.v_nodes.shape[0]

    @property
    def n_z(self) -> int:
        return self.z_nodes.shape[0]

    @property
    def size(self) -> int:
        return self.n_v * self.n_z

    @property
    def weights(self) -> np.ndarray:
        """Full tensor weights, shape ``(n_v, n_z)``."""
        return self.v_weights[:, None] * self.z_weights[None, :]

    def nodes(self):
        """Iterate over grid points as :class:`GroupElement` (row-major)."""
        for i in range(self.n_v):
            for k in range(self.n_z):
                yield GroupElement(self.v_nodes[i], self.z_nodes[k])

    def integrate(self, samples: np.ndarray) -> complex:
        """Integrate samples of shape ``(..., n_v, n_z)`` over the grid."""
        return np.einsum("...ik,i,k->...", samples, self.v_weights, self.z_weights)

    def sample(self, f) -> np.ndarray:
        """Sample a vectorized callable ``f(v, z) -> array`` on the grid.

        ``f`` receives arrays of shape ``(n_v, 1, 2d)`` and ``(1, n_z, p)``
        and must broadcast to ``(n_v, n_z)``.
        """
        return np.asarray(f(self.v_nodes[:, None, :], self.z_nodes[None, :, :]))

    def l2_norm(self, samples: np.ndarray) -> float:
        return float(np.sqrt(self.integrate(np.abs(samples) ** 2).real))


def _gl_axes(boxes, orders):
    nodes_1d, weights_1d = [], []
    for half, n in zip(boxes, orders):
        x, w = np.polynomial.legendre.leggauss(int(n))
        nodes_1d.append(half * x)
        weights_1d.append(half * w)
    return nodes_1d, weights_1d


def _tensorize(nodes_1d, weights_1d):
    grids = np.meshgrid(*nodes_1d, indexing="ij")
    nodes = np.stack([g.ravel() for g in grids], axis=-1)
    wg = np.meshgrid(*weights_1d, indexing="ij")
    weights = np.prod(np.stack([w.ravel() for w in wg], axis=-1), axis=-1)
    return nodes, weights


def haar_grid(G: HTypeStructure, v_box, z_box, v_orders, z_orders) -> HaarGrid:
    """Build a tensor Gauss-Legendre Haar grid on a centered box.

    Parameters
    ----------
    v_box, z_box : float or sequence
        Half-widths of the box, per coordinate (scalars broadcast).
    v_orders, z_orders : int or sequence
        Gauss-Legendre orders per coordinate (scalars broadcast).
    """
    v_box = np.broadcast_to(np.asarray(v_box, dtype=float), (2 * G.d,)).copy()
    z_box = np.broadcast_to(np.asarray(z_box, dtype=float), (G.p,)).copy()
    v_orders = np.broadcast_to(np.asarray(v_orders, dtype=int), (2 * G.d,)).copy()
    z_orders = np.broadcast_to(np.asarray(z_orders, dtype=int), (G.p,)).copy()
    vn1, vw1 = _gl_axes(v_box, v_orders)
    zn1, zw1 = _gl_axes(z_box, z_orders)
    v_nodes, v_weights = _tensorize(vn1, vw1)
    z_nodes, z_weights = _tensorize(zn1, zw1)
    return HaarGrid(G, v_box, z_box, v_orders, z_orders,
                    v_nodes, v_weights, z_nodes, z_weights)


def convolve(G: HTypeStructure, grid: HaarGrid, f, g) -> np.ndarray:
    """Group convolution ``f * g (x) = int f(x y^{-1}) g(y) dy`` on the grid.

    ``f`` and ``g`` are vectorized callables ``(v, z) -> values`` accepting
    broadcastable coordinate arrays.  Returns samples of ``f * g`` of shape
    ``(n_v, n_z)``.
    """
    gv = grid.sample(g)  # (nv, nz)
    w = grid.weights
    out = np.zeros((grid.n_v, grid.n_z), dtype=complex)
    # x y^{-1} = (v_x - v_y, z_x - z_y - [v_x, v_y]/2)
    vx = grid.v_nodes
    zx = grid.z_nodes
    vy = grid.v_nodes
    zy = grid.z_nodes
    br = bracket(G, vx[:, None, :], vy[None, :, :])  # (nv_x, nv_y, p)
    for k in range(grid.n_z):
        # y runs over the whole grid; x has z-coordinate zx[k]
        v_arg = vx[:, None, None, :] - vy[None, :, None, :]
        z_arg = zx[k][None, None, None, :] - zy[None, None, :, :] \
            - 0.5 * br[:, :, None, :]
        vals = f(v_arg, z_arg)  # (nv_x, nv_y, nz_y)
        out[:, k] = np.einsum("xyk,yk,yk->x", np.asarray(vals, dtype=complex),
                              w, gv)
    return out


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def structure_to_json(G: HTypeStructure) -> str:
    """Serialize a structure as JSON ``{d, p, J}`` with row-major ``J``."""
    return json.dumps({"d": G.d, "p": G.p, "J": G.J.ravel().tolist()})


def structure_from_json(text: str) -> HTypeStructure:
    obj = json.loads(text)
    d, p = int(obj["d"]), int(obj["p"])
    J = np.asarray(obj["J"], dtype=float).reshape(p, 2 * d, 2 * d)
    return HTypeStructure(d=d, p=p, J=J)


_GRID_CACHE_VERSION = 1


def save_grid(path, grid: HaarGrid) -> None:
    """Cache a Haar grid to a binary ``.npz`` file with a version header."""
    np.savez(
        path,
        version=np.asarray(_GRID_CACHE_VERSION),
        d=np.asarray(grid.G.d),
        p=np.asarray(grid.G.p),
        J=grid.G.J,
        v_box=grid.v_box,
        z_box=grid.z_box,
        v_orders=grid.v_orders,
        z_orders=grid.z_orders,
        v_nodes=grid.v_nodes,
        v_weights=grid.v_weights,
        z_nodes=grid.z_nodes,
        z_weights=grid.z_weights,
    )


def load_grid(path) -> HaarGrid:
    """Load a cached Haar grid, checking the version header."""
    with np.load(path) as data:
        if int(data["version"]) != _GRID_CACHE_VERSION:
            raise ValueError(f"unsupported grid cache version {int(data['version'])}")
        G = HTypeStructure(d=int(data["d"]), p=int(data["p"]), J=data["J"])
        return HaarGrid(
            G,
            data["v_box"], data["z_box"],
            data["v_orders"], data["z_orders"],
            data["v_nodes"], data["v_weights"],
            data["z_nodes"], data["z_weights"],
        )
