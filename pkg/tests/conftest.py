"""Shared fixtures: small, fast objects reused across unit-test modules.

Session-scoped engines keep the whole unit suite quick; the acceptance
suite builds its own full-size objects from the frozen desk
configurations.
"""

import numpy as np
import pytest

from htlab.fourier import FourierEngine, HermiteBasisSpec, annulus_lambda_grid
from htlab.group import haar_grid, heisenberg


@pytest.fixture(scope="session")
def G():
    return heisenberg(1)


@pytest.fixture(scope="session")
def basis(G):
    return HermiteBasisSpec(G.d, 14)


@pytest.fixture(scope="session")
def small_grid(G):
    return haar_grid(G, 4.5, 10.0, 32, 40)


@pytest.fixture(scope="session")
def small_engine(G, basis, small_grid):
    lam_grid = annulus_lambda_grid(1e-3, 3.0, 32)
    engine = FourierEngine(G, small_grid, basis, lam_grid)
    engine.calibrate(small_grid.sample(_reference))
    return engine


def _reference(v, z):
    v = np.asarray(v)
    z = np.asarray(z)
    return np.exp(-np.sum(v * v, axis=-1) / 2.0 - z[..., 0] ** 2 / 8.0
                  + 1.2j * z[..., 0])
