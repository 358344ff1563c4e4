import numpy as np
import pytest

from sdwt.core import Grid3D, SampledField


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


@pytest.fixture
def small_grid():
    return Grid3D.from_radii(6.0, 24, 8.0, 32)


@pytest.fixture
def gaussian_field(small_grid):
    alpha = small_grid.alpha_mesh()
    x = small_grid.x_mesh()
    vals = np.exp(-np.abs(alpha) ** 2 / 2 - x ** 2 / 2)
    return SampledField(small_grid, np.broadcast_to(vals, small_grid.shape).copy())


def make_signal(grid, rng, beta0=None, p0=None, sa=1.2, sx=1.3, poly=True):
    alpha = grid.alpha_mesh()
    x = grid.x_mesh()
    if beta0 is None:
        beta0 = rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1)
    if p0 is None:
        p0 = rng.uniform(-2, 2)
    v = (np.exp(-np.abs(alpha) ** 2 / (2 * sa ** 2) - x ** 2 / (2 * sx ** 2))
         * np.exp(np.conj(alpha) * beta0 - alpha * np.conj(beta0) - 1j * p0 * x))
    if poly:
        c = rng.normal(scale=0.3, size=2) + 1j * rng.normal(scale=0.3, size=2)
        v = v * (1 + c[0] * alpha + c[1] * x)
    return SampledField(grid, np.broadcast_to(v, grid.shape).copy())
