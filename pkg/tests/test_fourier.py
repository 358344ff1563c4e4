import math

import numpy as np
import pytest

from sdwt.core import Axis, Grid3D, SampledField
from sdwt.errors import GridTooCoarse
from sdwt.fourier import (FourierField, alpha_symplectic_ft, conjugate_grid,
                          forward_ft, inverse_ft)
from tests.conftest import make_signal


class TestForward:
    def test_gaussian_closed_form(self):
        grid = Grid3D.from_radii(6.0, 32, 8.0, 48)
        alpha = grid.alpha_mesh()
        x = grid.x_mesh()
        g = SampledField(grid, np.broadcast_to(
            np.exp(-np.abs(alpha) ** 2 - x ** 2 / 2), grid.shape).copy())
        F = forward_ft(g)
        ref = np.exp(-np.abs(F.beta_mesh()) ** 2) * np.exp(-F.p_mesh() ** 2 / 2)
        assert np.max(np.abs(F.values - ref)) < 1e-8

    def test_zero_maps_to_zero(self, small_grid):
        g = SampledField(small_grid, np.zeros(small_grid.shape, dtype=complex))
        assert np.all(forward_ft(g).values == 0)

    def test_linearity(self, small_grid, rng):
        g = make_signal(small_grid, rng)
        h = make_signal(small_grid, rng)
        both = SampledField(small_grid, g.values + h.values)
        lhs = forward_ft(both).values
        rhs = forward_ft(g).values + forward_ft(h).values
        assert np.max(np.abs(lhs - rhs)) < 1e-12 * np.max(np.abs(lhs))

    def test_nyquist_guard(self, small_grid):
        big = Grid3D(Axis(0.0, 1.0, 64), Axis(0.0, 1.0, 64), Axis(0.0, 1.0, 64))
        g = SampledField(small_grid, np.zeros(small_grid.shape, dtype=complex))
        with pytest.raises(GridTooCoarse):
            forward_ft(g, out_grid=big)


class TestInverse:
    def test_round_trip(self, small_grid, rng):
        g = make_signal(small_grid, rng)
        back = inverse_ft(forward_ft(g), out_grid=small_grid)
        rel = (np.linalg.norm(back.values - g.values)
               / np.linalg.norm(g.values))
        assert rel < 1e-12

    def test_zero(self, small_grid):
        F = FourierField(conjugate_grid(small_grid),
                         np.zeros(small_grid.shape, dtype=complex))
        assert np.all(inverse_ft(F).values == 0)

    def test_spike_gives_plane_wave(self, small_grid):
        fg = conjugate_grid(small_grid)
        vals = np.zeros(fg.shape, dtype=complex)
        i, j, k = 5, 9, 11
        vals[i, j, k] = 1.0
        F = FourierField(fg, vals)
        g = inverse_ft(F, out_grid=small_grid)
        beta0 = fg.alpha1_axis.values[i] + 1j * fg.alpha2_axis.values[j]
        p0 = fg.x_axis.values[k]
        alpha = small_grid.alpha_mesh()
        x = small_grid.x_mesh()
        plane = np.exp(np.conj(alpha) * beta0 - alpha * np.conj(beta0) - 1j * p0 * x)
        norm = fg.cell_volume / (math.sqrt(2 * math.pi) * math.pi)
        assert np.max(np.abs(g.values - plane * norm)) < 1e-12


class TestPlancherel:
    def test_discrete_equality(self, small_grid, rng):
        g = make_signal(small_grid, rng)
        F = forward_ft(g)
        assert F.norm_sq() == pytest.approx(g.norm_sq(), rel=1e-12)

    def test_continuum_for_gaussians(self, small_grid, rng):
        # both sides converge to the same continuum value for smooth decay
        for _ in range(10):
            g = make_signal(small_grid, rng)
            F = forward_ft(g)
            assert F.norm_sq() == pytest.approx(g.norm_sq(), rel=1e-6)

    def test_alpha_double_transform_is_involution(self, small_grid, rng):
        # the antisymmetric plane kernel self-inverts: applying the plane
        # part twice returns the signal (the parity flip of the ordinary
        # 2D Fourier kernel is absorbed by the kernel's conjugation)
        g = make_signal(small_grid, rng)
        a1, a2 = small_grid.alpha1_axis, small_grid.alpha2_axis
        once, b1, b2 = alpha_symplectic_ft(g.values, a1, a2)
        twice, _, _ = alpha_symplectic_ft(once, b1, b2, out_axes=(a1, a2))
        assert np.max(np.abs(twice - g.values)) < 1e-8 * np.max(np.abs(g.values))
