import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sdwt.core import (Axis, DilationParams, Grid3D, SampledField, TransformPoint,
                       load_coefficients, load_field, save_coefficients, save_field,
                       symplectic_from_hyperbolic, validate_symplectic,
                       CoefficientField)
from sdwt.errors import ConstraintViolation, NegativeModulus, SdwtError


class TestSymplecticParams:
    def test_identity_point(self):
        p = validate_symplectic(1.0, 0.0)
        assert p.s == 1 and p.r == 0

    def test_rational_point(self):
        p = validate_symplectic(5 / 4, 3 / 4)
        assert abs(p.deviation) < 1e-15

    def test_off_surface_rejected(self):
        with pytest.raises(ConstraintViolation) as exc:
            validate_symplectic(1.0, 1.0)
        assert exc.value.deviation == pytest.approx(-1.0)

    def test_hyperbolic_identity(self):
        p = symplectic_from_hyperbolic(0.0, 0.0, 0.0)
        assert p.s == 1 and p.r == 0

    def test_hyperbolic_log2(self):
        p = symplectic_from_hyperbolic(math.log(2), 0.0, 0.0)
        assert p.s == pytest.approx(5 / 4)
        assert p.r == pytest.approx(3 / 4)

    def test_hyperbolic_quarter_turn(self):
        p = symplectic_from_hyperbolic(1.0, math.pi / 2, 0.0)
        assert p.s == pytest.approx(1j * math.cosh(1.0))
        assert p.r == pytest.approx(math.sinh(1.0))
        validate_symplectic(p.s, p.r)

    def test_negative_modulus(self):
        with pytest.raises(NegativeModulus):
            symplectic_from_hyperbolic(-0.1, 0.0, 0.0)

    @given(mu=st.floats(0, 5), phi=st.floats(0, 2 * math.pi),
           theta=st.floats(0, 2 * math.pi))
    @settings(deadline=None, max_examples=200)
    def test_surface_points_always_validate(self, mu, phi, theta):
        p = symplectic_from_hyperbolic(mu, phi, theta)
        validate_symplectic(p.s, p.r)


class TestDilationParams:
    def test_log_dilation(self):
        d = DilationParams(2.0, 0.5)
        assert d.lam == pytest.approx(math.log(2))

    def test_negative_a_has_no_log(self):
        d = DilationParams(-1.5, 0.0)
        assert d.lam is None and d.sech_lam is None

    def test_zero_a_rejected(self):
        with pytest.raises(SdwtError):
            DilationParams(0.0, 0.0)

    def test_hyperbolic_identities(self, rng):
        for a in rng.uniform(1e-3, 10.0, size=1000):
            d = DilationParams(float(a), 0.0)
            assert d.sech_lam == pytest.approx(1 / math.cosh(d.lam), abs=1e-12)
            assert d.tanh_lam == pytest.approx(math.tanh(d.lam), abs=1e-12)


class TestGrid:
    def test_axis_symmetric(self):
        ax = Axis(center=0.0, step=0.5, count=8)
        v = ax.values
        assert np.allclose(v + v[::-1], 0.0)

    def test_axis_count_validation(self):
        with pytest.raises(SdwtError):
            Axis(center=0.0, step=0.5, count=1)

    def test_axis_step_validation(self):
        with pytest.raises(SdwtError):
            Axis(center=0.0, step=-0.5, count=4)

    def test_grid_shape_and_volume(self):
        g = Grid3D.from_radii(4.0, 16, 5.0, 20)
        assert g.shape == (16, 16, 20)
        assert g.cell_volume == pytest.approx(0.5 * 0.5 * 0.5)

    def test_field_shape_mismatch(self, small_grid):
        with pytest.raises(SdwtError):
            SampledField(small_grid, np.zeros((2, 2, 2)))

    def test_field_nonfinite_rejected(self, small_grid):
        vals = np.zeros(small_grid.shape, dtype=complex)
        vals[0, 0, 0] = np.nan
        with pytest.raises(SdwtError):
            SampledField(small_grid, vals)


class TestSerialization:
    @pytest.mark.parametrize("payload", ["bin", "csv"])
    def test_field_roundtrip(self, tmp_path, gaussian_field, payload):
        path = str(tmp_path / "field.json")
        save_field(gaussian_field, path, payload=payload)
        back = load_field(path)
        assert back.grid == gaussian_field.grid
        np.testing.assert_allclose(back.values, gaussian_field.values, atol=1e-14)

    def test_coefficients_roundtrip(self, tmp_path):
        c = CoefficientField(mu=np.array([0.1, 0.3]), phi=np.array([0.0]),
                             theta=0.0, a=np.array([0.5, 1.0]), b=np.array([0.0, 1.0]),
                             kappa1=np.array([-0.5, 0.5]), kappa2=np.array([-0.5, 0.5]),
                             values=np.arange(32, dtype=complex) * (1 + 2j))
        path = str(tmp_path / "coeff.csv")
        save_coefficients(c, path)
        back = load_coefficients(path)
        np.testing.assert_allclose(back.values, c.values, atol=1e-15)
        np.testing.assert_allclose(back.mu, c.mu)

    def test_coefficient_count_mismatch(self):
        with pytest.raises(SdwtError):
            CoefficientField(mu=np.array([0.1]), phi=np.array([0.0]), theta=0.0,
                             a=np.array([1.0]), b=np.array([0.0]),
                             kappa1=np.array([0.0]), kappa2=np.array([0.0]),
                             values=np.zeros(3, dtype=complex))


def test_transform_point_composition():
    tp = TransformPoint.make(s=5 / 4, r=3 / 4, kappa=0.5 + 0.5j, a=2.0, b=-1.0)
    assert tp.dil.a == 2.0
    assert tp.tr.kappa == 0.5 + 0.5j
