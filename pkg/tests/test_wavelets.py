import math

import numpy as np
import pytest
from scipy.special import i0e, i1e

from sdwt.core import TransformPoint
from sdwt.engine import ParameterSampling
from sdwt.errors import CutoffTooSmall, QuadratureDivergence, SdwtError
from sdwt.wavelets import (AdmissibilityMeasure, admissibility_integral, eval_family,
                           eval_mother, gauss_hermite_wavelet, make_wavelet,
                           normalize_admissible, spectrum, spectrum_quadrature)


@pytest.fixture(scope="module")
def wav():
    return gauss_hermite_wavelet()


class TestMotherEvaluation:
    def test_zero_complex_factor(self, wav):
        assert eval_mother(wav, 0.0, 3.7) == 0

    def test_zero_real_factor(self, wav):
        assert eval_mother(wav, 1.0 + 0j, 0.0) == 0

    def test_unit_point(self, wav):
        assert eval_mother(wav, 1.0, 1.0) == pytest.approx(math.exp(-1.0))

    def test_decay_envelope(self, wav, rng):
        # |psi| <= C exp(-(|w|^2 + x'^2)/4) with a modest constant
        w = rng.normal(size=200) + 1j * rng.normal(size=200)
        xp = rng.normal(size=200) * 2
        vals = np.abs(wav(w, xp))
        bound = 2.0 * np.exp(-(np.abs(w) ** 2 + xp ** 2) / 4)
        assert np.all(vals <= bound)

    def test_zero_mean_each_factor(self, wav):
        t = np.linspace(-6, 6, 401)
        h = t[1] - t[0]
        x_int = np.sum(wav(np.full(t.shape, 1.0 + 0j), t)) * h
        assert abs(x_int) < 1e-12
        W = t[:, None] + 1j * t[None, :]
        w_int = np.sum(wav(W, np.ones_like(W.real))) * h * h
        assert abs(w_int) < 1e-12


class TestFamily:
    def test_identity_point_reduces_to_mother(self, wav, rng):
        tp = TransformPoint.make(1.0, 0.0, 0j, 1.0, 0.0)
        for _ in range(10):
            al = rng.normal() + 1j * rng.normal()
            x = rng.normal()
            assert eval_family(wav, tp, al, x) == pytest.approx(eval_mother(wav, al, x))

    def test_pure_dilation(self, wav):
        tp = TransformPoint.make(1.0, 0.0, 0j, 2.0, 0.0)
        got = eval_family(wav, tp, 1.0 + 0j, 2.0)
        assert got == pytest.approx(eval_mother(wav, 1.0, 1.0) / math.sqrt(2))

    def test_real_symplectic_point(self, wav):
        tp = TransformPoint.make(5 / 4, 3 / 4, 0j, 1.0, 0.0)
        got = eval_family(wav, tp, 1.0 + 0j, 1.0)
        want = math.sqrt(5 / 4) * eval_mother(wav, 0.5, 1.0)
        assert got == pytest.approx(want)

    def test_translation_covariance(self, wav, rng):
        # family with kappa -> kappa + delta equals the family evaluated at
        # alpha - delta
        for _ in range(100):
            tp = TransformPoint.make(math.cosh(0.4), math.sinh(0.4) * np.exp(0.3j),
                                     rng.normal() + 1j * rng.normal(),
                                     rng.uniform(0.5, 2), rng.normal())
            delta = rng.normal() + 1j * rng.normal()
            al = rng.normal() + 1j * rng.normal()
            x = rng.normal()
            shifted = TransformPoint.make(tp.sym.s, tp.sym.r, tp.tr.kappa + delta,
                                          tp.dil.a, tp.dil.b)
            v1 = eval_family(wav, shifted, al, x)
            v2 = eval_family(wav, tp, al - delta, x)
            assert abs(v1 - v2) <= 1e-12 * max(1.0, abs(v1))

    def test_norm_bookkeeping(self, wav):
        # plane-and-line energy of a family member is |s| times the mother's
        tp = TransformPoint.make(math.cosh(0.5), math.sinh(0.5), 0.3 - 0.2j, 1.7, 0.4)
        t = np.linspace(-10, 10, 181)
        h = t[1] - t[0]
        A = t[:, None, None] + 1j * t[None, :, None]
        X = t[None, None, :]
        fam = eval_family(wav, tp, A, X)
        fam_norm = np.sum(np.abs(fam) ** 2) * h ** 3
        t2 = np.linspace(-8, 8, 161)
        h2 = t2[1] - t2[0]
        W = t2[:, None, None] + 1j * t2[None, :, None]
        XP = t2[None, None, :]
        mother_norm = np.sum(np.abs(wav(W, XP)) ** 2) * h2 ** 3
        ratio = fam_norm / mother_norm
        assert ratio == pytest.approx(abs(tp.sym.s), rel=1e-4)


class TestSpectrum:
    def test_zero_mean_slices(self, wav):
        assert spectrum(wav, 0j, 1.0) == 0
        assert spectrum(wav, 1.0 + 0j, 0.0) == 0

    def test_closed_form_vs_quadrature(self, wav, rng):
        for _ in range(20):
            xi = rng.normal(scale=0.8) + 1j * rng.normal(scale=0.8)
            q = rng.normal(scale=1.2)
            closed = spectrum(wav, xi, q)
            quad = spectrum_quadrature(wav, xi, q, nodes_per_axis=96)
            assert abs(closed - quad) < 1e-6

    def test_quadrature_divergence_guard(self, wav):
        with pytest.raises(QuadratureDivergence):
            spectrum_quadrature(wav, 0.5 + 0j, 1.0, nodes_per_axis=24, radius=1.0)

    def test_scaled_wavelet_closed_form(self, rng):
        ws = gauss_hermite_wavelet(scale=0.4)
        xi = 1.3 - 0.4j
        q = 0.9
        closed = spectrum(ws, xi, q)
        quad = spectrum_quadrature(ws, xi, q, nodes_per_axis=96, radius=6.0)
        assert abs(closed - quad) < 1e-6


def _bessel_reference(wav_scale, amplitude, beta_abs, p, measure):
    """Independent semi-closed admissibility value for the product wavelet.

    The phase integral reduces to modified Bessel functions:
    int dphi |xi|^2 exp(-4 s^2 |xi|^2) with |xi|^2 = rho (cosh 2mu -
    sinh 2mu cos t) gives 2 pi e^{-z0}[cosh2mu I0(z) - sinh2mu I1(z)]
    terms; the dilation integral is done densely in log space.
    """
    rho = beta_abs ** 2
    s2 = wav_scale ** 2
    mu = np.linspace(0, measure.mu_max, 4001)
    C2, S2 = np.cosh(2 * mu), np.sinh(2 * mu)
    z = 4 * s2 * rho * S2
    ring = 2 * np.pi * rho * np.exp(-4 * s2 * rho * (C2 - S2)) * (C2 * i0e(z) - S2 * i1e(z))
    s_part = np.trapezoid(np.sinh(mu) * ring, mu)
    u = np.linspace(math.log(measure.a_min), math.log(measure.a_max), 20001)
    q = np.exp(u) * p
    a_part = 2 * np.trapezoid(q * q * np.exp(-q * q), u)   # both dilation signs
    # |Phi|^2 = 8 A^2 s^8 q^2 |xi|^2 exp(-4 s^2 |xi|^2 - q^2)
    return 8 * amplitude ** 2 * s2 ** 4 * s_part * a_part


class TestAdmissibility:
    def test_finite_positive(self, wav):
        res = admissibility_integral(wav, 1.0 + 0j, 1.0)
        assert res.value > 0 and math.isfinite(res.value)
        assert res.mu_boundary_marginal > 0  # unbounded surface direction

    def test_bessel_oracle(self):
        # independent semi-closed evaluation of the same integral
        for scale in (1.0, 0.2):
            wavs = gauss_hermite_wavelet(scale=scale)
            meas = AdmissibilityMeasure(mu_max=2.0, mu_count=400, phi_count=256,
                                        a_min=0.05, a_max=12.0, a_count=400)
            got = admissibility_integral(wavs, 1.0 + 0j, 1.2, meas).value
            want = _bessel_reference(scale, 1.0, 1.0, 1.2, meas)
            assert got == pytest.approx(want, rel=2e-3)

    def test_amplitude_homogeneity(self, wav):
        meas = AdmissibilityMeasure(mu_count=48, phi_count=32, a_count=64)
        c1 = admissibility_integral(wav, 1.0 + 0j, 1.0, meas).value
        c2 = admissibility_integral(wav.rescaled(2.0), 1.0 + 0j, 1.0, meas).value
        assert c2 == pytest.approx(4 * c1, rel=1e-12)

    def test_normalization(self, wav):
        meas = AdmissibilityMeasure(mu_count=48, phi_count=32, a_count=64)
        wn = normalize_admissible(wav, 1.0 + 0j, 1.0, meas)
        assert admissibility_integral(wn, 1.0 + 0j, 1.0, meas).value == pytest.approx(1.0, abs=1e-12)

    def test_normalize_idempotent(self, wav):
        meas = AdmissibilityMeasure(mu_count=48, phi_count=32, a_count=64)
        wn = normalize_admissible(wav, 1.0 + 0j, 1.0, meas)
        wn2 = normalize_admissible(wn, 1.0 + 0j, 1.0, meas)
        assert wn2.params["amplitude"] == pytest.approx(wn.params["amplitude"], rel=1e-12)

    def test_undefined_at_origin(self, wav):
        with pytest.raises(SdwtError):
            admissibility_integral(wav, 0j, 0.0)

    def test_outer_cutoff_guard(self, wav):
        meas = AdmissibilityMeasure(a_min=0.5, a_max=1.5, a_count=16)
        with pytest.raises(CutoffTooSmall):
            admissibility_integral(wav, 1.0 + 0j, 1.0, meas)

    def test_sampling_derived_measure_matches(self, wav):
        sampling = ParameterSampling(mu_max=1.5, mu_count=8, phi_count=8,
                                     a_min=0.1, a_max=8.0, a_count=16)
        meas = sampling.admissibility_measure(refine=2)
        assert meas.mu_max == sampling.mu_max
        assert meas.a_min == sampling.a_min
        res = admissibility_integral(wav, 1.0 + 0j, 1.5, meas)
        assert res.value > 0


def test_registry_round_trip():
    w = make_wavelet("gauss-hermite-default", scale=0.5)
    assert w.params["scale"] == 0.5
    with pytest.raises(SdwtError):
        make_wavelet("nope")
