"""Mother wavelets on C x R, their transformed family, and admissibility.

A mother wavelet is a function psi(w, x') of one complex and one real
variable, zero-mean in each factor and rapidly decaying.  The analyzing
family is generated by a symplectic map and translation of the complex
argument together with a dilation and shift of the real one:

    psi_{s,r,kappa;a,b}(alpha, x)
        = sqrt(conj(s)/|a|) * psi[s(alpha-kappa) - r conj(alpha-kappa), (x-b)/a]

The square roots use the principal branch (cut on the negative real axis),
so family phases flip as conj(s) crosses the cut; coefficient consumers
that compare phases must use a consistent branch.

The spectrum Phi(xi, q) is the plane-fourier transform of psi,

    Phi(xi, q) = int dx'/sqrt(pi) int d2w/(2 pi)
                 psi(w, x') exp(w xi - conj(w) conj(xi) + i q x'),

with xi = conj(s) conj(beta) - conj(r) beta and q = a p when the family is
paired against a plane wave exp(conj(alpha) beta - alpha conj(beta) - i p x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .core import SymplecticParams, TransformPoint, symplectic_from_hyperbolic
from .errors import CutoffTooSmall, QuadratureDivergence, SdwtError, ZeroAdmissibility


@dataclass(frozen=True)
class MotherWavelet:
    """Evaluation contract for a mother wavelet.

    Parameters
    ----------
    fn : callable
        Vectorized map (w, xp) -> complex value.
    decay_radius : float
        Radius beyond which |psi| < 1e-12 in each of |w| and |x'|; used to
        truncate quadrature domains.
    spectrum_fn : callable, optional
        Closed form for Phi(xi, q); when absent the spectrum is computed by
        quadrature.
    """

    fn: Callable
    decay_radius: float
    spectrum_fn: Callable | None = None
    name: str = "custom"
    params: dict = field(default_factory=dict)

    def __call__(self, w, xp):
        return self.fn(w, xp)

    def rescaled(self, amplitude: float) -> "MotherWavelet":
        """Multiply the wavelet (and its spectrum) by a constant."""
        fn = self.fn
        sp = self.spectrum_fn
        new_fn = lambda w, xp: amplitude * fn(w, xp)
        new_sp = None if sp is None else (lambda xi, q: amplitude * sp(xi, q))
        params = dict(self.params)
        params["amplitude"] = amplitude * params.get("amplitude", 1.0)
        return replace(self, fn=new_fn, spectrum_fn=new_sp, params=params)


def gauss_hermite_wavelet(scale: float = 1.0, amplitude: float = 1.0) -> MotherWavelet:
    """Default analyzing wavelet: product of first-order Gauss-Hermite factors.

        psi(w, x') = A * w exp(-|w|^2 / (2 scale^2)) * x' exp(-x'^2 / 2)

    Both factors are odd, hence zero-mean, and the spectrum is available in
    closed form:

        Phi(xi, q) = -2 sqrt(2) i A scale^4 q conj(xi)
                     * exp(-2 scale^2 |xi|^2 - q^2 / 2)

    ``scale`` dilates the complex factor only; it sets where the scale-and-
    symplectic response peaks in |beta| (near 1/scale * 0.2) without touching
    the real-axis factor.
    """
    if scale <= 0:
        raise SdwtError(f"scale must be positive, got {scale}")
    s2 = scale * scale

    def fn(w, xp):
        w = np.asarray(w, dtype=complex)
        xp = np.asarray(xp, dtype=float)
        return amplitude * w * np.exp(-np.abs(w) ** 2 / (2 * s2)) * xp * np.exp(-xp * xp / 2)

    def spectrum_fn(xi, q):
        xi = np.asarray(xi, dtype=complex)
        q = np.asarray(q, dtype=float)
        return (-2 * math.sqrt(2) * 1j * amplitude * s2 * s2 * q * np.conj(xi)
                * np.exp(-2 * s2 * np.abs(xi) ** 2 - q * q / 2))

    return MotherWavelet(fn=fn, decay_radius=6.0 * max(scale, 1.0),
                         spectrum_fn=spectrum_fn, name="gauss-hermite-default",
                         params={"scale": scale, "amplitude": amplitude})


WAVELETS = {"gauss-hermite-default": gauss_hermite_wavelet}


def make_wavelet(name: str, **params) -> MotherWavelet:
    try:
        builder = WAVELETS[name]
    except KeyError:
        raise SdwtError(f"unknown wavelet {name!r}; known: {sorted(WAVELETS)}") from None
    return builder(**params)


def eval_mother(wavelet: MotherWavelet, w, xp):
    """psi(w, x')."""
    return wavelet.fn(w, xp)


def family_arguments(tp: TransformPoint, alpha, x):
    """Transformed arguments (w, x') and the sqrt(conj(s)/|a|) prefactor."""
    s, r = tp.sym.s, tp.sym.r
    kappa, a, b = tp.tr.kappa, tp.dil.a, tp.dil.b
    d = np.asarray(alpha, dtype=complex) - kappa
    w = s * d - r * np.conj(d)
    xp = (np.asarray(x, dtype=float) - b) / a
    pref = np.sqrt(np.conj(s) / abs(a))
    return w, xp, pref


def eval_family(wavelet: MotherWavelet, tp: TransformPoint, alpha, x):
    """Dilated-translated-symplectically-transformed family member at (alpha, x)."""
    w, xp, pref = family_arguments(tp, alpha, x)
    return pref * wavelet.fn(w, xp)


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------

def spectrum_quadrature(wavelet: MotherWavelet, xi, q, nodes_per_axis: int = 96,
                        radius: float | None = None, tol: float = 1e-6):
    """Phi(xi, q) by Riemann sum over the decay-truncated (w, x') domain.

    Raises QuadratureDivergence when the boundary-shell truncation estimate
    exceeds ``tol``.
    """
    R = radius if radius is not None else wavelet.decay_radius
    n = nodes_per_axis
    t = (np.arange(n) - (n - 1) / 2) * (2 * R / n)
    h = 2 * R / n
    w = t[:, None, None] + 1j * t[None, :, None]
    xp = t[None, None, :]
    psi = wavelet.fn(w, xp)

    # boundary-shell magnitude as the domain-truncation estimate (|kernel| = 1)
    shell = np.zeros(psi.shape, dtype=bool)
    shell[0, :, :] = shell[-1, :, :] = True
    shell[:, 0, :] = shell[:, -1, :] = True
    shell[:, :, 0] = shell[:, :, -1] = True
    est = float(np.sum(np.abs(psi[shell]))) * h ** 3 / (math.sqrt(math.pi) * 2 * math.pi)
    if est > tol:
        raise QuadratureDivergence(
            f"truncation estimate {est:.2e} > {tol:.1e}; increase radius/decay_radius")

    xi = np.asarray(xi, dtype=complex)
    q = np.asarray(q, dtype=float)
    scalar = xi.ndim == 0 and q.ndim == 0
    xi, q = np.atleast_1d(xi), np.atleast_1d(q)
    out = np.empty(np.broadcast(xi, q).shape, dtype=complex)
    for idx in np.ndindex(out.shape):
        kern = np.exp(w * xi[idx] - np.conj(w) * np.conj(xi[idx]) + 1j * q[idx] * xp)
        out[idx] = np.sum(psi * kern) * h ** 3 / (math.sqrt(math.pi) * 2 * math.pi)
    return complex(out[0]) if scalar else out


def spectrum(wavelet: MotherWavelet, xi, q, **quad_kwargs):
    """Phi(xi, q): closed form when the wavelet provides one, else quadrature."""
    if wavelet.spectrum_fn is not None:
        return wavelet.spectrum_fn(xi, q)
    return spectrum_quadrature(wavelet, xi, q, **quad_kwargs)


# ---------------------------------------------------------------------------
# admissibility
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AdmissibilityMeasure:
    """Discretization of the scale-and-symplectic measure da/|a| d2s/|s|.

    The surface integral d2s/|s| is realized in hyperbolic polar form as
    sinh(mu) dmu dphi with s = e^{i phi} cosh(mu) and the companion phase
    r = e^{i theta} sinh(mu) tied by the fixed ``theta``.  The dilation
    integral runs over a_min <= |a| <= a_max in log nodes, both signs when
    ``include_negative_a``.

    The mu direction carries unbounded measure (sinh grows faster than the
    compensating-phase window shrinks), so the integral is meaningful only
    relative to ``mu_max``; the boundary marginal is reported, not raised.
    """

    mu_max: float = 3.0
    mu_count: int = 96
    phi_count: int = 64
    a_min: float = 0.05
    a_max: float = 20.0
    a_count: int = 128
    theta: float = 0.0
    include_negative_a: bool = True

    def mu_nodes(self):
        """Midpoint nodes and weights for int_0^mu_max sinh(mu) dmu."""
        h = self.mu_max / self.mu_count
        mu = (np.arange(self.mu_count) + 0.5) * h
        return mu, np.sinh(mu) * h

    def phi_nodes(self):
        h = 2 * math.pi / self.phi_count
        return np.arange(self.phi_count) * h, np.full(self.phi_count, h)

    def a_nodes(self):
        """Signed nodes and weights for int da/|a| over the allowed band."""
        if not (0 < self.a_min < self.a_max):
            raise SdwtError("need 0 < a_min < a_max")
        h = math.log(self.a_max / self.a_min) / (self.a_count - 1)
        a = self.a_min * np.exp(np.arange(self.a_count) * h)
        w = np.full(self.a_count, h)
        w[0] *= 0.5
        w[-1] *= 0.5
        if self.include_negative_a:
            a = np.concatenate([-a[::-1], a])
            w = np.concatenate([w[::-1], w])
        return a, w


@dataclass(frozen=True)
class AdmissibilityResult:
    value: float
    mu_boundary_marginal: float   # phi-integrated integrand at mu_max, per unit mu
    a_boundary_fraction: float    # outer |a| edge contribution relative to the value
    a_inner_fraction: float = 0.0  # regularized inner |a| edge, reported only

    def __float__(self):
        return self.value


def admissibility_integral(wavelet: MotherWavelet, beta: complex, p: float,
                           measure: AdmissibilityMeasure | None = None,
                           a_boundary_tol: float = 1e-8) -> AdmissibilityResult:
    """Scale-and-symplectic energy integral of the spectrum at one (beta, p).

        C(beta, p) = int da/|a| int d2s/|s| |Phi(conj(s) conj(beta) - conj(r) beta, a p)|^2

    The |a| edges must hold negligible integrand (CutoffTooSmall otherwise,
    threshold ``a_boundary_tol`` relative to the accumulated value); the mu
    edge marginal is returned in the result since the surface measure makes
    the full integral grow without bound in mu_max.
    """
    if beta == 0 and p == 0:
        raise SdwtError("admissibility undefined at beta = p = 0")
    measure = measure or AdmissibilityMeasure()
    mu, wmu = measure.mu_nodes()
    phi, wphi = measure.phi_nodes()
    a, wa = measure.a_nodes()

    M, P = np.meshgrid(mu, phi, indexing="ij")
    s = np.cosh(M) * np.exp(1j * P)
    r = np.sinh(M) * np.exp(1j * measure.theta)
    xi = np.conj(s) * np.conj(beta) - np.conj(r) * beta

    # evaluate |Phi(xi_ij, a_k p)|^2 on the product of surface and scale nodes
    q = a * p
    sp = spectrum(wavelet, xi[..., None], q[None, None, :])
    dens = np.abs(sp) ** 2

    ring_w = (wmu[:, None] * wphi[None, :])
    val = float(np.einsum("ij,ijk,k->", ring_w, dens, wa))

    # boundary diagnostics;  the outer |a| edge is a genuine truncation of a
    # decaying tail and must be negligible, while the inner |a| edge and the
    # mu edge are deliberate regularization cutoffs (the measure is not
    # integrable across them) and are reported rather than raised
    mu_marg = float(np.sum(dens[-1, :, :] * wphi[:, None] * wa[None, :]) * math.sinh(measure.mu_max))
    mods = np.abs(a)
    outer = mods > measure.a_max * (1 - 1e-12)
    inner = mods < measure.a_min * (1 + 1e-12)
    a_outer = float(np.einsum("ij,ijk,k->", ring_w, dens[:, :, outer], wa[outer]))
    a_inner = float(np.einsum("ij,ijk,k->", ring_w, dens[:, :, inner], wa[inner]))
    a_frac = a_outer / val if val > 0 else 0.0
    if val > 0 and a_frac > a_boundary_tol:
        raise CutoffTooSmall(
            f"|a| = a_max edge integrand fraction {a_frac:.2e} > {a_boundary_tol:.1e}; "
            "widen a_max")
    return AdmissibilityResult(value=val, mu_boundary_marginal=mu_marg,
                               a_boundary_fraction=a_frac,
                               a_inner_fraction=a_inner / val if val > 0 else 0.0)


def normalize_admissible(wavelet: MotherWavelet, beta: complex, p: float,
                         measure: AdmissibilityMeasure | None = None) -> MotherWavelet:
    """Rescale the wavelet so the admissibility integral equals 1 at (beta, p).

    |Phi|^2 is homogeneous of degree two in the wavelet amplitude, so the
    rescale factor is 1/sqrt(C).
    """
    res = admissibility_integral(wavelet, beta, p, measure)
    if not (res.value > 0) or not math.isfinite(res.value):
        raise ZeroAdmissibility(f"admissibility integral is {res.value}")
    return wavelet.rescaled(1.0 / math.sqrt(res.value))
