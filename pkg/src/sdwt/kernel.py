"""ABCD parametrization of the surface pair (s, r) and the mixed kernel.

A surface pair maps to four real ray-optics parameters through

    s = [(A + D) - i(B - C)] / 2,     r = -[(A - D) + i(B + C)] / 2,

equivalently A = Re(s - r), C = Im(s - r), D = Re(s + r), B = -Im(s + r);
the constraint |s|^2 - |r|^2 = 1 is exactly the unimodularity AD - BC = 1,
and the correspondence is a bijection between the surface and the real
unimodular matrices.

The two-mode operator's plane-eigenstate matrix element factorizes into a
quadratic-phase (Fresnel) kernel in eta1 and a pure scaling of eta2.  The
scaling half is represented structurally by the pair (a, pi/sqrt(a)); the
eta1 half is

    K(eta1, eta1') = (pi/sqrt(a)) (2 i pi B)^{-1/2}
                     exp[(i/2B) (A eta1'^2 - 2 eta1 eta1' + D eta1^2)],

with the principal branch of the square root (continuous in B > 0).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import SymplecticParams, validate_symplectic
from .errors import (ComplexABCD, DegenerateDenominator, NotUnimodular, SdwtError,
                     ZeroB)

UNIMODULAR_TOL = 1e-12


@dataclass(frozen=True)
class ABCDMatrix:
    A: float
    B: float
    C: float
    D: float

    def __post_init__(self):
        for name in "ABCD":
            v = getattr(self, name)
            if isinstance(v, complex):
                if abs(v.imag) > 1e-12 * max(1.0, abs(v)):
                    raise ComplexABCD(f"{name} = {v} is not real")
                object.__setattr__(self, name, v.real)
        if not math.isfinite(self.A * self.D - self.B * self.C):
            raise SdwtError("non-finite ABCD entries")

    @property
    def det(self) -> float:
        return self.A * self.D - self.B * self.C

    def require_unimodular(self, tol: float = UNIMODULAR_TOL) -> "ABCDMatrix":
        if abs(self.det - 1.0) > tol:
            raise NotUnimodular(f"AD - BC = {self.det!r}")
        return self

    def matmul(self, other: "ABCDMatrix") -> "ABCDMatrix":
        return ABCDMatrix(
            A=self.A * other.A + self.B * other.C,
            B=self.A * other.B + self.B * other.D,
            C=self.C * other.A + self.D * other.C,
            D=self.C * other.B + self.D * other.D)


def abcd_from_sr(s: complex, r: complex) -> ABCDMatrix:
    """Extract (A, B, C, D) from a surface pair; output is unimodular."""
    sym = validate_symplectic(s, r)
    s, r = sym.s, sym.r
    m = ABCDMatrix(A=(s - r).real, B=-(s + r).imag, C=(s - r).imag, D=(s + r).real)
    return m.require_unimodular(tol=1e-9)


def sr_from_abcd(m: ABCDMatrix) -> SymplecticParams:
    """Inverse map; round-trips with abcd_from_sr to machine precision."""
    m.require_unimodular(tol=1e-9)
    s = complex(m.A + m.D, -(m.B - m.C)) / 2
    r = -complex(m.A - m.D, m.B + m.C) / 2
    return validate_symplectic(s, r)


@dataclass(frozen=True)
class LensFresnelKernel:
    """Quadratic-phase kernel in eta1 plus structural eta2 scaling.

    The full object acts on functions of (eta1, eta2) as a 1D Fresnel
    integral in eta1 together with the substitution eta2 -> eta2 / a and
    the weight pi/sqrt(a); the scaling half never appears as a grid
    object.  ``branch`` records the square-root convention for the
    (2 i pi B)^{-1/2} prefactor.
    """

    abcd: ABCDMatrix
    a: float
    branch: str = "principal"

    def __post_init__(self):
        self.abcd.require_unimodular(tol=1e-9)
        if self.a <= 0:
            raise SdwtError(f"lens scaling must be positive, got {self.a}")


def kernel_eval(k: LensFresnelKernel, eta1, eta1p):
    """Fresnel factor of the kernel at (eta1, eta1').

    Modulus is (pi/sqrt(a)) / sqrt(2 pi |B|), independent of the arguments.
    """
    B = k.abcd.B
    if B == 0:
        raise ZeroB("B = 0 is the pure-lens case; use the scaling path")
    eta1 = np.asarray(eta1, dtype=float)
    eta1p = np.asarray(eta1p, dtype=float)
    pref = (math.pi / math.sqrt(k.a)) / np.sqrt(2j * math.pi * B)
    phase = np.exp(1j / (2 * B) * (k.abcd.A * eta1p ** 2 - 2 * eta1 * eta1p
                                   + k.abcd.D * eta1 ** 2))
    out = pref * phase
    return complex(out) if out.ndim == 0 else out


def eq_matrix_element(s: complex, r: complex, a: float, eta1, eta1p):
    """Closed-form eta1 factor of the plane-eigenstate matrix element,

        sqrt(pi/a) (conj(s) + conj(r) - s - r)^{-1/2}
        * exp[-(eta1^2 + eta1'^2)/2
              + ((conj(r) - s) eta1'^2 - (s + r) eta1^2 + 2 eta1 eta1')
                / (conj(s) + conj(r) - s - r)]

    (the delta factor in eta2 is stripped).  Equals kernel_eval under the
    ABCD substitution.
    """
    validate_symplectic(s, r)
    if a <= 0:
        raise SdwtError(f"need a > 0, got {a}")
    den = np.conj(s) + np.conj(r) - s - r
    if abs(den) < 1e-14:
        raise DegenerateDenominator("s + r is real (B = 0)")
    eta1 = np.asarray(eta1, dtype=float)
    eta1p = np.asarray(eta1p, dtype=float)
    pref = math.sqrt(math.pi / a) / np.sqrt(den)
    expo = (-(eta1 ** 2 + eta1p ** 2) / 2
            + ((np.conj(r) - s) * eta1p ** 2 - (s + r) * eta1 ** 2
               + 2 * eta1 * eta1p) / den)
    out = pref * np.exp(expo)
    return complex(out) if out.ndim == 0 else out


def kernel_compose(k1: LensFresnelKernel, k2: LensFresnelKernel) -> LensFresnelKernel:
    """Cascade of two kernels: matrix product of the ABCD halves, product of
    the scalings.

    The numerically convolved kernels agree with the composed one up to a
    unimodular (Gouy-type) phase; compare moduli.
    """
    m = k1.abcd.matmul(k2.abcd)
    if abs(m.det - 1.0) > 1e-9:
        raise NotUnimodular(f"composition lost unimodularity: det = {m.det!r}")
    return LensFresnelKernel(abcd=m, a=k1.a * k2.a, branch=k1.branch)


def kernel_convolve_numeric(k1: LensFresnelKernel, k2: LensFresnelKernel,
                            eta1, eta1p, window: float = 33.0,
                            mollifier_eps: float = 0.03, nodes: int = 8801):
    """(1/pi) int deta'' K1(eta1, eta'') K2(eta'', eta1') by quadrature.

    The integrand is pure phase, so a Gaussian mollifier exp(-eps eta''^2)
    regularizes the tails; three epsilon levels are Richardson-extrapolated
    to eps -> 0.  Serves as the independent check of kernel_compose.
    """
    eta1 = np.atleast_1d(np.asarray(eta1, dtype=float))
    eta1p = np.atleast_1d(np.asarray(eta1p, dtype=float))
    y = np.linspace(-window, window, nodes)
    h = y[1] - y[0]
    vals = []
    for eps in (mollifier_eps, mollifier_eps / 2, mollifier_eps / 4):
        moll = np.exp(-eps * y ** 2)
        K1 = kernel_eval(k1, eta1[:, None, None], y[None, None, :])
        K2 = kernel_eval(k2, y[None, None, :], eta1p[None, :, None])
        vals.append(np.sum(K1 * K2 * moll[None, None, :], axis=2) * h / math.pi)
    v0, v1, v2 = vals
    # Richardson in eps (levels eps, eps/2, eps/4): eliminate O(eps), O(eps^2)
    return (v2 * 8 - v1 * 6 + v0) / 3
