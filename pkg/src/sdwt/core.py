"""Parameter types, grids and sampled fields shared by all transform modules.

Everything here is immutable after construction and safe to share between
threads.  Fields are tabulated on uniform tensor grids whose axes are
symmetric about their centers (half-offset node placement, so a grid never
contains its own center point for even counts).
"""

from __future__ import annotations

import cmath
import json
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import ConstraintViolation, NegativeModulus, SdwtError

#: constraint tolerance on |s|^2 - |r|^2 = 1 used by validate_symplectic
SYMPLECTIC_TOL = 1e-9


@dataclass(frozen=True)
class SymplecticParams:
    """Complex pair (s, r) on the surface |s|^2 - |r|^2 = 1.

    The pair defines the plane map alpha -> s*alpha - r*conj(alpha); the
    constraint makes the map area preserving.  |s| >= 1 always holds on the
    surface.
    """

    s: complex
    r: complex

    def __post_init__(self):
        object.__setattr__(self, "s", complex(self.s))
        object.__setattr__(self, "r", complex(self.r))

    @property
    def deviation(self) -> float:
        return abs(self.s) ** 2 - abs(self.r) ** 2 - 1.0


def validate_symplectic(s: complex, r: complex, tol: float = SYMPLECTIC_TOL) -> SymplecticParams:
    """Return SymplecticParams iff |s|^2 - |r|^2 = 1 within `tol`.

    Raises
    ------
    ConstraintViolation
        with the signed deviation when the pair is off the surface.
    """
    p = SymplecticParams(s, r)
    if not (abs(p.deviation) <= tol and math.isfinite(p.deviation)):
        raise ConstraintViolation(p.deviation)
    return p


def symplectic_from_hyperbolic(mu: float, phi: float, theta: float) -> SymplecticParams:
    """Surface point s = e^{i phi} cosh(mu), r = e^{i theta} sinh(mu).

    The constraint holds by construction for any mu >= 0 and phases.
    """
    if mu < 0:
        raise NegativeModulus(f"mu must be >= 0, got {mu}")
    s = cmath.exp(1j * phi) * math.cosh(mu)
    r = cmath.exp(1j * theta) * math.sinh(mu)
    return SymplecticParams(s, r)


@dataclass(frozen=True)
class DilationParams:
    """Real dilation a != 0 and shift b.

    ``lam`` is the log-dilation (a = e^lam), defined only for a > 0; it is
    None for a < 0 where the exponential form has no real solution.
    """

    a: float
    b: float

    def __post_init__(self):
        if self.a == 0 or not math.isfinite(self.a):
            raise SdwtError(f"dilation a must be finite and nonzero, got {self.a}")

    @property
    def lam(self) -> float | None:
        return math.log(self.a) if self.a > 0 else None

    @property
    def sech_lam(self) -> float | None:
        # identity: sech(ln a) = 2a / (1 + a^2)
        return 2 * self.a / (1 + self.a * self.a) if self.a > 0 else None

    @property
    def tanh_lam(self) -> float | None:
        # identity: tanh(ln a) = (a^2 - 1) / (1 + a^2)
        return (self.a * self.a - 1) / (1 + self.a * self.a) if self.a > 0 else None


@dataclass(frozen=True)
class TranslationParams:
    """Complex translation kappa in the alpha plane."""

    kappa: complex

    def __post_init__(self):
        object.__setattr__(self, "kappa", complex(self.kappa))
        if not (math.isfinite(self.kappa.real) and math.isfinite(self.kappa.imag)):
            raise SdwtError("kappa must be finite")


@dataclass(frozen=True)
class TransformPoint:
    """One point (s, r, kappa; a, b) of the transform parameter space."""

    sym: SymplecticParams
    dil: DilationParams
    tr: TranslationParams

    @classmethod
    def make(cls, s, r, kappa, a, b) -> "TransformPoint":
        return cls(validate_symplectic(s, r), DilationParams(a, b), TranslationParams(kappa))


@dataclass(frozen=True)
class Axis:
    """Uniform 1D axis symmetric about its center."""

    center: float
    step: float
    count: int

    def __post_init__(self):
        if self.count < 2:
            raise SdwtError(f"axis count must be >= 2, got {self.count}")
        if not (self.step > 0 and math.isfinite(self.step)):
            raise SdwtError(f"axis step must be positive, got {self.step}")

    @property
    def values(self) -> np.ndarray:
        return self.center + (np.arange(self.count) - (self.count - 1) / 2) * self.step

    @property
    def extent(self) -> float:
        """Half-width of the covered interval."""
        return self.count * self.step / 2

    @classmethod
    def from_radius(cls, radius: float, count: int, center: float = 0.0) -> "Axis":
        return cls(center=center, step=2 * radius / count, count=count)


@dataclass(frozen=True)
class Grid3D:
    """Tensor grid over (alpha1, alpha2, x)."""

    alpha1_axis: Axis
    alpha2_axis: Axis
    x_axis: Axis

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.alpha1_axis.count, self.alpha2_axis.count, self.x_axis.count)

    @property
    def cell_volume(self) -> float:
        return self.alpha1_axis.step * self.alpha2_axis.step * self.x_axis.step

    def alpha_mesh(self) -> np.ndarray:
        """Complex alpha = alpha1 + i alpha2, broadcast to (n1, n2, 1)."""
        a1 = self.alpha1_axis.values[:, None, None]
        a2 = self.alpha2_axis.values[None, :, None]
        return a1 + 1j * a2

    def x_mesh(self) -> np.ndarray:
        return self.x_axis.values[None, None, :]

    @classmethod
    def from_radii(cls, alpha_radius: float, alpha_count: int,
                   x_radius: float, x_count: int) -> "Grid3D":
        ax = Axis.from_radius(alpha_radius, alpha_count)
        return cls(ax, Axis.from_radius(alpha_radius, alpha_count),
                   Axis.from_radius(x_radius, x_count))


@dataclass(frozen=True)
class SampledField:
    """Complex-valued g(alpha, x) tabulated on a Grid3D.

    values has shape (n_alpha1, n_alpha2, n_x) in row-major (alpha1,
    alpha2, x) order.
    """

    grid: Grid3D
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != self.grid.shape:
            raise SdwtError(f"values shape {v.shape} != grid shape {self.grid.shape}")
        if not np.all(np.isfinite(v.view(float))):
            raise SdwtError("field contains non-finite entries")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def norm_sq(self) -> float:
        """Plain L2 norm squared: integral of |g|^2 dx d2alpha (no 1/pi weights)."""
        return float(np.sum(np.abs(self.values) ** 2)) * self.grid.cell_volume

    def inner(self, other: "SampledField") -> complex:
        """Integral of g * conj(g') dx d2alpha."""
        if other.grid != self.grid:
            raise SdwtError("fields live on different grids")
        return complex(np.sum(self.values * np.conj(other.values)) * self.grid.cell_volume)


@dataclass(frozen=True)
class FourierPoint:
    """Conjugate-space point: beta conjugate to alpha, p conjugate to x."""

    beta: complex
    p: float


@dataclass(frozen=True)
class CoefficientField:
    """Transform values W over a sampled parameter set.

    ``axes`` maps the five parameter directions to node arrays; ``values``
    is ordered lexicographically over (mu, phi, a, b, kappa1, kappa2) by
    construction in the engine.  ``points`` materializes TransformPoint
    objects lazily (convenient for small samplings, avoided for large).
    """

    mu: np.ndarray
    phi: np.ndarray
    theta: float
    a: np.ndarray
    b: np.ndarray
    kappa1: np.ndarray
    kappa2: np.ndarray
    values: np.ndarray
    quadrature_meta: dict = field(default_factory=dict)
    err_est: np.ndarray | None = None

    def __post_init__(self):
        n = (len(self.mu) * len(self.phi) * len(self.a) * len(self.b)
             * len(self.kappa1) * len(self.kappa2))
        v = np.asarray(self.values, dtype=complex)
        if v.size != n:
            raise SdwtError(f"{v.size} values for {n} sampling points")
        object.__setattr__(self, "values", v.reshape(-1))

    @property
    def shape(self) -> tuple[int, ...]:
        return (len(self.mu), len(self.phi), len(self.a), len(self.b),
                len(self.kappa1), len(self.kappa2))

    def points(self):
        """Yield (index, TransformPoint) in value order."""
        i = 0
        for mu in self.mu:
            for phi in self.phi:
                s = symplectic_from_hyperbolic(float(mu), float(phi), self.theta)
                for a in self.a:
                    for b in self.b:
                        for k1 in self.kappa1:
                            for k2 in self.kappa2:
                                yield i, TransformPoint(
                                    s, DilationParams(float(a), float(b)),
                                    TranslationParams(complex(k1, k2)))
                                i += 1


# ---------------------------------------------------------------------------
# field serialization: JSON header + payload (raw float64 pairs or CSV)
# ---------------------------------------------------------------------------

def _axis_dict(ax: Axis) -> dict:
    return {"center": ax.center, "step": ax.step, "count": ax.count}


def _axis_from_dict(d: dict) -> Axis:
    return Axis(center=float(d["center"]), step=float(d["step"]), count=int(d["count"]))


def save_field(f: SampledField, path: str, payload: str = "bin") -> None:
    """Write a field as `path` (JSON header) plus `path`.bin or `path`.csv.

    The payload holds interleaved (re, im) float64 values, row-major over
    (alpha1, alpha2, x).
    """
    if payload not in ("bin", "csv"):
        raise SdwtError(f"payload must be 'bin' or 'csv', got {payload!r}")
    header = {
        "format": "sdwt-field-v1",
        "payload": payload,
        "order": ["alpha1", "alpha2", "x"],
        "axes": {
            "alpha1": _axis_dict(f.grid.alpha1_axis),
            "alpha2": _axis_dict(f.grid.alpha2_axis),
            "x": _axis_dict(f.grid.x_axis),
        },
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(header, fh, indent=1)
        fh.write("\n")
    flat = np.empty(f.values.size * 2, dtype=np.float64)
    flat[0::2] = f.values.real.ravel()
    flat[1::2] = f.values.imag.ravel()
    if payload == "bin":
        flat.tofile(path + ".bin")
    else:
        np.savetxt(path + ".csv", flat.reshape(-1, 2), delimiter=",",
                   header="re,im", comments="")


def load_field(path: str) -> SampledField:
    with open(path, encoding="utf-8") as fh:
        header = json.load(fh)
    if header.get("format") != "sdwt-field-v1":
        raise SdwtError(f"not a field file: {path}")
    axes = header["axes"]
    grid = Grid3D(_axis_from_dict(axes["alpha1"]), _axis_from_dict(axes["alpha2"]),
                  _axis_from_dict(axes["x"]))
    if header["payload"] == "bin":
        flat = np.fromfile(path + ".bin", dtype=np.float64)
    else:
        flat = np.loadtxt(path + ".csv", delimiter=",", skiprows=1).reshape(-1)
    vals = flat[0::2] + 1j * flat[1::2]
    return SampledField(grid, vals.reshape(grid.shape))


def save_coefficients(c: CoefficientField, path: str) -> None:
    """Write coefficients as a CSV with one row per sampling point.

    Columns: mu, phi, theta, kappa_re, kappa_im, a, b, W_re, W_im, err_est.
    A sibling JSON file `path`.json records the sampling axes and metadata.
    """
    meta = {
        "format": "sdwt-coefficients-v1",
        "theta": c.theta,
        "axes": {k: np.asarray(getattr(c, k), dtype=float).tolist()
                 for k in ("mu", "phi", "a", "b", "kappa1", "kappa2")},
        "quadrature_meta": c.quadrature_meta,
    }
    with open(path + ".json", "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=1)
        fh.write("\n")
    err = c.err_est if c.err_est is not None else np.zeros(c.values.size)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("mu,phi,theta,kappa_re,kappa_im,a,b,W_re,W_im,err_est\n")
        i = 0
        theta = float(c.theta)
        for mu in map(float, c.mu):
            for phi in map(float, c.phi):
                for a in map(float, c.a):
                    for b in map(float, c.b):
                        for k1 in map(float, c.kappa1):
                            for k2 in map(float, c.kappa2):
                                w = c.values[i]
                                fh.write(f"{mu!r},{phi!r},{theta!r},{k1!r},{k2!r},"
                                         f"{a!r},{b!r},{float(w.real)!r},"
                                         f"{float(w.imag)!r},{float(err[i])!r}\n")
                                i += 1


def load_coefficients(path: str) -> CoefficientField:
    with open(path + ".json", encoding="utf-8") as fh:
        meta = json.load(fh)
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    vals = data[:, 7] + 1j * data[:, 8]
    ax = {k: np.asarray(v, dtype=float) for k, v in meta["axes"].items()}
    return CoefficientField(mu=ax["mu"], phi=ax["phi"], theta=float(meta["theta"]),
                            a=ax["a"], b=ax["b"], kappa1=ax["kappa1"], kappa2=ax["kappa2"],
                            values=vals, quadrature_meta=meta.get("quadrature_meta", {}),
                            err_est=data[:, 9])
