"""Exception types raised across the package."""


class SdwtError(Exception):
    """Base class for all package errors."""


class ConstraintViolation(SdwtError):
    """The pair (s, r) is off the surface |s|^2 - |r|^2 = 1."""

    def __init__(self, deviation, message=None):
        self.deviation = deviation
        super().__init__(message or f"|s|^2 - |r|^2 - 1 = {deviation:.3e}")


class NegativeModulus(SdwtError):
    """Hyperbolic modulus mu must be nonnegative."""


class NonPositiveDilation(SdwtError):
    """Operation requires a dilation a > 0 (log-dilation undefined otherwise)."""


class GridTooCoarse(SdwtError):
    """Requested conjugate grid extends beyond the Nyquist band of the input grid."""


class QuadratureDivergence(SdwtError):
    """Quadrature error estimate exceeded its tolerance."""


class CutoffTooSmall(SdwtError):
    """Integration cutoff cuts through non-negligible integrand mass."""


class ZeroAdmissibility(SdwtError):
    """Admissibility integral vanishes; the wavelet cannot be normalized here."""


class SamplingTooSparse(SdwtError):
    """Translation/shift sampling is coarser than the wavelet decay scale."""


class TruncationOverflow(SdwtError):
    """State labels too large for the requested photon-number cutoff."""


class NotUnimodular(SdwtError):
    """ABCD matrix fails AD - BC = 1."""


class ComplexABCD(SdwtError):
    """ABCD entries must be real."""


class ZeroB(SdwtError):
    """Kernel evaluation requires B != 0 (pure-lens systems use the scaling path)."""


class DegenerateDenominator(SdwtError):
    """Matrix element denominator vanishes (s + r real, i.e. B = 0)."""


class BadSlice(SdwtError):
    """Requested slice axes are not present in the coefficient file."""


class ConfigError(SdwtError):
    """Run configuration failed validation."""
