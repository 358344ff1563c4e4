"""Mixed dilation-symplectic wavelet transform toolkit.

A numerical library for the continuous transform of fields g(alpha, x) on
the complex plane times the real line, where the complex argument undergoes
an area-preserving plane map and translation while the real argument is
dilated and shifted.  Includes the conjugate-space fast path, energy
identity and inversion machinery, a truncated two-mode Fock-space oracle
realizing the transform's operator form, and the ray-matrix (ABCD) kernel
tools.
"""

from .core import (Axis, CoefficientField, DilationParams, FourierPoint, Grid3D,
                   SampledField, SymplecticParams, TransformPoint,
                   TranslationParams, load_coefficients, load_field,
                   save_coefficients, save_field, symplectic_from_hyperbolic,
                   validate_symplectic)
from .engine import (ParameterSampling, ParsevalResult, QuadratureSpec,
                     adjoint_transform, classic_wt_1d, invert, parseval_check,
                     reproduce, residual_report, sdwt_batch, sdwt_forward,
                     sdwt_forward_fourier, swt_complex)
from .fock import (EtaLabel, FockOperator, FockQuadrature, FockSpace, FockVector,
                   build_U_normal_ordered, build_U_quadrature, coherent_vector,
                   ecs_vector, eigen_residual_weak, eta_vector, fock_wavefunction,
                   fock_wavefunction_wavelet, ladder_ops, overlap, overlap_resummed,
                   quantum_sdwt, resolution_identity_check,
                   smeared_orthogonality_check)
from .fourier import FourierField, conjugate_grid, forward_ft, inverse_ft
from .kernel import (ABCDMatrix, LensFresnelKernel, abcd_from_sr, eq_matrix_element,
                     kernel_compose, kernel_convolve_numeric, kernel_eval,
                     sr_from_abcd)
from .wavelets import (AdmissibilityMeasure, MotherWavelet, admissibility_integral,
                       eval_family, eval_mother, gauss_hermite_wavelet, make_wavelet,
                       normalize_admissible, spectrum, spectrum_quadrature)

__version__ = "0.1.0"
