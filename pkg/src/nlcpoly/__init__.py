"""Orthogonal polynomials, moment problems and spectral diagnostics for
positive sequences arising from nonlinear coherent states."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

from .sequences import (  # noqa: F401
    InequalityReport, MonotoneReport, ParameterDomainError, SequenceLimit,
    SequenceRangeError, SequenceSpec, check_monotone_and_bounded,
    check_nonlinear_inequalities, family_names, x_factorial, x_float,
    x_from_taylor_norms, x_limit, x_log_factorial, x_minus_limit, x_value,
)
from .special import (  # noqa: F401
    CMReport, DomainError, QParams, bessel_i, bessel_i_scaled, bessel_k,
    bessel_k_scaled, cm_sequence_test, gamma, gamma_quotient_g, log_gamma,
    pochhammer, q_gamma, q_gamma_quotient_h, q_pochhammer,
)
from .cm_generators import (  # noqa: F401
    FsConsistencyReport, fs_quotient, fs_quotient_consistency, fs_subset_sums,
    log_fs, sqrt_deviation_scaled, xn_from_gamma_quotient, xn_from_q_quotient,
    xn_grinshpan_ismail_s3,
)
from .moments import (  # noqa: F401
    BergDuranReport, HankelResult, MomentSequence, bareiss_determinant,
    berg_duran_check, hankel_determinant, hankel_polynomial,
)
from .recurrence import (  # noqa: F401
    RecurrenceCoeffs, general_monic_value, monic_q_coefficients,
    monic_q_value, phi_rescaled, phi_scaled, phi_value, phi_window,
    pollaczek_parameter_warning, pollaczek_value,
)
from .spectral import (  # noqa: F401
    SpectralResult, SupportEndpoints, TruncatedJacobi, build_truncated,
    char_poly, ismail_li_bounds, jacobi_zeros, support_endpoints, sturm_count,
)
from .quadrature import QuadratureResult, exp_sinh, tanh_sinh  # noqa: F401
from .measures import (  # noqa: F401
    DivergenceError, GramReport, MeasureSpec, MomentCheckReport,
    ResolutionCheck, coherent_normalization, get_measure, integrate,
    measure_names, resolution_of_identity_check, select_bessel_ladder_measure,
    verify_moment_problem, verify_orthonormality,
)
from .asymptotics import (  # noqa: F401
    AmplitudeEstimate, NevaiDiagnostic, amplitude_extract, nevai_amplitude,
    nevai_condition, rescaled_phi_window, zeta_log,
)

__version__ = "0.1.0"


@dataclass(frozen=True)
class PolynomialTriple:
    """Coupled representations of degree n for one sequence spec: the monic
    recurrence polynomial q_n, the monic determinant polynomial of the even
    moments, and the factor sqrt(x_n!/2^n) linking q_n to the orthonormal
    phi_n."""
    spec: SequenceSpec
    degree: int
    monic_coefficients: Tuple
    hankel_coefficients: Tuple
    orthonormal_scale: float

    def phi(self, x: float) -> float:
        return phi_value(self.spec, self.degree, x)

    def monic_q(self, x):
        return monic_q_value(self.spec, self.degree, x)


def polynomial_triple(spec: SequenceSpec, n: int) -> PolynomialTriple:
    moments = MomentSequence(spec)
    scale = math.sqrt(float(x_factorial(spec, n)) / 2.0 ** n)
    return PolynomialTriple(spec, n,
                            tuple(monic_q_coefficients(spec, n)),
                            tuple(hankel_polynomial(moments, n)),
                            scale)
