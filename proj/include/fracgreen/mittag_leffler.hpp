#pragma once

#include "fracgreen/types.hpp"

namespace fracgreen {

enum class MLMethod { zero, taylor, asymptotic, contour };

struct MLEvaluation {
    Complex value;
    double error_estimate;  // absolute
    MLMethod method;
};

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z) = sum z^n / Gamma(alpha n + beta).
///
/// Region switching:
///  - |z| small: Taylor series with a running truncation estimate;
///  - |z|^(1/alpha) large: algebraic asymptotic series plus the exponential
///    contributions of the poles of s^(alpha-beta)/(s^alpha - z) on the
///    principal sheet;
///  - otherwise: Laplace-transform inversion on an optimal parabolic
///    (Hankel-type) contour, with residues for the poles to the right of it.
///
/// Requires alpha > 0. Throws ToleranceError if the selected region fails its
/// own error estimate and DomainError if the value overflows.
Complex mittag_leffler(double alpha, double beta, Complex z);

/// Same as mittag_leffler, also reporting the region used and its error estimate.
MLEvaluation mittag_leffler_detail(double alpha, double beta, Complex z);

/// Largest real part among the poles s_j = z^(1/alpha) e^(2 pi i j / alpha)
/// on the principal sheet, or -inf if there are none. exp() of this bounds
/// the exponential (non-algebraic) part of E_{alpha,beta}(z) for large |z|.
double mittag_leffler_exponential_rate(double alpha, Complex z);

}  // namespace fracgreen
