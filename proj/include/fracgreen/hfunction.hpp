#pragma once

#include <vector>

#include "fracgreen/quadrature.hpp"
#include "fracgreen/types.hpp"

namespace fracgreen {

/// One Gamma-factor parameter pair (a_j, A_j) or (b_j, B_j).
struct GammaPair {
    double shift;  // a_j or b_j
    double scale;  // A_j or B_j, > 0
};

/// Parameters of H^{m,n}_{p,q}[ z | (a_p, A_p) ; (b_q, B_q) ].
///
/// Mellin-Barnes kernel:
///   Theta(xi) = prod_{j<=m} Gamma(b_j + B_j xi) prod_{j<=n} Gamma(1 - a_j - A_j xi)
///             / prod_{j>m} Gamma(1 - b_j - B_j xi) prod_{j>n} Gamma(a_j + A_j xi)
struct HFunctionParams {
    int m = 0;
    int n = 0;
    std::vector<GammaPair> upper;  // length p
    std::vector<GammaPair> lower;  // length q

    /// Checks 0 <= n <= p, 1 <= m <= q, positive scales, and that the left
    /// poles (of Gamma(b_j + B_j xi)) and the right poles (of
    /// Gamma(1 - a_j - A_j xi)) are disjoint up to index `checked_index`.
    void validate(int checked_index = 64) const;

    /// H^{2,1}_{3,3} layout of the space-time fractional Green kernels:
    ///   upper (1, 1/beta), (time_shift, alpha/beta), (1, rho)
    ///   lower (1, 1),      (1, 1/beta),              (1, rho)
    /// with rho = (beta - theta) / (2 beta). time_shift is alpha for the kernel
    /// multiplying the first initial datum and alpha - 1 for the second.
    /// Throws DomainError unless 0 < rho < 1.
    static HFunctionParams green_kernel(double time_shift, double alpha, double beta,
                                        double theta);
};

/// Theta(xi) * z^(-xi); zero where a denominator Gamma has a pole.
Complex mellin_barnes_integrand(const HFunctionParams& params, Complex xi, double z);

/// Numerical value of the Mellin-Barnes integral
///   H(z) = 1/(2 pi i) \int_{c - i inf}^{c + i inf} Theta(xi) z^(-xi) dxi
/// along a vertical line separating the two pole families. For very small or
/// large z the line is moved across poles and the residues picked up on the
/// way are added (computed by trapezoidal contour integrals on circles, which
/// also handles clustered or double poles).
///
/// Throws DomainError for z <= 0, ConstraintError if no vertical line
/// separates the pole families, ToleranceError if the contour tail has not
/// decayed within cfg.mb_contour_height.
double h_function(const HFunctionParams& params, double z, const QuadratureConfig& cfg = {});

}  // namespace fracgreen
