#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "fracgreen/quadrature.hpp"
#include "fracgreen/types.hpp"

namespace fracgreen {

/// Order and skewness of a Riesz-Feller operator.
/// Valid when 0 < order <= 2 and |skew| <= min(order, 2 - order).
struct SymbolParams {
    double order = 2.0;
    double skew = 0.0;

    /// Violations of the constraint, one message each; empty when valid.
    std::vector<std::string> violations(const char* order_name = "order",
                                        const char* skew_name = "skew") const;
    void validate() const;
};

/// Fourier symbol Psi(k) = |k|^order exp(i sign(k) skew pi / 2); Psi(0) = 0.
/// The operator acts in Fourier space as multiplication by -Psi(k).
template <class Real>
std::complex<Real> riesz_feller_symbol(const SymbolParams& p, Real k) {
    if (k == Real(0)) return {};
    const Real phase = (k > 0 ? Real(1) : Real(-1)) * Real(p.skew) * Real(pi) / Real(2);
    return std::polar(std::pow(std::abs(k), Real(p.order)), phase);
}

/// Checked variant: validates p first.
Complex riesz_feller_symbol_checked(const SymbolParams& p, double k);

/// Applies the Riesz-Feller derivative to samples on a uniform grid through
/// its real-space hypersingular integral representation
///   Gamma(1+a)/pi { sin((a+s)pi/2) \int_0^inf [f(x+z) - f(x)] z^(-1-a) dz
///                 + sin((a-s)pi/2) \int_0^inf [f(x-z) - f(x)] z^(-1-a) dz }.
/// Samples are interpolated by cubic splines and extended by zero outside the
/// window (samples should decay to ~0 at both ends). Requires 0 < order < 2 (DomainError at order 2).
VectorXr riesz_feller_apply(const VectorXr& samples, double dx,
                            const SymbolParams& p, const QuadratureConfig& cfg = {});

/// Grünwald-Letnikov weights w_j = (-1)^j C(order, j), j = 0..n.
template <class Real>
struct GLWeights {
    Real order;
    vec_type<Real> weights;
};

template <class Real>
GLWeights<Real> gl_weights(Real order, Eigen::Index n) {
    if (!(order > Real(0))) throw DomainError("gl_weights: order must be positive");
    if (n < 0) throw DomainError("gl_weights: n must be non-negative");
    vec_type<Real> w(n + 1);
    w(0) = Real(1);
    for (Eigen::Index j = 1; j <= n; ++j) w(j) = w(j - 1) * (Real(1) - (order + Real(1)) / Real(j));
    return {order, std::move(w)};
}

}  // namespace fracgreen
