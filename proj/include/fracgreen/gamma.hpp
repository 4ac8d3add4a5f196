#pragma once

#include "fracgreen/types.hpp"

namespace fracgreen {

/// Gamma function of a complex argument (Lanczos, g = 7, with reflection for
/// Re z < 1/2). Relative error is ~1e-14 for |z| <= 50.
/// Throws PoleError at z = 0, -1, -2, ...
Complex gamma_complex(Complex z);

/// Principal-branch-agnostic log Gamma: exp(log_gamma_complex(z)) == Gamma(z).
/// The imaginary part is only defined modulo 2*pi. Safe for large |Im z|,
/// where Gamma itself under- or overflows.
Complex log_gamma_complex(Complex z);

/// 1/Gamma(x) for real x, returning exactly 0 at the poles.
double rgamma(double x);

}  // namespace fracgreen
