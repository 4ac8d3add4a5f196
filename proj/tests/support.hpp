#pragma once

#include <cmath>

#include "fracgreen/green.hpp"

namespace support {

// Large-|x| series of G for real lambda > 0 and beta in (1, 2): terms
// c_n |x|^(-1-n beta). Returns the tail integral beyond L on one side, or
// with `deriv` the derivative of x G(x) in u = ln x at x = L.
inline double g_tail(const fracgreen::ProblemSpec& s, double t, double L, int side, bool deriv = false) {
    using fracgreen::pi;
    const double th = side > 0 ? s.theta : -s.theta;
    const double lam = s.lambda.real(), a = s.alpha, b = s.beta;
    double acc = 0.0;
    for (int n = 1; n <= 4; ++n) {
        const double c = (n % 2 ? 1.0 : -1.0) * std::pow(lam, n) * std::pow(t, (n + 1) * a - 1) /
                         std::tgamma((n + 1) * a) * std::tgamma(1 + n * b) * std::sin(n * (b - th) * pi / 2) / pi;
        acc += deriv ? -n * b * c * std::pow(L, -n * b) : c * std::pow(L, -n * b) / (n * b);
    }
    return acc;
}

// \int G(x, t) dx by the trapezoid rule in u = ln|x| on [lo, ln L] per side,
// an Euler-Maclaurin correction at ln L, and the series tail beyond L.
inline double g_mass_numeric(const fracgreen::ProblemSpec& s, double t, double h = 0.4, double lo = -9.0,
                             double L = 20.0) {
    using namespace fracgreen;
    const int n = static_cast<int>(std::ceil((std::log(L) - lo) / h));
    const double hh = (std::log(L) - lo) / n;
    const double g0 = green_point(GreenKind::G, 0.0, t, s).real();
    double m = 0.0;
    for (int side : {1, -1}) {
        double acc = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double x = std::exp(lo + i * hh);
            const double w = (i == 0 || i == n) ? 0.5 : 1.0;
            acc += w * green_point(GreenKind::G, side * x, t, s).real() * x;
        }
        m += acc * hh + g0 * std::exp(lo) + g_tail(s, t, L, side) - hh * hh / 12 * g_tail(s, t, L, side, true);
    }
    return m;
}

}  // namespace support
