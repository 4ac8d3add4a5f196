#include "fracgreen/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fracgreen {

std::vector<std::string> SymbolParams::violations(const char* order_name,
                                                  const char* skew_name) const {
    std::vector<std::string> out;
    auto fmt = [](double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        return os.str();
    };
    if (!std::isfinite(order) || !(order > 0.0) || !(order <= 2.0)) {
        out.push_back(std::string(order_name) + " = " + fmt(order) + " must lie in (0, 2]");
        return out;
    }
    const double bound = std::min(order, 2.0 - order);
    // closed set; the slack only absorbs rounding in 2 - order
    if (!std::isfinite(skew) || std::abs(skew) > bound + 4 * std::numeric_limits<double>::epsilon()) {
        out.push_back("|" + std::string(skew_name) + "| = " + fmt(std::abs(skew)) +
                      " must not exceed min(" + order_name + ", 2 - " + order_name +
                      ") = " + fmt(bound));
    }
    return out;
}

void SymbolParams::validate() const {
    auto v = violations();
    if (!v.empty()) throw ConstraintError(std::move(v));
}

Complex riesz_feller_symbol_checked(const SymbolParams& p, double k) {
    p.validate();
    return riesz_feller_symbol(p, k);
}

namespace {

// Natural cubic spline through (i*h, y_i). On [x_i, x_i + h]:
//   s(x_i + z) = y_i + b_i z + c_i z^2 + d_i z^3.
struct Spline {
    VectorXr y, b, c, d;
    double h;

    Spline(const VectorXr& values, double step) : y(values), h(step) {
        const Eigen::Index n = y.size();
        VectorXr m = VectorXr::Zero(n);  // second derivatives
        if (n > 2) {
            const Eigen::Index k = n - 2;
            VectorXr diag = VectorXr::Constant(k, 4.0), rhs(k);
            for (Eigen::Index i = 0; i < k; ++i)
                rhs(i) = 6.0 * (y(i + 2) - 2.0 * y(i + 1) + y(i)) / (h * h);
            for (Eigen::Index i = 1; i < k; ++i) {
                const double w = 1.0 / diag(i - 1);
                diag(i) -= w;
                rhs(i) -= w * rhs(i - 1);
            }
            m(k) = rhs(k - 1) / diag(k - 1);
            for (Eigen::Index i = k - 2; i >= 0; --i) m(i + 1) = (rhs(i) - m(i + 2)) / diag(i);
        }
        b.resize(n);
        c.resize(n);
        d.resize(n);
        for (Eigen::Index i = 0; i + 1 < n; ++i) {
            b(i) = (y(i + 1) - y(i)) / h - h * (2.0 * m(i) + m(i + 1)) / 6.0;
            c(i) = m(i) / 2.0;
            d(i) = (m(i + 1) - m(i)) / (6.0 * h);
        }
        b(n - 1) = b(n - 2) + 2.0 * c(n - 2) * h + 3.0 * d(n - 2) * h * h;
        c(n - 1) = m(n - 1) / 2.0;
        d(n - 1) = 0.0;
    }

    double operator()(Eigen::Index i, double z) const {
        return y(i) + z * (b(i) + z * (c(i) + z * d(i)));
    }
};

}  // namespace

VectorXr riesz_feller_apply(const VectorXr& samples, double dx,
                            const SymbolParams& p, const QuadratureConfig& cfg) {
    p.validate();
    cfg.validate();
    const double a = p.order;
    if (a >= 2.0) throw DomainError("riesz_feller_apply: integral representation needs order < 2");
    if (!(dx > 0.0)) throw DomainError("riesz_feller_apply: dx must be positive");
    const Eigen::Index n = samples.size();
    if (n == 0) return {};

    // two zero nodes on each side so every evaluation point has a spline
    // interval on both sides
    constexpr Eigen::Index pad = 2;
    VectorXr padded = VectorXr::Zero(n + 2 * pad);
    padded.segment(pad, n) = samples;
    const Spline s(padded, dx);
    const Eigen::Index np = padded.size();

    const double sp = std::sin((a + p.skew) * pi / 2);
    const double sm = std::sin((a - p.skew) * pi / 2);
    const double pref = std::exp(std::lgamma(1.0 + a)) / pi;
    // for order >= 1 the linear term z f'(x) is removed from each one-sided
    // integrand (finite-part regularization); at order 1 its weights cancel
    const bool subtract = a >= 1.0;

    const GaussRule& g = gauss_legendre(cfg.nodes_per_unit);
    // per interval j >= 1: nodes z = e^u over [ln(j h), ln((j+1) h)], weight including z^(-1-a) dz
    auto moment = [a](double pw, double h) { return std::pow(h, pw - a) / (pw - a); };

    VectorXr out(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index c0 = i + pad;
        const double f0 = s.y(c0);
        const double fp = s.b(c0);
        const double fpp = s.c(c0);

        auto side = [&](int dir) {
            // [0, dx]: exact moments of the spline piece
            // f(x + dir z) - f(x) = dir fp z + fpp z^2 + d3 z^3 on [0, dx]; the
            // spline is C2, so only the cubic coefficient differs between sides
            double acc = 0.0;
            const double d3 = dir > 0 ? s.d(c0) : -s.d(c0 - 1);
            if (!subtract) acc += dir * fp * moment(1.0, dx);
            acc += fpp * moment(2.0, dx) + d3 * moment(3.0, dx);

            // (dx, Z]: graded Gauss per spline interval
            const Eigen::Index steps = dir > 0 ? np - 1 - c0 : c0;
            for (Eigen::Index j = 1; j < steps; ++j) {
                const double u0 = std::log(j * dx), u1 = std::log((j + 1) * dx);
                const double hu = 0.5 * (u1 - u0), mu = 0.5 * (u1 + u0);
                const Eigen::Index cell = dir > 0 ? c0 + j : c0 - j - 1;
                double part = 0.0;
                for (std::size_t q = 0; q < g.nodes.size(); ++q) {
                    const double z = std::exp(mu + hu * g.nodes[q]);
                    const double local = dir > 0 ? z - j * dx : (j + 1) * dx - z;
                    double diff = s(cell, local) - f0;
                    if (subtract) diff -= dir * fp * z;
                    part += g.weights[q] * diff * std::pow(z, -a);  // dz = z du
                }
                acc += hu * part;
            }
            // beyond the padded window the samples are zero
            const double Z = steps * dx;
            acc += -f0 * std::pow(Z, -a) / a;
            if (subtract && a > 1.0) acc += -dir * fp * std::pow(Z, 1.0 - a) / (a - 1.0);
            // order 1: the divergent linear tails of the two sides cancel up to ln(Z+/Z-)
            if (subtract && a == 1.0) acc += dir * fp * std::log(Z);
            return acc;
        };

        out(i) = pref * (sp * side(+1) + sm * side(-1));
        // at order 1 the skewed part of the symbol is a pure drift
        if (a == 1.0) out(i) += std::sin(p.skew * pi / 2) * fp;
    }
    return out;
}

}  // namespace fracgreen
