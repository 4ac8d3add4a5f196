#include "fracgreen/green.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracgreen/gamma.hpp"
#include "fracgreen/hfunction.hpp"
#include "fracgreen/mittag_leffler.hpp"

namespace fracgreen {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

bool coupled_kind(GreenKind k) { return k == GreenKind::G3 || k == GreenKind::G4; }
bool second_datum_kind(GreenKind k) { return k == GreenKind::G2 || k == GreenKind::G4; }

// Mittag-Leffler second index and power of t in front of it.
double ml_beta(GreenKind k, double alpha) { return second_datum_kind(k) ? alpha - 1.0 : alpha; }

double time_power(GreenKind k, double alpha) {
    switch (k) {
        case GreenKind::G1: return 0.0;
        case GreenKind::G2:
        case GreenKind::G4: return alpha - 2.0;
        default: return alpha - 1.0;
    }
}

void check_regime(GreenKind kind, const ProblemSpec& spec) {
    if (second_datum_kind(kind) && !spec.super_regime())
        throw RegimeError(to_string(kind) + " needs 1 < alpha <= 2 (alpha = " + fmt(spec.alpha) + ")");
}

// E_{alpha,b}(-w) decays along a ray only for |arg w| < pi (1 - alpha/2);
// a small margin keeps the quadrature away from the neutral case
constexpr double sector_margin = 1e-3;

bool decaying(Complex coef, double alpha) {
    if (coef == Complex(0.0)) return true;
    const double limit = std::min(pi / 2, pi * (1.0 - alpha / 2)) - sector_margin;
    return coef.real() > 0.0 && std::abs(std::arg(coef)) < limit;
}

// Decay scale of the integrand: where |c(k)| t^alpha ~ 1.
double decay_scale(GreenKind kind, double t, const ProblemSpec& spec) {
    double kappa = std::pow(std::abs(spec.lambda) * std::pow(t, spec.alpha), -1.0 / spec.beta);
    if (coupled_kind(kind) && spec.source_mode == SourceMode::riesz_feller && spec.mu != Complex(0.0))
        kappa = std::min(kappa, std::pow(std::abs(spec.mu) * std::pow(t, spec.alpha), -1.0 / spec.gamma));
    return kappa;
}

// \int_0^inf k^q E_{alpha,b}(-a k^beta) dk = a^(-s) Gamma(s) Gamma(1-s) / (beta Gamma(b - alpha s)),
// s = (q+1)/beta in (0,1), from the Mellin transform of E_{alpha,b}(-u).
Complex ray_moment(double q, double alpha, double b, double beta, Complex a) {
    const double s = (q + 1.0) / beta;
    return std::pow(a, -s) * std::tgamma(s) * std::tgamma(1.0 - s) * rgamma(b - alpha * s) / beta;
}

// G(0, t) through ray_moment; false if the kind has no such form.
bool origin_value(GreenKind kind, double t, const ProblemSpec& spec, Complex& out) {
    if (coupled_kind(kind) && spec.mu != Complex(0.0)) return false;
    double q = 0.0;
    Complex mplus = 1.0;
    if (kind == GreenKind::G1 && spec.source_mode == SourceMode::riesz_feller) {
        q = spec.gamma;
        mplus = std::polar(1.0, spec.phi * pi / 2);
    }
    const double s = (q + 1.0) / spec.beta;
    if (!(s < 1.0)) throw DomainError("green_point: kernel is unbounded at x = 0 (need (q+1)/beta < 1, got " + fmt(s) + ")");
    const double ta = std::pow(t, spec.alpha);
    const Complex aplus = spec.lambda * std::polar(1.0, spec.theta * pi / 2) * ta;
    const Complex aminus = spec.lambda * std::polar(1.0, -spec.theta * pi / 2) * ta;
    const double b = ml_beta(kind, spec.alpha);
    const Complex sum = mplus * ray_moment(q, spec.alpha, b, spec.beta, aplus) +
                        std::conj(mplus) * ray_moment(q, spec.alpha, b, spec.beta, aminus);
    out = std::pow(t, time_power(kind, spec.alpha)) * sum / (2.0 * pi);
    return true;
}

// One-sided Fourier integral \int_0^inf e^{-i k x} h(sgn k) dk.
class HalfLine {
public:
    HalfLine(GreenKind kind, double t, const ProblemSpec& spec, const QuadratureConfig& cfg, int sgn)
        : kind_(kind), t_(t), spec_(spec), cfg_(cfg), sgn_(sgn), ta_(std::pow(t, spec.alpha)) {}

    Complex h(double k) const { return green_hat(kind_, sgn_ * k, t_, spec_); }

    // largest real part of the exponential (pole) contributions at k
    double rate(double k) const {
        const Complex w = spec_.symbol(sgn_ * k, coupled_kind(kind_)) * ta_;
        return mittag_leffler_exponential_rate(spec_.alpha, -w);
    }

    Complex integrate(double x, double kappa) const {
        const GaussRule& g = gauss_legendre(cfg_.nodes_per_unit);
        auto panel = [&](double a, double b) {
            const double hw = 0.5 * (b - a), mid = 0.5 * (a + b);
            Complex acc = 0.0;
            for (std::size_t q = 0; q < g.nodes.size(); ++q) {
                const double k = mid + hw * g.nodes[q];
                acc += g.weights[q] * std::polar(1.0, -k * x) * h(k);
            }
            return hw * acc;
        };

        const double ax = std::abs(x);
        const double wave = ax > 0.0 ? pi / ax : std::numeric_limits<double>::infinity();
        const double unit = std::min(kappa, wave);
        // a configured k_max is a hard cutoff (band-limited kernel), otherwise
        // the range extends until the exponential parts have died out and the
        // algebraic tail is added analytically
        const bool truncated = cfg_.k_max > 0.0;
        constexpr double dead = -40.0;
        double k_exp = unit;
        if (truncated) {
            k_exp = cfg_.k_max;
        } else {
            while (rate(k_exp) > dead) {
                k_exp *= 1.25;
                if (k_exp > 1e8 * kappa) throw ToleranceError("green_point: Mittag-Leffler exponential part does not decay");
            }
        }
        double K = truncated ? cfg_.k_max : std::max({50.0 * kappa, k_exp, ax > 0.0 ? 40.0 / ax : 0.0});
        if (ax == 0.0 && !truncated) K = std::max(K, 1000.0 * kappa);

        Complex sum = 0.0;
        // geometric grading towards the |k|^beta kink at k = 0
        double hi = std::min(unit, K);
        for (int j = 0; j < 52; ++j) {
            sum += panel(0.5 * hi, hi);
            hi *= 0.5;
        }
        double k = std::min(unit, K);
        while (k < K) {
            double len = k < k_exp ? 0.5 * kappa : std::max(0.5 * kappa, 0.5 * k);
            len = std::min({len, wave, K - k});
            sum += panel(k, k + len);
            k += len;
        }
        return truncated ? sum : sum + tail(K, x);
    }

private:
    // \int_K^inf e^{-ikx} h dk from the algebraic tail of h
    Complex tail(double K, double x) const {
        const double d = 1e-2 * K;
        const Complex h0 = h(K), hp = h(K + d), hm = h(K - d);
        if (h0 == Complex(0.0)) return 0.0;
        const Complex d1 = (hp - hm) / (2.0 * d);
        if (x == 0.0) {
            // h ~ C k^(-p)
            const Complex p = -K * d1 / h0;
            if (!(p.real() > 1.0)) throw DomainError("green_point: kernel is unbounded at x = 0");
            return h0 * K / (p - 1.0);
        }
        const Complex d2 = (hp - 2.0 * h0 + hm) / (d * d);
        const Complex ix(0.0, x);
        return std::polar(1.0, -K * x) * (h0 / ix + d1 / (ix * ix) + d2 / (ix * ix * ix));
    }

    GreenKind kind_;
    double t_;
    const ProblemSpec& spec_;
    const QuadratureConfig& cfg_;
    int sgn_;
    double ta_;
};

}  // namespace

std::vector<std::string> ProblemSpec::violations() const {
    std::vector<std::string> out;
    if (!std::isfinite(alpha) || !(alpha > 0.0) || !(alpha <= 2.0))
        out.push_back("alpha = " + fmt(alpha) + " must lie in (0, 2]");
    else if (regime == Regime::sub && alpha > 1.0)
        out.push_back("regime mismatch: alpha = " + fmt(alpha) + " declared in 0 < alpha <= 1");
    else if (regime == Regime::super && alpha <= 1.0)
        out.push_back("regime mismatch: alpha = " + fmt(alpha) + " declared in 1 < alpha <= 2");
    for (auto& v : space_symbol().violations("beta", "theta")) out.push_back(v);
    if (mu != Complex(0.0) && source_mode == SourceMode::riesz_feller)
        for (auto& v : source_symbol().violations("gamma", "phi")) out.push_back(v);
    if (!is_finite(lambda)) out.push_back("lambda must be finite");
    if (!is_finite(mu)) out.push_back("mu must be finite");
    if (lambda == Complex(0.0)) out.push_back("lambda must be nonzero");
    return out;
}

void ProblemSpec::validate() const {
    auto v = violations();
    if (!v.empty()) throw ConstraintError(std::move(v));
}

Complex ProblemSpec::source_multiplier(double k) const {
    return source_mode == SourceMode::identity ? Complex(1.0) : riesz_feller_symbol(source_symbol(), k);
}

Complex ProblemSpec::source_sign_mu() const {
    return source_mode == SourceMode::identity ? mu : -mu;
}

Complex ProblemSpec::symbol(double k, bool coupled_kernel) const {
    Complex c = lambda * riesz_feller_symbol(space_symbol(), k);
    if (coupled_kernel) c -= source_sign_mu() * source_multiplier(k);
    return c;
}

std::string to_string(GreenKind kind) {
    switch (kind) {
        case GreenKind::G: return "G";
        case GreenKind::G1: return "G1";
        case GreenKind::G2: return "G2";
        case GreenKind::G3: return "G3";
        case GreenKind::G4: return "G4";
    }
    return "?";
}

GreenKind parse_green_kind(const std::string& s) {
    for (GreenKind k : {GreenKind::G, GreenKind::G1, GreenKind::G2, GreenKind::G3, GreenKind::G4})
        if (to_string(k) == s) return k;
    throw DomainError("unknown Green kind '" + s + "' (expected G, G1, G2, G3 or G4)");
}

std::string to_string(SourceMode mode) {
    return mode == SourceMode::identity ? "identity" : "riesz_feller";
}

SourceMode parse_source_mode(const std::string& s) {
    if (s == "identity") return SourceMode::identity;
    if (s == "riesz_feller" || s == "riesz-feller") return SourceMode::riesz_feller;
    throw DomainError("unknown source mode '" + s + "' (expected riesz_feller or identity)");
}

Complex green_hat(GreenKind kind, double k, double t, const ProblemSpec& spec) {
    check_regime(kind, spec);
    if (!(t > 0.0)) throw DomainError("green_hat: t must be positive");
    const double a = spec.alpha;
    const Complex w = spec.symbol(k, coupled_kind(kind)) * std::pow(t, a);
    Complex v = mittag_leffler(a, ml_beta(kind, a), -w);
    if (kind == GreenKind::G1) return spec.source_multiplier(k) * v;
    return std::pow(t, time_power(kind, a)) * v;
}

void require_real_space(GreenKind kind, const ProblemSpec& spec) {
    const double a = spec.alpha;
    const Complex rot = std::polar(1.0, spec.theta * pi / 2);
    bool ok = decaying(spec.lambda * rot, a) && decaying(spec.lambda * std::conj(rot), a);
    if (coupled_kind(kind) && spec.source_mode == SourceMode::riesz_feller && spec.mu != Complex(0.0)) {
        const Complex r2 = std::polar(1.0, spec.phi * pi / 2);
        ok = ok && decaying(spec.mu * r2, a) && decaying(spec.mu * std::conj(r2), a);
    }
    if (!ok)
        throw FourierOnlyError("the Fourier integrand of " + to_string(kind) +
                               " does not decay for this lambda/mu; evaluate in Fourier space");
}

Complex green_point(GreenKind kind, double x, double t, const ProblemSpec& spec,
                    const QuadratureConfig& cfg) {
    spec.validate();
    cfg.validate();
    check_regime(kind, spec);
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("green_point: t must be positive");
    if (!std::isfinite(x)) throw DomainError("green_point: x must be finite");
    require_real_space(kind, spec);

    if (x == 0.0 && !(cfg.k_max > 0.0)) {
        Complex v;
        if (origin_value(kind, t, spec, v)) return v;
    }
    const double kappa = decay_scale(kind, t, spec);
    const bool real_coeffs = spec.lambda.imag() == 0.0 && spec.mu.imag() == 0.0;
    const Complex plus = HalfLine(kind, t, spec, cfg, +1).integrate(x, kappa);
    if (real_coeffs) return {plus.real() / pi, 0.0};
    const Complex minus = HalfLine(kind, t, spec, cfg, -1).integrate(-x, kappa);
    return (plus + minus) / (2.0 * pi);
}

double green_point_closed(GreenKind kind, double x, double t, const ProblemSpec& spec,
                          const QuadratureConfig& cfg) {
    spec.validate();
    if (kind != GreenKind::G && kind != GreenKind::G2)
        throw DomainError("green_point_closed: closed form available for G and G2 only");
    check_regime(kind, spec);
    if (spec.lambda.imag() != 0.0 || !(spec.lambda.real() > 0.0))
        throw DomainError("green_point_closed: lambda must be real and positive");
    if (x == 0.0 || !std::isfinite(x)) throw DomainError("green_point_closed: x must be nonzero");
    if (!(t > 0.0)) throw DomainError("green_point_closed: t must be positive");

    const double a = spec.alpha, b = spec.beta;
    // G(-x; theta) = G(x; -theta)
    const double theta = x > 0.0 ? spec.theta : -spec.theta;
    const auto params = HFunctionParams::green_kernel(ml_beta(kind, a), a, b, theta);
    const double ax = std::abs(x);
    const double z = ax / std::pow(spec.lambda.real() * std::pow(t, a), 1.0 / b);
    return std::pow(t, time_power(kind, a)) / (b * ax) * h_function(params, z, cfg);
}

Complex green_mass(GreenKind kind, double t, const ProblemSpec& spec) {
    return green_hat(kind, 0.0, t, spec);
}

}  // namespace fracgreen
