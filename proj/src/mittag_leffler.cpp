#include "fracgreen/mittag_leffler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "fracgreen/gamma.hpp"

namespace fracgreen {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double machine_eps = std::numeric_limits<double>::epsilon();

constexpr double taylor_radius = 0.8;
constexpr int taylor_max_terms = 500;
// exp(-asymptotic_exponent) bounds the neglected branch-cut corrections.
constexpr double asymptotic_exponent = 40.0;
constexpr double contour_log_epsilon = -34.538776394910684;  // log(1e-15)

MLEvaluation taylor(double alpha, double beta, Complex z) {
    Complex sum = 0.0;
    Complex power = 1.0;
    double last = inf;
    for (int n = 0; n < taylor_max_terms; ++n) {
        const Complex term = power * rgamma(alpha * n + beta);
        sum += term;
        const double mag = std::abs(term);
        // two consecutive negligible terms (the series can have exact zeros)
        if (n > 2 && mag + last <= 0.5 * machine_eps * std::abs(sum)) {
            return {sum, (mag + last) + 1e-16 * std::abs(sum), MLMethod::taylor};
        }
        last = mag;
        power *= z;
        if (power == Complex(0.0)) return {sum, 1e-16 * std::abs(sum), MLMethod::taylor};
    }
    throw ToleranceError("mittag_leffler: Taylor series did not converge within 500 terms");
}

struct Pole {
    Complex s;
    double angle;  // arg s, in [-pi, pi]
};

// Poles of s^(alpha-beta)/(s^alpha - z) on the principal sheet |arg s| <= pi.
std::vector<Pole> principal_poles(double alpha, Complex z) {
    const double phase = std::arg(z);
    const double modulus = std::pow(std::abs(z), 1.0 / alpha);
    const auto kmin = static_cast<long>(std::ceil(-alpha / 2.0 - phase / (2.0 * pi)));
    const auto kmax = static_cast<long>(std::floor(alpha / 2.0 - phase / (2.0 * pi)));
    std::vector<Pole> poles;
    for (long k = kmin; k <= kmax; ++k) {
        const double angle = (phase + 2.0 * pi * double(k)) / alpha;
        poles.push_back({std::polar(modulus, angle), angle});
    }
    return poles;
}

Complex pole_residue(double alpha, double beta, Complex s) {
    if (s.real() > 700.0) throw DomainError("mittag_leffler: value overflows the double range");
    return std::pow(s, 1.0 - beta) * std::exp(s) / alpha;
}

// Returns false when the truncated series fails its error estimate.
bool asymptotic(double alpha, double beta, Complex z, MLEvaluation& out) {
    // integer alpha and beta <= alpha: no branch cut, the residues are exact
    const bool integral_orders = alpha == std::floor(alpha) && beta == std::floor(beta);

    Complex sum = 0.0;
    for (const Pole& p : principal_poles(alpha, z)) {
        // a pole on the cut counts once, and only when there is no cut
        const bool on_cut = std::abs(p.angle) >= pi * (1.0 - 1e-15);
        if (!on_cut || (integral_orders && p.angle > 0.0)) sum += pole_residue(alpha, beta, p.s);
    }

    if (integral_orders && beta <= alpha) {
        out = {sum, 4.0 * machine_eps * std::abs(sum), MLMethod::asymptotic};
        return true;
    }

    const double log_abs_z = std::log(std::abs(z));
    const double phase = std::arg(z);
    // the envelope drops the oscillating sin(pi x) factor, so that accidental
    // near-zeros of a single coefficient do not look like convergence
    double previous = inf;
    for (int n = 1; n < 1000; ++n) {
        const double x = beta - alpha * n;
        double log_envelope = 0.0;
        double coefficient = 0.0;  // 1/Gamma(x) divided by the envelope
        if (x > 0.0) {
            const double c = rgamma(x);
            log_envelope = std::log(std::abs(c));
            coefficient = c > 0.0 ? 1.0 : -1.0;
        } else {
            // 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi
            log_envelope = std::lgamma(1.0 - x) - std::log(pi);
            coefficient = x == std::floor(x) ? 0.0 : std::sin(pi * x);
        }
        log_envelope -= n * log_abs_z;
        const double envelope = std::exp(log_envelope);
        if (n > 2 && envelope > previous) break;  // divergent tail
        if (coefficient != 0.0) sum -= coefficient * std::polar(envelope, -n * phase);
        if (envelope <= 0.25 * machine_eps * std::abs(sum)) {
            out = {sum, envelope + 4.0 * machine_eps * std::abs(sum), MLMethod::asymptotic};
            return true;
        }
        previous = envelope;
    }
    if (previous <= 1e-14 * std::abs(sum)) {
        out = {sum, previous, MLMethod::asymptotic};
        return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Laplace-transform inversion on a parabolic contour s(u) = mu (i u + 1)^2.
// The parameters (mu, h, N) are chosen per region between consecutive
// singularities so that discretisation and round-off errors balance.

struct ContourParams {
    double mu = 0.0;
    double h = 0.0;
    double n = inf;
};

ContourParams params_bounded_region(double phi_lo, double phi_hi, double p, double q,
                                    double log_epsilon) {
    const double log_eps = std::log(machine_eps);
    const double fac = 1.01;
    const double f_max = std::exp(log_epsilon - log_eps);

    const double sq_lo = std::sqrt(phi_lo);
    const double threshold = 2.0 * std::sqrt(log_epsilon - log_eps);
    const double sq_hi = std::min(std::sqrt(phi_hi), threshold - sq_lo);

    double sqbar_lo = 0.0, sqbar_hi = 0.0, f_bar = 1.0;
    bool admissible = false;
    if (p < 1e-14 && q < 1e-14) {
        sqbar_lo = sq_lo;
        sqbar_hi = sq_hi;
        admissible = true;
    } else if (p < 1e-14) {
        sqbar_lo = sq_lo;
        const double f_min = sq_lo > 0.0 ? fac * std::pow(sq_lo / (sq_hi - sq_lo), q) : fac;
        if (f_min < f_max) {
            f_bar = f_min + f_min / f_max * (f_max - f_min);
            const double fq = std::pow(f_bar, -1.0 / q);
            sqbar_hi = (2.0 * sq_hi - fq * sq_lo) / (2.0 + fq);
            admissible = true;
        }
    } else if (q < 1e-14) {
        sqbar_hi = sq_hi;
        const double f_min = fac * std::pow(sq_hi / (sq_hi - sq_lo), p);
        if (f_min < f_max) {
            f_bar = f_min + f_min / f_max * (f_max - f_min);
            const double fp = std::pow(f_bar, -1.0 / p);
            sqbar_lo = (2.0 * sq_lo + fp * sq_hi) / (2.0 - fp);
            admissible = true;
        }
    } else {
        double f_min = fac * (sq_lo + sq_hi) / std::pow(sq_hi - sq_lo, std::max(p, q));
        if (f_min < f_max) {
            f_min = std::max(f_min, 1.5);
            f_bar = f_min + f_min / f_max * (f_max - f_min);
            const double fp = std::pow(f_bar, -1.0 / p);
            const double fq = std::pow(f_bar, -1.0 / q);
            const double w = -phi_hi / log_epsilon;
            const double den = 2.0 + w - (1.0 + w) * fp + fq;
            sqbar_lo = ((2.0 + w + fq) * sq_lo + fp * sq_hi) / den;
            sqbar_hi = (-(1.0 + w) * fq * sq_lo + (2.0 + w - (1.0 + w) * fp) * sq_hi) / den;
            admissible = true;
        }
    }
    if (!admissible) return {};

    const double log_eps_adj = log_epsilon - std::log(f_bar);
    const double w = -sqbar_hi * sqbar_hi / log_eps_adj;
    ContourParams out;
    out.mu = std::pow(((1.0 + w) * sqbar_lo + sqbar_hi) / (2.0 + w), 2);
    out.h = -2.0 * pi / log_eps_adj * (sqbar_hi - sqbar_lo) / ((1.0 + w) * sqbar_lo + sqbar_hi);
    out.n = std::ceil(std::sqrt(1.0 - log_eps_adj / out.mu) / out.h);
    return out;
}

ContourParams params_unbounded_region(double phi_lo, double p, double log_epsilon) {
    const double sq_phi = std::sqrt(phi_lo);
    double phibar = phi_lo > 0.0 ? phi_lo * 1.01 : 0.01;
    double sqbar = std::sqrt(phibar);

    const double f_min = 1.0, f_max = 10.0, f_tar = 5.0;
    double n = 0.0, a = 0.0, sq_mu = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
        const double log_eps_phi = log_epsilon / phibar;
        n = std::ceil(phibar / pi * (1.0 - 1.5 * log_eps_phi + std::sqrt(1.0 - 2.0 * log_eps_phi)));
        a = pi * n / phibar;
        sq_mu = sqbar * std::abs(4.0 - a) / std::abs(7.0 - std::sqrt(1.0 + 12.0 * a));
        const double fbar = std::pow((sqbar - sq_phi) / sq_mu, -p);
        if (p < 1e-14 || (f_min < fbar && fbar < f_max)) break;
        sqbar = std::pow(f_tar, -1.0 / p) * sq_mu + sq_phi;
        phibar = sqbar * sqbar;
    }
    ContourParams out;
    out.mu = sq_mu * sq_mu;
    out.h = (-3.0 * a - 2.0 + 2.0 * std::sqrt(1.0 + 12.0 * a)) / (4.0 - a) / n;
    out.n = n;

    // keep round-off under control: exp(mu) * eps must not exceed the target
    const double log_eps = std::log(machine_eps);
    const double threshold = log_epsilon - log_eps;
    if (out.mu > threshold) {
        const double q = std::abs(p) < 1e-14 ? 0.0 : std::pow(f_tar, -1.0 / p) * std::sqrt(out.mu);
        phibar = std::pow(q + sq_phi, 2);
        if (phibar < threshold) {
            const double w = std::sqrt(log_eps / (log_eps - log_epsilon));
            const double u = std::sqrt(-phibar / log_eps);
            out.mu = threshold;
            out.n = std::ceil(w * log_epsilon / 2.0 / pi / (u * w - 1.0));
            out.h = std::sqrt(log_eps / (log_eps - log_epsilon)) / out.n;
        } else {
            out.n = inf;
            out.h = 0.0;
        }
    }
    return out;
}

MLEvaluation contour(double alpha, double beta, Complex z) {
    struct Singularity {
        Complex s;
        double phi;
    };
    std::vector<Singularity> poles;
    for (const Pole& p : principal_poles(alpha, z)) {
        const double phi = 0.5 * (p.s.real() + std::abs(p.s));
        if (phi > 1e-15) poles.push_back({p.s, phi});
    }
    std::sort(poles.begin(), poles.end(),
              [](const Singularity& a, const Singularity& b) { return a.phi < b.phi; });
    // the branch point at the origin comes first
    poles.insert(poles.begin(), Singularity{0.0, 0.0});

    const std::size_t count = poles.size();
    std::vector<double> phi(count + 1), p(count), q(count);
    for (std::size_t j = 0; j < count; ++j) phi[j] = poles[j].phi;
    phi[count] = inf;
    p[0] = std::max(0.0, -2.0 * (alpha - beta + 1.0));
    for (std::size_t j = 1; j < count; ++j) p[j] = 1.0;
    for (std::size_t j = 0; j + 1 < count; ++j) q[j] = 1.0;
    q[count - 1] = inf;

    double log_epsilon = contour_log_epsilon;
    const double log_eps = std::log(machine_eps);
    std::vector<std::size_t> admissible;
    for (std::size_t j = 0; j < count; ++j)
        if (phi[j] < log_epsilon - log_eps && phi[j] < phi[j + 1]) admissible.push_back(j);
    if (admissible.empty())
        throw DomainError("mittag_leffler: value overflows the double range");

    ContourParams best;
    std::size_t best_region = 0;
    for (int attempt = 0; attempt < 10; ++attempt) {
        best = {};
        for (std::size_t j : admissible) {
            const ContourParams cp =
                j + 1 < count ? params_bounded_region(phi[j], phi[j + 1], p[j], q[j], log_epsilon)
                              : params_unbounded_region(phi[j], p[j], log_epsilon);
            if (cp.n < best.n) {
                best = cp;
                best_region = j;
            }
        }
        if (best.n <= 200.0) break;
        log_epsilon += std::log(10.0);
    }
    if (!std::isfinite(best.n))
        throw ToleranceError("mittag_leffler: no admissible integration contour");

    const long n = static_cast<long>(best.n);
    Complex integral = 0.0;
    for (long k = -n; k <= n; ++k) {
        const double u = best.h * double(k);
        const Complex s = best.mu * std::pow(Complex(1.0, u), 2);
        const Complex ds = Complex(-2.0 * best.mu * u, 2.0 * best.mu);
        integral += std::exp(s) * std::pow(s, alpha - beta) / (std::pow(s, alpha) - z) * ds;
    }
    integral *= best.h / Complex(0.0, 2.0 * pi);

    Complex residues = 0.0;
    for (std::size_t j = best_region + 1; j < count; ++j)
        residues += pole_residue(alpha, beta, poles[j].s);

    const Complex value = integral + residues;
    return {value, std::exp(log_epsilon) * std::max(1.0, std::abs(value)), MLMethod::contour};
}

}  // namespace

double mittag_leffler_exponential_rate(double alpha, Complex z) {
    double rate = -inf;
    if (z == Complex(0.0)) return rate;
    for (const Pole& p : principal_poles(alpha, z)) rate = std::max(rate, p.s.real());
    return rate;
}

MLEvaluation mittag_leffler_detail(double alpha, double beta, Complex z) {
    if (!(alpha > 0.0)) throw DomainError("mittag_leffler: alpha must be positive");
    if (!is_finite(z) || !std::isfinite(beta))
        throw DomainError("mittag_leffler: non-finite argument");

    MLEvaluation out{};
    const double r = std::abs(z);
    if (r == 0.0) {
        out = {rgamma(beta), 0.0, MLMethod::zero};
    } else if (r <= taylor_radius) {
        out = taylor(alpha, beta, z);
    } else if (std::pow(r, 1.0 / alpha) < asymptotic_exponent || !asymptotic(alpha, beta, z, out)) {
        out = contour(alpha, beta, z);
    }

    // real parameters and real argument give a real value
    if (z.imag() == 0.0) out.value.imag(0.0);
    if (!is_finite(out.value)) throw DomainError("mittag_leffler: non-finite result");
    return out;
}

Complex mittag_leffler(double alpha, double beta, Complex z) {
    return mittag_leffler_detail(alpha, beta, z).value;
}

}  // namespace fracgreen
