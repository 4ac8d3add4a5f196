// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <json.hpp>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "fracgreen/fracgreen.hpp"
#include "support.hpp"

using namespace fracgreen;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

ProblemSpec make(double alpha, double beta, double theta, double lambda = 1.0) {
    ProblemSpec s;
    s.alpha = alpha;
    s.beta = beta;
    s.theta = theta;
    s.lambda = lambda;
    return s;
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Outcome mittag_leffler_identities() {
    double worst = 0.0;
    for (double re = -10.0; re <= 10.0; re += 0.5)
        for (double im = -5.0; im <= 5.0; im += 0.5) {
            const Complex z(re, im);
            worst = std::max(worst, rel(mittag_leffler(1, 1, z), std::exp(z)));
            if (std::abs(z) <= 6.0) worst = std::max(worst, rel(mittag_leffler(2, 1, -z * z), std::cos(z)));
        }
    for (double a = 0.1; a <= 2.0; a += 0.1)
        for (double b = 0.2; b <= 3.0; b += 0.2) worst = std::max(worst, rel(mittag_leffler(a, b, 0.0), 1.0 / std::tgamma(b)));
    for (double a : {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0})
        for (double b : {0.5, 1.0, 1.5, 2.5})
            for (double r : {0.1, 0.9, 3.0, 7.0, 15.0})
                for (int p = 0; p < 12; ++p) {
                    const Complex z = std::polar(r, -pi + (p + 0.5) * pi / 6);
                    if (mittag_leffler_exponential_rate(a, z) > 600.0) continue;
                    const Complex lhs = mittag_leffler(a, b, z);
                    const Complex rhs = z * mittag_leffler(a, a + b, z);
                    const double scale = std::max({std::abs(lhs), std::abs(rhs), std::abs(1.0 / std::tgamma(b))});
                    worst = std::max(worst, std::abs(lhs - rhs - 1.0 / std::tgamma(b)) / scale);
                }
    return {worst <= 1e-9, "max relative residual " + sci(worst)};
}

Outcome heat_kernel() {
    const ProblemSpec s = make(1, 2, 0);
    double worst = 0.0;
    for (double t : {0.5, 1.0, 2.0})
        for (double x = -5.0; x <= 5.0 + 1e-12; x += 0.25) {
            const double exact = std::exp(-x * x / (4 * t)) / std::sqrt(4 * pi * t);
            worst = std::max(worst, std::abs(green_point(GreenKind::G, x, t, s).real() - exact));
            if (x != 0.0) worst = std::max(worst, std::abs(green_point_closed(GreenKind::G, x, t, s) - exact));
        }
    return {worst <= 1e-6, "max abs error " + sci(worst)};
}

Outcome closed_vs_quadrature() {
    double worst = 0.0;
    for (const ProblemSpec& s : {make(0.5, 1.5, 0.2), make(0.8, 1.6, 0.0), make(0.9, 1.8, -0.1)})
        for (double x = 0.1; x <= 5.0 + 1e-12; x += 0.35) {
            const double q = green_point(GreenKind::G, x, 1.0, s).real();
            const double h = green_point_closed(GreenKind::G, x, 1.0, s);
            worst = std::max(worst, std::abs(h - q) / std::abs(q));
        }
    return {worst <= 1e-4, "max relative difference " + sci(worst)};
}

Outcome mass_law() {
    double worst = 0.0;
    for (double a : {0.5, 0.8, 1.0})
        for (double b : {1.2, 1.5, 1.8})
            for (double th : {-0.15, 0.0, 0.15}) {
                const ProblemSpec s = make(a, b, th);
                worst = std::max(worst, std::abs(support::g_mass_numeric(s, 1.0) - 1.0 / std::tgamma(a)));
            }
    return {worst <= 1e-4, "max |mass - t^(a-1)/Gamma(a)| " + sci(worst)};
}

Outcome two_exponent_kernel() {
    double worst = 0.0;
    for (double beta : {0.5, 1.0, 1.5, 2.0})
        for (double gamma : {0.3, 1.1, 1.8}) {
            ProblemSpec s = make(1, beta, 0);
            s.gamma = gamma;
            s.mu = 1.0;
            s.coupled = true;
            for (double t : {0.1, 1.0, 3.0})
                for (double k = -10.0; k <= 10.0; k += 0.05) {
                    const double e = std::exp(-t * (std::pow(std::abs(k), beta) + std::pow(std::abs(k), gamma)));
                    worst = std::max(worst, std::abs(green_hat(GreenKind::G3, k, t, s) - e));
                }
        }
    return {worst <= 1e-8, "max abs difference " + sci(worst)};
}

Outcome oracle_equivalence() {
    struct Case {
        double alpha, beta, theta;
        std::vector<double> times;
    };
    double worst = 0.0, lo = 9.0, hi = 0.0;
    for (const Case& c : {Case{0.7, 1.4, 0.1, {0.5, 1.0}}, Case{0.9, 1.8, -0.1, {0.5, 1.0}}, Case{1.5, 1.6, 0.3, {1.0}}}) {
        const ProblemSpec s = make(c.alpha, c.beta, c.theta);
        SpaceTimeGrid g;
        g.x_min = -16;
        g.x_max = 16;
        g.nx = 65;
        g.times = c.times;
        const auto f = SourceDescriptor::gaussian(0, 1);
        const Field N = solve(s, f, SourceDescriptor::zero(), SourceDescriptor::zero(), g);
        double prev = 0.0;
        for (Eigen::Index n : {256, 512, 1024}) {
            OracleConfig oc;
            oc.n_steps = n;
            oc.dt = 1.0 / static_cast<double>(n);
            const double err = field_residual(oracle_solve(s, f, g, oc), N).relative_l2;
            if (prev > 0.0) {
                lo = std::min(lo, std::log2(prev / err));
                hi = std::max(hi, std::log2(prev / err));
            }
            prev = err;
        }
        worst = std::max(worst, prev);
    }
    return {worst <= 1e-2 && lo >= 0.9 && hi <= 1.1,
            "max relative L2 at dt=1/1024 " + sci(worst) + ", observed order " + sci(lo) + ".." + sci(hi)};
}

Outcome schrodinger_norm() {
    ProblemSpec s = make(1, 2, 0);
    const double m = 1.0, hbar = 1.0;
    s.lambda = Complex(0.0, hbar / (2 * m));
    SpaceTimeGrid g;
    g.x_min = -20;
    g.x_max = 20;
    g.nx = 256;
    g.times.clear();
    for (int j = 1; j <= 100; ++j) g.times.push_back(0.01 * j);
    const auto f = SourceDescriptor::gaussian(0, 1);
    const Field N = solve(s, f, SourceDescriptor::zero(), SourceDescriptor::zero(), g);
    const double n0 = f.sample(g).squaredNorm();
    double worst = 0.0;
    for (Eigen::Index ti = 0; ti < N.values.rows(); ++ti)
        worst = std::max(worst, std::abs(N.values.row(ti).squaredNorm() / n0 - 1.0));
    return {worst <= 1e-8, "max relative L2 norm drift over 100 steps " + sci(worst)};
}

Outcome self_similarity() {
    double worst = 0.0;
    for (const ProblemSpec& s : {make(0.5, 1.5, 0.2), make(0.8, 1.2, -0.1, 2.0), make(1.4, 1.7, 0.1, 0.5)}) {
        const double a = s.alpha, b = s.beta, lam = s.lambda.real();
        for (double xi : {0.5, 2.0}) {
            double v[2];
            int i = 0;
            for (double t : {0.6, 3.0}) {
                const double x = xi * std::pow(lam * std::pow(t, a), 1.0 / b);
                v[i++] = b * x * std::pow(t, 1 - a) * green_point(GreenKind::G, x, t, s).real();
            }
            worst = std::max(worst, std::abs(v[0] - v[1]));
        }
    }
    return {worst <= 1e-6, "max difference at matched similarity variable " + sci(worst)};
}

Outcome cli_contract() {
    const fs::path dir = fs::temp_directory_path() / ("fracgreen_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto run = [](std::vector<std::string> args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return std::make_pair(code, out.str());
    };
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    };
    const std::vector<std::string> base = {"solve", "--alpha", "0.7", "--beta", "1.4", "--theta", "0.1",
                                           "--f", "gaussian:0,1", "--U", "box:-1,1", "--mu", "0.3",
                                           "--x-range", "-8", "8", "--nx", "33", "--t", "0.5", "1"};
    auto a = base, b = base;
    a.insert(a.end(), {"--out", (dir / "a.csv").string(), "--manifest", (dir / "a.json").string()});
    b.insert(b.end(), {"--out", (dir / "b.csv").string()});
    bool ok = run(a).first == 0 && run(b).first == 0;
    const bool identical = ok && slurp(dir / "a.csv") == slurp(dir / "b.csv") && !slurp(dir / "a.csv").empty();
    const auto cmp = run({"compare", (dir / "a.csv").string(), (dir / "b.csv").string()});
    const bool zero = cmp.first == 0 && nlohmann::json::parse(cmp.second).at("relative_l2").get<double>() == 0.0;
    const bool codes = run({"validate", "--alpha", "0.5", "--beta", "2", "--theta", "0.1"}).first == 2 &&
                       run({"bogus"}).first == 1 &&
                       run({"validate", "--alpha", "0.5", "--beta", "1.5", "--theta", "0.4"}).first == 0;
    fs::remove_all(dir);
    ok = identical && zero && codes;
    return {ok, std::string("byte-identical ") + (identical ? "yes" : "no") + ", self-residual zero " +
                    (zero ? "yes" : "no") + ", exit codes " + (codes ? "as specified" : "wrong")};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget;  // seconds
        std::function<Outcome()> check;
    };
    const Criterion criteria[] = {
        {1, "Mittag-Leffler identities", 5, mittag_leffler_identities},
        {2, "heat-kernel reduction", 10, heat_kernel},
        {3, "closed form vs quadrature", 60, closed_vs_quadrature},
        {4, "mass law", 30, mass_law},
        {5, "two-exponent kernel", 1, two_exponent_kernel},
        {6, "oracle equivalence", 120, oracle_equivalence},
        {7, "Schrodinger norm preservation", 5, schrodinger_norm},
        {8, "self-similarity collapse", 5, self_similarity},
        {9, "CLI determinism and round-trip", 60, cli_contract},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool pass = o.pass && secs <= c.budget;
        failed += pass ? 0 : 1;
        std::printf("criterion %d %s: %s (%s; %.2f s of %.0f s)\n", c.id, c.name, pass ? "PASS" : "FAIL",
                    o.detail.c_str(), secs, c.budget);
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
