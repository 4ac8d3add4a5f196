#include <doctest.h>

#include <cmath>

#include "fracgreen/operators.hpp"
#include "fracgreen/solver.hpp"

using namespace fracgreen;

namespace {

ProblemSpec make(double alpha, double beta, double theta) {
    ProblemSpec s;
    s.alpha = alpha;
    s.beta = beta;
    s.theta = theta;
    return s;
}

SpaceTimeGrid grid(double L, Eigen::Index nx, std::vector<double> times) {
    SpaceTimeGrid g;
    g.x_min = -L;
    g.x_max = L;
    g.nx = nx;
    g.times = std::move(times);
    return g;
}

const SourceDescriptor none = SourceDescriptor::zero();

double max_abs(const MatrixXc& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("validate_spec examples") {
    ProblemSpec s = make(0.5, 1.5, 0.4);
    s.gamma = 1.0;
    CHECK(validate_spec(s).empty());
    s.theta = 0.5;  // equality admitted
    CHECK(validate_spec(s).empty());

    const auto v = validate_spec(make(0.5, 2.0, 0.1));
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("theta") != std::string::npos);

    ProblemSpec r = make(1.5, 1.5, 0.0);
    r.regime = Regime::sub;
    CHECK(validate_spec(r).size() == 1);
    r.regime = Regime::super;
    CHECK(validate_spec(r).empty());

    ProblemSpec many = make(2.5, 2.5, 0.0);
    many.gamma = 0.0;
    CHECK(validate_spec(many).size() >= 2);
}

TEST_CASE("grid constraints") {
    CHECK(grid(5, 64, {0.5, 1}).violations().empty());
    CHECK(!grid(5, 4, {1}).violations().empty());
    CHECK(!grid(5, 64, {1, 0.5}).violations().empty());
    CHECK(!grid(5, 64, {0.0}).violations().empty());
    SpaceTimeGrid g = grid(5, 64, {1});
    g.x_max = -6;
    CHECK(!g.violations().empty());
}

TEST_CASE("convolve_space with a delta shifts") {
    const double dx = 0.1;
    const Eigen::Index n = 16;
    VectorXc d = VectorXc::Zero(n), b(n);
    d(3) = 1.0 / dx;
    for (Eigen::Index i = 0; i < n; ++i) b(i) = Complex(std::sin(0.3 * i), 0.1 * i);
    const VectorXc c = convolve_space(d, b, dx);
    REQUIRE(c.size() == 2 * n - 1);
    for (Eigen::Index i = 0; i < n; ++i) CHECK(std::abs(c(i + 3) - b(i)) < 1e-14);
}

TEST_CASE("two boxes convolve to a triangle") {
    const double dx = 0.01;
    const Eigen::Index n = 401;  // [-2, 2]
    const double width = 1.0;
    VectorXc a = VectorXc::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x = -2.0 + i * dx;
        if (std::abs(x) < width / 2) a(i) = 1.0;
    }
    const VectorXc c = convolve_space(a, a, dx);
    CHECK(std::abs(c.cwiseAbs().maxCoeff() - width) < 2 * dx);
    // peak at zero offset: index 2 (n-1)/2 of the full convolution on [-4, 4]
    CHECK(std::abs(c(n - 1).real() - width) < 2 * dx);
    CHECK(std::abs(c(n - 1 + 50).real() - 0.5 * width) < 2 * dx);
}

TEST_CASE("Gaussians convolve to a Gaussian") {
    const double dx = 0.02, s1 = 0.7, s2 = 1.1;
    const Eigen::Index n = 1001;  // [-10, 10]
    auto gauss = [](double x, double s) { return std::exp(-x * x / (2 * s * s)) / (s * std::sqrt(2 * pi)); };
    VectorXc a(n), b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x = -10.0 + i * dx;
        a(i) = gauss(x, s1);
        b(i) = gauss(x, s2);
    }
    const VectorXc c = convolve_space(a, b, dx);
    const double s = std::sqrt(s1 * s1 + s2 * s2);
    double worst = 0.0;
    for (Eigen::Index m = 0; m < c.size(); ++m) {
        const double x = -20.0 + m * dx;
        worst = std::max(worst, std::abs(c(m) - gauss(x, s)));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("convolve_kernel matches the direct sum") {
    const double dx = 0.3;
    const Eigen::Index n = 9;
    VectorXc k(2 * n - 1), f(n);
    for (Eigen::Index m = 0; m < k.size(); ++m) k(m) = std::exp(-0.1 * (m - n + 1) * (m - n + 1)) + 0.01 * m;
    for (Eigen::Index i = 0; i < n; ++i) f(i) = Complex(1.0 + i, -0.5 * i);
    const VectorXc N = convolve_kernel(k, f, dx);
    for (Eigen::Index j = 0; j < n; ++j) {
        Complex acc = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) acc += k(j - i + n - 1) * f(i);
        CHECK(std::abs(N(j) - dx * acc) < 1e-12);
    }
    CHECK_THROWS_AS(convolve_kernel(VectorXc::Zero(5), f, dx), DomainError);
}

TEST_CASE("convolve_time_singular examples") {
    for (double a : {0.3, 0.5, 1.0, 1.6}) {
        const Eigen::Index n = 37;
        const double dt = 1.0 / 37;
        const MatrixXc ones = MatrixXc::Ones(n + 1, 2);
        const VectorXc r = convolve_time_singular(ones, a, n, dt);
        CHECK(std::abs(r(0) - 1.0 / a) < 1e-13);
        CHECK(std::abs(r(1) - 1.0 / a) < 1e-13);
    }
    const Eigen::Index n = 10;
    MatrixXc tau(n + 1, 1);
    for (Eigen::Index j = 0; j <= n; ++j) tau(j, 0) = j * 0.1;
    CHECK(std::abs(convolve_time_singular(tau, 1.0, n, 0.1)(0) - 0.5) < 1e-14);
}

TEST_CASE("convolve_time_singular on exp(tau) at alpha = 1/2") {
    // \int_0^1 (1 - tau)^(-1/2) e^tau dtau = e sqrt(pi) erf(1)
    const double exact = std::exp(1.0) * std::sqrt(pi) * std::erf(1.0);
    double prev = 1.0;
    for (Eigen::Index n : {100, 200, 400}) {
        MatrixXc F(n + 1, 1);
        for (Eigen::Index j = 0; j <= n; ++j) F(j, 0) = std::exp(static_cast<double>(j) / n);
        const double err = std::abs(convolve_time_singular(F, 0.5, n, 1.0 / n)(0) - exact);
        CHECK(err < prev / 3.0);  // second order
        prev = err;
    }
    CHECK(prev < 1e-5);
}

TEST_CASE("source descriptors sample as described") {
    const SpaceTimeGrid g = grid(2, 41, {1});
    const VectorXc d = SourceDescriptor::delta(0.5).sample(g);
    CHECK(std::abs(d.sum() * g.dx() - 1.0) < 1e-14);
    CHECK(std::abs(d(25) - 1.0 / g.dx()) < 1e-12);
    const VectorXc b = SourceDescriptor::box(-0.5, 0.5).sample(g);
    CHECK(b(20) == Complex(1.0));
    CHECK(b(0) == Complex(0.0));
    CHECK(std::abs(SourceDescriptor::gaussian(1.0, 0.5).sample(g)(30) - 1.0) < 1e-15);
    CHECK_THROWS_AS(SourceDescriptor::delta(5.0).sample(g), DomainError);
    CHECK_THROWS_AS(SourceDescriptor::gaussian(0, -1), DomainError);
}

TEST_CASE("solve with zero data is zero") {
    const Field N = solve(make(0.7, 1.4, 0.1), none, none, none, grid(5, 16, {0.5, 1}));
    CHECK(N.values.rows() == 2);
    CHECK(N.values.cols() == 16);
    CHECK(max_abs(N.values) == 0.0);
}

TEST_CASE("solve with delta data gives the heat kernel") {
    const SpaceTimeGrid g = grid(8, 65, {0.5, 1.0});
    const Field N = solve(make(1, 2, 0), SourceDescriptor::delta(0.0), none, none, g);
    SolveOptions impulse;
    impulse.fundamental = false;
    const Field M = solve(make(1, 2, 0), SourceDescriptor::delta(0.0), none, none, g, impulse);
    const VectorXr x = g.x();
    for (std::size_t ti = 0; ti < g.times.size(); ++ti) {
        const double t = g.times[ti];
        for (Eigen::Index j = 0; j < g.nx; ++j) {
            const double heat = std::exp(-x(j) * x(j) / (4 * t)) / std::sqrt(4 * pi * t);
            CHECK(std::abs(N.values(static_cast<Eigen::Index>(ti), j) - heat) < 1e-9);
            CHECK(std::abs(M.values(static_cast<Eigen::Index>(ti), j) - heat) < 1e-9);
        }
    }
}

TEST_CASE("solve rejects inconsistent inputs") {
    const SpaceTimeGrid g = grid(5, 16, {1});
    CHECK_THROWS_AS(solve(make(0.5, 2, 0.1), none, none, none, g), ConstraintError);
    CHECK_THROWS_AS(solve(make(0.5, 1.5, 0), none, SourceDescriptor::gaussian(0, 1), none, g), ConstraintError);
    CHECK_THROWS_AS(solve(make(0.5, 1.5, 0), none, none, SourceDescriptor::delta(0), g), ConstraintError);
    ProblemSpec c = make(1, 1.5, 0);
    c.coupled = true;
    CHECK_THROWS_AS(solve(c, none, none, SourceDescriptor::box(-1, 1), g), ConstraintError);
}

TEST_CASE("solve is linear and translation equivariant") {
    const ProblemSpec s = make(0.8, 1.5, 0.2);
    const SpaceTimeGrid g = grid(12, 97, {1.0});
    const double dx = g.dx();
    const auto f1 = SourceDescriptor::gaussian(-1.0, 0.8), f2 = SourceDescriptor::box(0.5, 2.0);
    const Field a = solve(s, f1, none, none, g);
    const Field b = solve(s, f2, none, none, g);
    const Field ab = solve(s, SourceDescriptor::samples(f1.sample(g) + f2.sample(g)), none, none, g);
    CHECK(max_abs(ab.values - a.values - b.values) <= 1e-10);

    const int m = 5;
    const Field shifted = solve(s, SourceDescriptor::gaussian(-1.0 + m * dx, 0.8), none, none, g);
    double worst = 0.0;
    for (Eigen::Index j = 20; j + m < g.nx - 20; ++j) worst = std::max(worst, std::abs(shifted.values(0, j + m) - a.values(0, j)));
    CHECK(worst <= 1e-8);
}

TEST_CASE("solve evolves the mass as t^(alpha-1)/Gamma(alpha)") {
    // the window must hold all but ~1e-5 of the algebraic kernel tails
    const ProblemSpec s = make(0.8, 1.9, 0.1);
    const SpaceTimeGrid g = grid(100, 201, {0.5, 1.5});
    const auto f = SourceDescriptor::gaussian(0.5, 1.0);
    const Field N = solve(s, f, none, none, g);
    const double mf = f.sample(g).sum().real() * g.dx();
    for (std::size_t ti = 0; ti < g.times.size(); ++ti) {
        const double t = g.times[ti];
        const double m = N.values.row(static_cast<Eigen::Index>(ti)).sum().real() * g.dx();
        CHECK(std::abs(m - std::pow(t, s.alpha - 1) / std::tgamma(s.alpha) * mf) <= 1e-4);
    }
}

TEST_CASE("alpha = 1 reduces to exponential evolution in Fourier space") {
    const ProblemSpec s = make(1.0, 1.5, -0.3);
    const SpaceTimeGrid g = grid(10, 81, {0.6});
    const auto f = SourceDescriptor::gaussian(0.3, 0.9);
    const Field N = solve(s, f, none, none, g);

    // N(x) = (1/2pi) \int_{|k| < pi/dx} e^{-ikx} e^{-t Psi(k)} F(k) dk with
    // F(k) = dx sum_i e^{ik x_i} f_i, by Gauss panels in k
    const VectorXc fs = f.sample(g);
    const VectorXr x = g.x();
    const double dx = g.dx(), kmax = pi / dx, t = g.times[0];
    const int panels = 400, q = 8;
    const double w[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
                         0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
    const double z[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
                         0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
    VectorXc ref = VectorXc::Zero(g.nx);
    const double hk = 2 * kmax / panels;
    for (int p = 0; p < panels; ++p) {
        for (int i = 0; i < q; ++i) {
            const double k = -kmax + (p + 0.5) * hk + 0.5 * hk * z[i];
            Complex F = 0.0;
            for (Eigen::Index j = 0; j < g.nx; ++j) F += std::polar(1.0, k * x(j)) * fs(j);
            const Complex e = std::exp(-t * riesz_feller_symbol(s.space_symbol(), k)) * F * dx * (0.5 * hk * w[i]);
            for (Eigen::Index j = 0; j < g.nx; ++j) ref(j) += std::polar(1.0, -k * x(j)) * e;
        }
    }
    ref /= 2 * pi;
    CHECK((N.values.row(0).transpose() - ref).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("coupled solution is a fixed point of the source formulation") {
    // the two-operator equation with mu D_gamma N moved into a source U = N
    ProblemSpec c = make(1.0, 1.6, 0.1);
    c.gamma = 1.2;
    c.mu = 0.5;
    c.coupled = true;
    SpaceTimeGrid g = grid(10, 65, {});
    const double dt = 0.025;
    for (int j = 1; j <= 4; ++j) g.times.push_back(j * dt);
    const auto f = SourceDescriptor::gaussian(0.0, 1.0);
    const Field N = solve(c, f, none, none, g);

    MatrixXc rows(5, g.nx);
    rows.row(0) = f.sample(g).transpose();
    rows.bottomRows(4) = N.values;
    ProblemSpec u = c;
    u.coupled = false;
    SpaceTimeGrid gu = g;
    gu.dt_oracle = dt / 8;
    const Field M = solve(u, f, none, SourceDescriptor::space_time({0, dt, 2 * dt, 3 * dt, 4 * dt}, rows), gu);
    const double scale = max_abs(N.values);
    CHECK(max_abs(M.values - N.values) <= 1e-3 * scale);
    // and differs from the uncoupled evolution
    const Field free = solve(u, f, none, none, g);
    CHECK(max_abs(free.values - N.values) > 1e-2 * scale);
}

TEST_CASE("Fourier-only specs preserve the L2 norm") {
    ProblemSpec s = make(1.0, 2.0, 0.0);
    s.lambda = Complex(0.0, 0.5);
    SpaceTimeGrid g = grid(20, 256, {});
    for (int j = 1; j <= 100; ++j) g.times.push_back(0.01 * j);
    const auto f = SourceDescriptor::gaussian(0.0, 1.0);
    const Field N = solve(s, f, none, none, g);
    CHECK(!N.warnings.empty());
    const double n0 = f.sample(g).squaredNorm();
    for (Eigen::Index ti = 0; ti < N.values.rows(); ++ti)
        CHECK(std::abs(N.values.row(ti).squaredNorm() / n0 - 1.0) <= 1e-8);
}

TEST_CASE("narrow windows trigger a mass warning") {
    const Field N = solve(make(0.9, 1.1, 0.0), SourceDescriptor::delta(0.0), none, none, grid(3, 32, {1.0}));
    CHECK(!N.warnings.empty());
}
