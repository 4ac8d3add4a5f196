#include "fracgreen/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracgreen/fourier.hpp"
#include "fracgreen/gamma.hpp"
#include "fracgreen/mittag_leffler.hpp"
#include "fracgreen/parallel.hpp"

namespace fracgreen {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// Zero-padded periodic extension of the solve grid.
struct Spectral {
    Eigen::Index nx, M;
    double dx;
    VectorXr k;  // wavenumber of each DFT bin in the e^{+ikx} convention

    Spectral(const SpaceTimeGrid& grid, int pad) : nx(grid.nx), dx(grid.dx()) {
        M = next_pow2(std::max<Eigen::Index>(nx * std::max(pad, 1), 8));
        k = -dft_frequencies(M, dx);
    }

    VectorXc forward(const VectorXc& v) const {
        VectorXc p = VectorXc::Zero(M);
        p.head(nx) = v;
        return dft(p);
    }

    VectorXc back(const VectorXc& F) const { return idft(F).head(nx); }
};

// Kernel samples K(m - nx + 1) dx, m = 0..2nx-2, for every output time.
std::vector<VectorXc> sample_kernels(GreenKind kind, const ProblemSpec& spec, const SpaceTimeGrid& grid,
                                     const QuadratureConfig& cfg) {
    const Eigen::Index n = grid.nx, len = 2 * n - 1;
    const double dx = grid.dx();
    const bool even = spec.theta == 0.0 && spec.lambda.imag() == 0.0 &&
                      (!spec.coupled || spec.source_mode == SourceMode::identity || spec.phi == 0.0) &&
                      spec.mu.imag() == 0.0;
    const std::size_t nt = grid.times.size();
    std::vector<VectorXc> out(nt, VectorXc(len));
    const Eigen::Index first = even ? n - 1 : 0;
    const std::size_t per = static_cast<std::size_t>(len - first);
    parallel_for(nt * per, [&](std::size_t idx) {
        const std::size_t ti = idx / per;
        const Eigen::Index m = first + static_cast<Eigen::Index>(idx % per);
        out[ti](m) = green_point(kind, static_cast<double>(m - n + 1) * dx, grid.times[ti], spec, cfg);
    });
    if (even)
        for (auto& v : out)
            for (Eigen::Index m = 0; m < n - 1; ++m) v(m) = v(len - 1 - m);
    return out;
}

void mass_warning(Field& field, const VectorXc& kernel, double dx, Complex mass, double t,
                  const std::string& name) {
    if (std::abs(mass) == 0.0) return;
    const Complex inside = kernel.sum() * dx;
    const double lost = std::abs(mass - inside) / std::abs(mass);
    if (lost > 1e-3)
        field.warnings.push_back(name + " at t = " + fmt(t) + ": kernel mass outside the window " + fmt(lost));
}

// Source integral per mode,
//   sgn mu m_S(k) \int_0^t (t-tau)^(a-1) E_{a,a}(-c (t-tau)^a) U^(k, tau) dtau,
// with U^ linear between tau nodes and the Mittag-Leffler moments exact:
//   A(S) = \int_0^S s^(a-1) E_{a,a}(-c s^a) ds = S^a E_{a,a+1}(-c S^a)
//   B(S) = \int_0^S s^a E_{a,a}(-c s^a) ds = S^(a+1) [E_{a,a+1} - E_{a,a+2}](-c S^a)
VectorXc source_spectrum(const ProblemSpec& spec, const SourceDescriptor& U, const SpaceTimeGrid& grid,
                         const Spectral& sp, double t, double& rel_change) {
    const double a = spec.alpha;
    const bool steady = U.tau.empty();
    const Eigen::Index n = steady ? 1 : std::max<Eigen::Index>(2, 2 * static_cast<Eigen::Index>(std::ceil(t / grid.dt_oracle / 2)));
    const double dt = t / static_cast<double>(n);

    std::vector<VectorXc> Uhat(static_cast<std::size_t>(n + 1));
    if (steady) {
        Uhat[0] = sp.forward(U.sample(grid, 0.0));
    } else {
        parallel_for(static_cast<std::size_t>(n + 1),
                     [&](std::size_t j) { Uhat[j] = sp.forward(U.sample(grid, static_cast<double>(j) * dt)); });
    }

    const Complex smu = spec.source_sign_mu();
    VectorXc fine(sp.M), coarse(sp.M);
    parallel_for(static_cast<std::size_t>(sp.M), [&](std::size_t mi) {
        const auto m = static_cast<Eigen::Index>(mi);
        const double k = sp.k(m);
        const Complex c = spec.symbol(k, false);
        const Complex pre = smu * spec.source_multiplier(k);
        auto AB = [&](double S, Complex& A, Complex& B) {
            if (S == 0.0) {
                A = B = 0.0;
                return;
            }
            const Complex z = -c * std::pow(S, a);
            const Complex e1 = mittag_leffler(a, a + 1.0, z), e2 = mittag_leffler(a, a + 2.0, z);
            A = std::pow(S, a) * e1;
            B = std::pow(S, a + 1.0) * (e1 - e2);
        };
        if (steady) {
            Complex A, B;
            AB(t, A, B);
            fine(m) = coarse(m) = pre * A * Uhat[0](m);
            return;
        }
        std::vector<Complex> A(static_cast<std::size_t>(n + 1)), B(static_cast<std::size_t>(n + 1));
        for (Eigen::Index j = 0; j <= n; ++j) AB(static_cast<double>(j) * dt, A[j], B[j]);
        // s = t - tau; node j of tau sits at s = (n - j) dt
        auto integrate = [&](Eigen::Index stride) {
            Complex acc = 0.0;
            const double h = stride * dt;
            for (Eigen::Index j = 0; j + stride <= n; j += stride) {
                const Eigen::Index ib = n - j, ia = n - j - stride;  // s indices of the interval ends
                const double sa = ia * dt, sb = ib * dt;
                const Complex dA = A[ib] - A[ia], dB = B[ib] - B[ia];
                acc += Uhat[j + stride](m) * (sb * dA - dB) / h + Uhat[j](m) * (dB - sa * dA) / h;
            }
            return acc;
        };
        fine(m) = pre * integrate(1);
        coarse(m) = pre * integrate(2);
    });
    const double norm = fine.norm();
    rel_change = norm > 0.0 ? (fine - coarse).norm() / norm : 0.0;
    return fine;
}

}  // namespace

VectorXr SpaceTimeGrid::x() const {
    VectorXr out(nx);
    const double h = dx();
    for (Eigen::Index j = 0; j < nx; ++j) out(j) = x_min + static_cast<double>(j) * h;
    return out;
}

std::vector<std::string> SpaceTimeGrid::violations() const {
    std::vector<std::string> out;
    if (!(x_max > x_min)) out.push_back("x_max = " + fmt(x_max) + " must exceed x_min = " + fmt(x_min));
    if (nx < 8) out.push_back("nx = " + std::to_string(nx) + " must be at least 8");
    if (times.empty()) out.push_back("at least one output time is required");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] > 0.0) || !std::isfinite(times[i]))
            out.push_back("time " + fmt(times[i]) + " must be positive");
        else if (i > 0 && !(times[i] > times[i - 1]))
            out.push_back("times must be increasing (" + fmt(times[i - 1]) + ", " + fmt(times[i]) + ")");
    }
    if (!(dt_oracle > 0.0)) out.push_back("dt_oracle = " + fmt(dt_oracle) + " must be positive");
    return out;
}

void SpaceTimeGrid::validate() const {
    auto v = violations();
    if (!v.empty()) throw ConstraintError(std::move(v));
}

SourceDescriptor SourceDescriptor::delta(double x0) {
    SourceDescriptor s;
    s.kind = Kind::dirac_delta;
    s.center = x0;
    return s;
}

SourceDescriptor SourceDescriptor::gaussian(double c, double w) {
    if (!(w > 0.0)) throw DomainError("gaussian source: width must be positive");
    SourceDescriptor s;
    s.kind = Kind::gaussian;
    s.center = c;
    s.width = w;
    return s;
}

SourceDescriptor SourceDescriptor::box(double lo, double hi) {
    if (!(hi > lo)) throw DomainError("box source: hi must exceed lo");
    SourceDescriptor s;
    s.kind = Kind::box;
    s.lo = lo;
    s.hi = hi;
    return s;
}

SourceDescriptor SourceDescriptor::samples(const VectorXc& v) {
    SourceDescriptor s;
    s.kind = Kind::samples;
    s.values = v.transpose();
    return s;
}

SourceDescriptor SourceDescriptor::space_time(std::vector<double> tau, MatrixXc v) {
    if (tau.empty() || static_cast<Eigen::Index>(tau.size()) != v.rows())
        throw DomainError("space-time source: one row of values per tau is required");
    for (std::size_t i = 1; i < tau.size(); ++i)
        if (!(tau[i] > tau[i - 1])) throw DomainError("space-time source: tau must be increasing");
    SourceDescriptor s;
    s.kind = Kind::samples;
    s.tau = std::move(tau);
    s.values = std::move(v);
    return s;
}

VectorXc SourceDescriptor::sample(const SpaceTimeGrid& grid, double t) const {
    const Eigen::Index n = grid.nx;
    const double dx = grid.dx();
    VectorXc out = VectorXc::Zero(n);
    switch (kind) {
        case Kind::zero:
            break;
        case Kind::dirac_delta: {
            const double pos = (center - grid.x_min) / dx;
            const auto j = static_cast<Eigen::Index>(std::llround(pos));
            if (j < 0 || j >= n) throw DomainError("delta position " + fmt(center) + " outside the grid");
            out(j) = 1.0 / dx;
            break;
        }
        case Kind::gaussian:
            for (Eigen::Index j = 0; j < n; ++j) {
                const double u = (grid.x_min + j * dx - center) / width;
                out(j) = std::exp(-0.5 * u * u);
            }
            break;
        case Kind::box:
            for (Eigen::Index j = 0; j < n; ++j) {
                const double x = grid.x_min + j * dx;
                out(j) = (x >= lo && x <= hi) ? 1.0 : 0.0;
            }
            break;
        case Kind::samples: {
            if (values.cols() != n) throw DomainError("source samples do not match the grid (" +
                                                      std::to_string(values.cols()) + " vs " +
                                                      std::to_string(n) + " nodes)");
            if (tau.empty() || t <= tau.front()) {
                out = values.row(0).transpose();
            } else if (t >= tau.back()) {
                out = values.row(values.rows() - 1).transpose();
            } else {
                const auto it = std::upper_bound(tau.begin(), tau.end(), t);
                const auto i = static_cast<Eigen::Index>(it - tau.begin());
                const double w = (t - tau[i - 1]) / (tau[i] - tau[i - 1]);
                out = ((1.0 - w) * values.row(i - 1) + w * values.row(i)).transpose();
            }
            break;
        }
    }
    return out;
}

std::string SourceDescriptor::describe() const {
    switch (kind) {
        case Kind::zero: return "zero";
        case Kind::dirac_delta: return "delta(" + fmt(center) + ")";
        case Kind::gaussian: return "gaussian(" + fmt(center) + "," + fmt(width) + ")";
        case Kind::box: return "box(" + fmt(lo) + "," + fmt(hi) + ")";
        case Kind::samples: return tau.empty() ? "samples" : "samples(" + std::to_string(tau.size()) + " times)";
    }
    return "?";
}

std::vector<std::string> validate_spec(const ProblemSpec& spec) { return spec.violations(); }

VectorXc convolve_space(const VectorXc& a, const VectorXc& b, double dx) {
    if (a.size() != b.size()) throw DomainError("convolve_space: length mismatch");
    const Eigen::Index n = a.size();
    if (n == 0) return {};
    const Eigen::Index M = next_pow2(2 * n - 1);
    VectorXc pa = VectorXc::Zero(M), pb = VectorXc::Zero(M);
    pa.head(n) = a;
    pb.head(n) = b;
    const VectorXc prod = dft(pa).cwiseProduct(dft(pb));
    return idft(prod).head(2 * n - 1) * dx;
}

VectorXc convolve_kernel(const VectorXc& kernel, const VectorXc& f, double dx) {
    const Eigen::Index n = f.size();
    if (kernel.size() != 2 * n - 1) throw DomainError("convolve_kernel: kernel needs 2n - 1 samples");
    const Eigen::Index M = next_pow2(3 * n - 2);
    VectorXc pk = VectorXc::Zero(M), pf = VectorXc::Zero(M);
    pk.head(2 * n - 1) = kernel;
    pf.head(n) = f;
    const VectorXc full = idft(dft(pk).cwiseProduct(dft(pf)));
    // full(j + n - 1) = sum_i K[j - i + n - 1] f_i
    return full.segment(n - 1, n) * dx;
}

VectorXr singular_weights(double alpha, Eigen::Index t_index, double dt) {
    if (!(alpha > 0.0) || alpha > 2.0) throw DomainError("convolve_time_singular: alpha must lie in (0, 2]");
    VectorXr w = VectorXr::Zero(t_index + 1);
    const double t = static_cast<double>(t_index) * dt;
    for (Eigen::Index j = 0; j < t_index; ++j) {
        // tau in [tau_j, tau_j+1] <-> u = t - tau in [a, b]
        const double a = t - static_cast<double>(j + 1) * dt, b = t - static_cast<double>(j) * dt;
        const double m0 = (std::pow(b, alpha) - std::pow(a, alpha)) / alpha;
        const double m1 = (std::pow(b, alpha + 1) - std::pow(a, alpha + 1)) / (alpha + 1);
        // tau_j sits at u = b: weight of F_j is \int u^(a-1) (u - a) du / dt, of F_j+1 is \int u^(a-1) (b - u) du / dt
        w(j) += (m1 - a * m0) / dt;
        w(j + 1) += (b * m0 - m1) / dt;
    }
    return w;
}

VectorXc convolve_time_singular(const MatrixXc& factor, double alpha, Eigen::Index t_index, double dt) {
    if (t_index < 0 || factor.rows() < t_index + 1)
        throw DomainError("convolve_time_singular: need t_index + 1 rows of samples");
    const VectorXr w = singular_weights(alpha, t_index, dt);
    VectorXc out = VectorXc::Zero(factor.cols());
    for (Eigen::Index j = 0; j <= t_index; ++j) out += w(j) * factor.row(j).transpose();
    return out;
}

Field solve(const ProblemSpec& spec, const SourceDescriptor& f, const SourceDescriptor& g,
            const SourceDescriptor& U, const SpaceTimeGrid& grid, const SolveOptions& opts) {
    std::vector<std::string> errors = validate_spec(spec);
    for (auto& v : grid.violations()) errors.push_back(v);
    if (!g.is_zero() && !spec.super_regime())
        errors.push_back("g must be zero for alpha = " + fmt(spec.alpha) + " <= 1");
    if (spec.coupled && !U.is_zero()) errors.push_back("the coupled equation takes no separate source U");
    if (U.kind == SourceDescriptor::Kind::dirac_delta) errors.push_back("a delta is not admitted as source U");
    if (!errors.empty()) throw ConstraintError(std::move(errors));
    opts.quad.validate();

    const GreenKind kf = spec.coupled ? GreenKind::G3 : GreenKind::G;
    const GreenKind kg = spec.coupled ? GreenKind::G4 : GreenKind::G2;
    bool fourier_only = false;
    try {
        require_real_space(kf, spec);
    } catch (const FourierOnlyError&) {
        fourier_only = true;
    }

    Field field;
    field.grid = grid;
    const Eigen::Index nt = static_cast<Eigen::Index>(grid.times.size());
    field.values = MatrixXc::Zero(nt, grid.nx);
    const double dx = grid.dx();
    const Spectral sp(grid, opts.pad_factor);

    if (fourier_only) {
        field.warnings.push_back("kernel does not decay in real space; evolved in Fourier space");
        const VectorXc fh = f.is_zero() ? VectorXc() : sp.forward(f.sample(grid));
        const VectorXc gh = g.is_zero() ? VectorXc() : sp.forward(g.sample(grid));
        for (Eigen::Index ti = 0; ti < nt; ++ti) {
            const double t = grid.times[static_cast<std::size_t>(ti)];
            VectorXc Nh = VectorXc::Zero(sp.M);
            parallel_for(static_cast<std::size_t>(sp.M), [&](std::size_t mi) {
                const auto m = static_cast<Eigen::Index>(mi);
                Complex v = 0.0;
                if (fh.size()) v += green_hat(kf, sp.k(m), t, spec) * fh(m);
                if (gh.size()) v += green_hat(kg, sp.k(m), t, spec) * gh(m);
                Nh(m) = v;
            });
            field.values.row(ti) = sp.back(Nh).transpose();
        }
    } else {
        auto add_term = [&](GreenKind kind, const SourceDescriptor& data, const char* name) {
            if (data.is_zero()) return;
            if (data.kind == SourceDescriptor::Kind::dirac_delta && opts.fundamental) {
                const VectorXr x = grid.x();
                MatrixXc vals(nt, grid.nx);
                parallel_for(static_cast<std::size_t>(nt * grid.nx), [&](std::size_t idx) {
                    const auto ti = static_cast<Eigen::Index>(idx) / grid.nx;
                    const auto j = static_cast<Eigen::Index>(idx) % grid.nx;
                    vals(ti, j) = green_point(kind, x(j) - data.center, grid.times[static_cast<std::size_t>(ti)],
                                              spec, opts.quad);
                });
                field.values += vals;
                for (Eigen::Index ti = 0; ti < nt; ++ti) {
                    const double t = grid.times[static_cast<std::size_t>(ti)];
                    mass_warning(field, vals.row(ti).transpose(), dx, green_hat(kind, 0.0, t, spec), t, name);
                }
                return;
            }
            // sinc-interpolated data see only |k| < pi/dx, so the kernel is
            // band-limited to the same range; this keeps the rectangle rule
            // exact despite the kink of G at the origin
            QuadratureConfig band = opts.quad;
            if (!(band.k_max > 0.0)) band.k_max = pi / dx;
            const VectorXc samples = data.sample(grid);
            const auto kernels = sample_kernels(kind, spec, grid, band);
            for (Eigen::Index ti = 0; ti < nt; ++ti) {
                const double t = grid.times[static_cast<std::size_t>(ti)];
                const VectorXc& K = kernels[static_cast<std::size_t>(ti)];
                field.values.row(ti) += convolve_kernel(K, samples, dx).transpose();
                mass_warning(field, K, dx, green_hat(kind, 0.0, t, spec), t, name);
            }
        };
        add_term(kf, f, to_string(kf).c_str());
        add_term(kg, g, to_string(kg).c_str());
    }

    if (!U.is_zero() && spec.mu != Complex(0.0)) {
        for (Eigen::Index ti = 0; ti < nt; ++ti) {
            const double t = grid.times[static_cast<std::size_t>(ti)];
            double change = 0.0;
            const VectorXc S = source_spectrum(spec, U, grid, sp, t, change);
            if (change > opts.source_rel_tol)
                throw ToleranceError("source time integral at t = " + fmt(t) + " changes by " + fmt(change) +
                                     " under step halving; reduce dt");
            field.values.row(ti) += sp.back(S).transpose();
        }
    }
    return field;
}

}  // namespace fracgreen
