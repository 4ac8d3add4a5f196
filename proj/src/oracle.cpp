#include "fracgreen/oracle.hpp"

#include <cmath>
#include <sstream>

#include "fracgreen/fourier.hpp"
#include "fracgreen/operators.hpp"
#include "fracgreen/parallel.hpp"

namespace fracgreen {

void OracleConfig::validate() const {
    std::vector<std::string> v;
    if (!(dt > 0.0)) v.push_back("oracle dt must be positive");
    if (n_steps < 1) v.push_back("oracle n_steps must be at least 1");
    if (modes < 0) v.push_back("oracle modes must be non-negative");
    if (pad_factor < 1) v.push_back("oracle pad_factor must be at least 1");
    if (!v.empty()) throw ConstraintError(std::move(v));
}

VectorXc oracle_mode_evolve(double alpha, Complex c, const OracleConfig& cfg, Complex init_strength,
                            const VectorXc& forcing) {
    cfg.validate();
    if (!(alpha > 0.0) || alpha > 2.0) throw DomainError("oracle: alpha must lie in (0, 2]");
    const Eigen::Index n = cfg.n_steps;
    if (forcing.size() != 0 && forcing.size() != n + 1)
        throw DomainError("oracle: forcing needs n_steps + 1 values");
    const auto w = gl_weights(alpha, n).weights;
    const double ha = std::pow(cfg.dt, alpha);
    const Complex denom = 1.0 + c * ha;

    VectorXc u(n + 1);
    const bool forced = forcing.size() != 0;
    u(0) = (init_strength * std::pow(cfg.dt, alpha - 1.0) + (forced ? ha * forcing(0) : 0.0)) / denom;
    double bound = 1e6 * (std::abs(u(0)) + 1.0);
    if (forced) bound += 1e6 * forcing.cwiseAbs().maxCoeff() * std::pow(n * cfg.dt, alpha);
    for (Eigen::Index k = 1; k <= n; ++k) {
        Complex hist = 0.0;
        for (Eigen::Index j = 1; j <= k; ++j) hist += w(j) * u(k - j);
        u(k) = (-hist + (forced ? ha * forcing(k) : 0.0)) / denom;
        if (!is_finite(u(k)) || (c.real() >= 0.0 && std::abs(u(k)) > bound)) {
            std::ostringstream os;
            os << "oracle: instability at step " << k << " (|u| = " << std::abs(u(k)) << ")";
            throw ToleranceError(os.str());
        }
    }
    return u;
}

Field oracle_solve(const ProblemSpec& spec, const SourceDescriptor& f, const SpaceTimeGrid& grid,
                   const OracleConfig& cfg, const SourceDescriptor& U) {
    spec.validate();
    grid.validate();
    cfg.validate();
    if (U.kind == SourceDescriptor::Kind::dirac_delta) throw ConstraintError({"a delta is not admitted as source U"});

    std::vector<Eigen::Index> steps;
    for (double t : grid.times) {
        const double r = t / cfg.dt;
        const auto s = static_cast<Eigen::Index>(std::llround(r));
        if (std::abs(r - static_cast<double>(s)) > 1e-9 * std::max(1.0, r) || s < 1)
            throw DomainError("oracle: time is not a multiple of dt");
        if (s > cfg.n_steps) throw DomainError("oracle: time beyond n_steps * dt");
        steps.push_back(s);
    }

    const Eigen::Index nx = grid.nx;
    const double dx = grid.dx();
    const Eigen::Index M =
        cfg.modes > 0 ? cfg.modes : next_pow2(std::max<Eigen::Index>(nx * cfg.pad_factor, 8));
    if (M < nx) throw DomainError("oracle: fewer modes than grid nodes");

    auto to_modes = [&](const VectorXc& v) {
        VectorXc p = VectorXc::Zero(M);
        p.head(nx) = v;
        return dft(p);
    };
    const VectorXc fh = to_modes(f.sample(grid));
    const VectorXr kappa = dft_frequencies(M, dx);

    const bool forced = !U.is_zero() && spec.mu != Complex(0.0) && !spec.coupled;
    std::vector<VectorXc> Uh;
    if (forced) {
        if (U.tau.empty()) {
            Uh.push_back(to_modes(U.sample(grid)));
        } else {
            Uh.resize(static_cast<std::size_t>(cfg.n_steps + 1));
            parallel_for(Uh.size(), [&](std::size_t j) { Uh[j] = to_modes(U.sample(grid, j * cfg.dt)); });
        }
    }

    const std::size_t nt = grid.times.size();
    MatrixXc spectra(static_cast<Eigen::Index>(nt), M);
    const SymbolParams space{spec.beta, spec.theta}, source{spec.gamma, spec.phi};
    parallel_for(static_cast<std::size_t>(M), [&](std::size_t mi) {
        const auto m = static_cast<Eigen::Index>(mi);
        const double k = -kappa(m);  // mode e^{i kappa x} has wavenumber -kappa
        const Complex mS = spec.source_mode == SourceMode::identity ? Complex(1.0) : riesz_feller_symbol(source, k);
        const Complex smu = spec.source_mode == SourceMode::identity ? spec.mu : -spec.mu;
        Complex c = spec.lambda * riesz_feller_symbol(space, k);
        if (spec.coupled) c -= smu * mS;
        VectorXc q;
        if (forced) {
            q.resize(cfg.n_steps + 1);
            for (Eigen::Index j = 0; j <= cfg.n_steps; ++j)
                q(j) = smu * mS * (U.tau.empty() ? Uh[0](m) : Uh[static_cast<std::size_t>(j)](m));
        }
        const VectorXc u = oracle_mode_evolve(spec.alpha, c, cfg, fh(m), q);
        for (std::size_t ti = 0; ti < nt; ++ti) spectra(static_cast<Eigen::Index>(ti), m) = u(steps[ti]);
    });

    Field field;
    field.grid = grid;
    field.values.resize(static_cast<Eigen::Index>(nt), nx);
    for (std::size_t ti = 0; ti < nt; ++ti) {
        const auto r = static_cast<Eigen::Index>(ti);
        field.values.row(r) = idft(spectra.row(r).transpose()).head(nx).transpose();
    }
    return field;
}

}  // namespace fracgreen
