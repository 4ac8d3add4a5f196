#pragma once

#include "fracgreen/solver.hpp"
#include "fracgreen/types.hpp"

namespace fracgreen {

// Independent reference: Grünwald-Letnikov time stepping of the
// Riemann-Liouville derivative, one Fourier mode at a time. Shares no code
// with the Mittag-Leffler or Green-function paths beyond the symbol.

struct OracleConfig {
    double dt = 1.0 / 1024;
    Eigen::Index n_steps = 1024;
    Eigen::Index modes = 0;  // 0: pad_factor * nx rounded up to a power of two
    int pad_factor = 4;      // periodic window is this many times the grid width

    void validate() const;
};

/// Solves D^alpha u = -c u + q(t) with D^(alpha-1) u(0+) = init_strength by
///   sum_{j<=n} w_j u_(n-j) = dt^alpha (-c u_n + q_n) + [n = 0] init dt^(alpha-1),
/// so u_n approximates u(n dt) to first order. Returns u_0..u_n_steps.
/// `forcing`, if non-empty, holds q_0..q_n_steps.
/// Throws ToleranceError if the iteration blows up for dissipative c.
VectorXc oracle_mode_evolve(double alpha, Complex c, const OracleConfig& cfg, Complex init_strength,
                            const VectorXc& forcing = {});

/// Reference field for the data f (and optional source U): DFT of f on the
/// zero-padded periodic grid, every mode evolved by oracle_mode_evolve with
/// c = symbol at the mode's wavenumber, inverse DFT at each requested time.
/// Times must be multiples of cfg.dt.
Field oracle_solve(const ProblemSpec& spec, const SourceDescriptor& f, const SpaceTimeGrid& grid,
                   const OracleConfig& cfg, const SourceDescriptor& U = SourceDescriptor::zero());

}  // namespace fracgreen
