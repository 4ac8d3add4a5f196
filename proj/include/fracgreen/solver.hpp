#pragma once

#include <string>
#include <vector>

#include "fracgreen/green.hpp"
#include "fracgreen/types.hpp"

namespace fracgreen {

/// Uniform x grid x_j = x_min + j dx (j < nx) and a list of output times.
struct SpaceTimeGrid {
    double x_min = -10.0;
    double x_max = 10.0;
    Eigen::Index nx = 128;
    std::vector<double> times{1.0};
    double dt_oracle = 1.0 / 256;  // time step of the oracle and of the source-term quadrature

    double dx() const { return (x_max - x_min) / static_cast<double>(nx - 1); }
    VectorXr x() const;
    std::vector<std::string> violations() const;
    void validate() const;
};

/// Initial datum or source term. Profiles other than `samples` are analytic
/// and are sampled on the grid; a space-time source given by `samples` holds
/// one row per tau in `tau` (linear interpolation in between, constant
/// extension beyond the last row).
struct SourceDescriptor {
    enum class Kind { zero, dirac_delta, gaussian, box, samples };
    Kind kind = Kind::zero;
    double center = 0.0;  // delta position, gaussian center
    double width = 1.0;   // gaussian standard deviation
    double lo = 0.0, hi = 0.0;
    std::vector<double> tau;  // empty: time independent
    MatrixXc values;          // rows: tau (or a single row), cols: grid nodes

    static SourceDescriptor zero() { return {}; }
    static SourceDescriptor delta(double x0 = 0.0);
    /// exp(-(x - c)^2 / (2 w^2))
    static SourceDescriptor gaussian(double c, double w);
    /// indicator of [lo, hi]
    static SourceDescriptor box(double lo, double hi);
    static SourceDescriptor samples(const VectorXc& v);
    static SourceDescriptor space_time(std::vector<double> tau, MatrixXc v);

    bool is_zero() const { return kind == Kind::zero; }
    /// Profile on the grid at time tau; a delta becomes a unit impulse of
    /// weight 1/dx at the nearest node.
    VectorXc sample(const SpaceTimeGrid& grid, double tau = 0.0) const;
    std::string describe() const;
};

/// N(x, t): rows are grid.times, columns grid nodes.
struct Field {
    SpaceTimeGrid grid;
    MatrixXc values;
    std::vector<std::string> warnings;
};

struct SolveOptions {
    QuadratureConfig quad;
    /// delta data use N = G directly instead of convolving an impulse
    bool fundamental = true;
    /// zero-padding factor of the spectral source and Fourier-only paths
    int pad_factor = 2;
    /// largest accepted step-halving difference of the source time integral
    double source_rel_tol = 1e-2;
};

/// All violated constraints of spec, each naming the offending value.
std::vector<std::string> validate_spec(const ProblemSpec& spec);

/// Full solution. Real-space kernels are convolved with f and g; the source
/// integral mu \int (t-tau)^(a-1) G1(t-tau) * U(tau) dtau is evaluated per
/// Fourier mode with product integration. Coupled specs use G3/G4 and admit
/// no separate source. Specs whose kernels do not decay (imaginary lambda)
/// are evolved in Fourier space.
Field solve(const ProblemSpec& spec, const SourceDescriptor& f, const SourceDescriptor& g,
            const SourceDescriptor& U, const SpaceTimeGrid& grid, const SolveOptions& opts = {});

/// Full linear convolution c_m = dx sum_i a_i b_(m-i), length 2n - 1.
VectorXc convolve_space(const VectorXc& a, const VectorXc& b, double dx);

/// N_j = dx sum_i K(x_j - x_i) f_i for a kernel sampled at offsets
/// (m - n + 1) dx, m = 0..2n-2, and data f of length n.
VectorXc convolve_kernel(const VectorXc& kernel, const VectorXc& f, double dx);

/// \int_0^t (t - tau)^(alpha-1) F(tau) dtau with F given at tau_j = j dt,
/// j = 0..t_index (rows of `factor`), t = t_index dt. F is linearly
/// interpolated and the moments of (t - tau)^(alpha-1) are exact.
VectorXc convolve_time_singular(const MatrixXc& factor, double alpha, Eigen::Index t_index, double dt);

/// Product-integration weights of convolve_time_singular.
VectorXr singular_weights(double alpha, Eigen::Index t_index, double dt);

}  // namespace fracgreen
