#pragma once

#include <functional>

#include "fracgreen/types.hpp"

namespace fracgreen {

// Discrete Fourier helpers on a periodic uniform grid x_j = x_0 + j dx.
//
// The continuous convention is f*(k) = \int e^{+ikx} f(x) dx with inverse
// (1/2pi) \int e^{-ikx} f*(k) dk, so the grid mode e^{i kappa x} carries the
// wavenumber k = -kappa.

/// Unnormalized forward DFT, F_m = sum_j f_j exp(-2 pi i j m / n).
VectorXc dft(const VectorXc& f);

/// Inverse of dft (includes the 1/n).
VectorXc idft(const VectorXc& F);

/// Angular frequency kappa_m = 2 pi m' / (n dx) of DFT bin m, with m' the
/// signed index in [-n/2, n/2).
VectorXr dft_frequencies(Eigen::Index n, double dx);

/// Applies the Fourier multiplier M(k) (in the convention above) to periodic
/// samples: returns the samples of F^{-1}[M(k) f*(k)].
VectorXc fourier_multiply(const VectorXc& f, double dx, const std::function<Complex(double)>& M);

/// Smallest power of two >= n.
Eigen::Index next_pow2(Eigen::Index n);

}  // namespace fracgreen
