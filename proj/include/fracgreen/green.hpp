#pragma once

#include <string>
#include <vector>

#include "fracgreen/operators.hpp"
#include "fracgreen/quadrature.hpp"
#include "fracgreen/types.hpp"

namespace fracgreen {

/// How the source U enters the equation: through -mu times a Riesz-Feller
/// derivative of order gamma (Fourier multiplier Psi_gamma^phi), or as a bare
/// +mu U (multiplier 1).
enum class SourceMode { riesz_feller, identity };

/// Time-order regime. `automatic` infers it from alpha; the other two are a
/// declaration that validation checks against alpha.
enum class Regime { automatic, sub, super };  // (0,1] and (1,2]

struct ProblemSpec {
    double alpha = 1.0;   // time order
    double beta = 2.0;    // space order
    double gamma = 2.0;   // source space order
    double theta = 0.0;
    double phi = 0.0;
    Complex lambda = 1.0;
    Complex mu = 0.0;
    SourceMode source_mode = SourceMode::riesz_feller;
    Regime regime = Regime::automatic;
    // the source is the solution itself (two-operator equation, kernels G3/G4)
    bool coupled = false;

    /// One message per violated constraint; empty when valid.
    std::vector<std::string> violations() const;
    void validate() const;

    /// true for 1 < alpha <= 2
    bool super_regime() const { return alpha > 1.0; }
    SymbolParams space_symbol() const { return {beta, theta}; }
    SymbolParams source_symbol() const { return {gamma, phi}; }

    /// Source multiplier m_S(k): Psi_gamma^phi(k) or 1.
    Complex source_multiplier(double k) const;
    /// Signed source coefficient: -mu (riesz_feller) or +mu (identity).
    Complex source_sign_mu() const;
    /// Symbol c(k) of the evolution operator: lambda Psi_beta^theta(k), plus
    /// -source_sign_mu() m_S(k) in the coupled case.
    Complex symbol(double k, bool coupled_kernel) const;
};

enum class GreenKind { G, G1, G2, G3, G4 };

std::string to_string(GreenKind kind);
/// Parses "G", "G1", ... (DomainError otherwise).
GreenKind parse_green_kind(const std::string& s);
std::string to_string(SourceMode mode);
SourceMode parse_source_mode(const std::string& s);

/// Fourier transform of the kernel at wavenumber k:
///   G:  t^(a-1) E_{a,a}(-c t^a)     G1: m_S(k) E_{a,a}(-c t^a)
///   G2: t^(a-2) E_{a,a-1}(-c t^a)   G3, G4: as G, G2 with the coupled symbol
/// Throws RegimeError for G2/G4 when alpha <= 1.
Complex green_hat(GreenKind kind, double k, double t, const ProblemSpec& spec);

/// Throws FourierOnlyError unless the Fourier integrand of `kind` decays
/// (|arg| of every symbol coefficient inside the Mittag-Leffler decay sector
/// with a margin, and positive real part).
void require_real_space(GreenKind kind, const ProblemSpec& spec);

/// Kernel value in real space by oscillatory Fourier quadrature. For real
/// lambda and mu the imaginary part is the quadrature residue. With
/// cfg.k_max > 0 the Fourier integral is cut off at |k| = k_max, which gives
/// the kernel band-limited to that wavenumber.
Complex green_point(GreenKind kind, double x, double t, const ProblemSpec& spec,
                    const QuadratureConfig& cfg = {});

/// Closed H-function form of G or G2 (real positive lambda, x != 0).
double green_point_closed(GreenKind kind, double x, double t, const ProblemSpec& spec,
                          const QuadratureConfig& cfg = {});

/// Total mass \int G dx = Fourier transform at k = 0.
Complex green_mass(GreenKind kind, double t, const ProblemSpec& spec);

}  // namespace fracgreen
