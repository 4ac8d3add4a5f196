#pragma once

#include <cstddef>
#include <vector>

namespace fracgreen {

/// Tuning knobs shared by the Fourier-inversion and Mellin-Barnes quadratures.
struct QuadratureConfig {
    double k_max = 0.0;               // hard Fourier cutoff; 0 integrates to infinity (analytic tail)
    int nodes_per_unit = 16;          // Gauss-Legendre nodes per panel
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    double mb_contour_height = 5000;  // largest |Im xi| on a Mellin-Barnes contour

    void validate() const;
};

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule. Rules are cached per n; the reference stays valid.
const GaussRule& gauss_legendre(int n);

}  // namespace fracgreen
