#include "fracgreen/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "fracgreen/types.hpp"

namespace fracgreen {

void QuadratureConfig::validate() const {
    std::vector<std::string> bad;
    if (!(k_max >= 0.0)) bad.push_back("k_max must be >= 0 (0 = automatic)");
    if (nodes_per_unit < 2 || nodes_per_unit > 128) bad.push_back("nodes_per_unit must lie in [2, 128]");
    if (!(abs_tol > 0.0)) bad.push_back("abs_tol must be positive");
    if (!(rel_tol > 0.0)) bad.push_back("rel_tol must be positive");
    if (!(mb_contour_height > 0.0)) bad.push_back("mb_contour_height must be positive");
    if (!bad.empty()) throw ConstraintError(std::move(bad));
}

namespace {

GaussRule build_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    static std::mutex mutex;
    static std::map<int, GaussRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
    return it->second;
}

}  // namespace fracgreen
