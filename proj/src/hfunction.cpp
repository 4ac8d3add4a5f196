#include "fracgreen/hfunction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fracgreen/gamma.hpp"

namespace fracgreen {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Moving the contour further than this (in Re xi) is never worthwhile.
constexpr double shift_window = 60.0;
constexpr int residue_points = 128;

bool at_gamma_pole(Complex w) {
    return w.imag() == 0.0 && w.real() <= 0.0 && w.real() == std::floor(w.real());
}

// log Theta(xi); -inf where a denominator Gamma has a pole.
Complex log_theta(const HFunctionParams& h, Complex xi) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < h.lower.size(); ++j) {
        const auto& [b, B] = h.lower[j];
        if (int(j) < h.m) {
            acc += log_gamma_complex(b + B * xi);
        } else {
            const Complex w = 1.0 - b - B * xi;
            if (at_gamma_pole(w)) return -inf;
            acc -= log_gamma_complex(w);
        }
    }
    for (std::size_t j = 0; j < h.upper.size(); ++j) {
        const auto& [a, A] = h.upper[j];
        if (int(j) < h.n) {
            acc += log_gamma_complex(1.0 - a - A * xi);
        } else {
            const Complex w = a + A * xi;
            if (at_gamma_pole(w)) return -inf;
            acc -= log_gamma_complex(w);
        }
    }
    return acc;
}

struct Cluster {
    double lo, hi;
    bool left;  // member of the family closed to the left
    double center() const { return 0.5 * (lo + hi); }
};

struct PoleLayout {
    double left_max = -inf;
    double right_min = inf;
    std::vector<Cluster> clusters;  // sorted by position
};

PoleLayout pole_layout(const HFunctionParams& h, double c0) {
    PoleLayout out;
    struct Point {
        double x;
        bool left;
    };
    std::vector<Point> points;
    const double lo = c0 - shift_window - 2.0, hi = c0 + shift_window + 2.0;
    for (int j = 0; j < h.m; ++j) {
        const auto& [b, B] = h.lower[j];
        out.left_max = std::max(out.left_max, -b / B);
        for (int k = 0;; ++k) {
            const double x = -(b + k) / B;
            if (x < lo || k > 4000) break;
            points.push_back({x, true});
        }
    }
    for (int j = 0; j < h.n; ++j) {
        const auto& [a, A] = h.upper[j];
        out.right_min = std::min(out.right_min, (1.0 - a) / A);
        for (int k = 0;; ++k) {
            const double x = (1.0 - a + k) / A;
            if (x > hi || k > 4000) break;
            points.push_back({x, false});
        }
    }
    std::sort(points.begin(), points.end(), [](const Point& p, const Point& q) { return p.x < q.x; });

    // merge coincident points, then group near neighbours into clusters
    std::vector<Point> distinct;
    for (const auto& p : points) {
        if (!distinct.empty() && std::abs(p.x - distinct.back().x) <= 1e-10 * std::max(1.0, std::abs(p.x)))
            continue;
        distinct.push_back(p);
    }
    std::vector<double> gaps;
    for (std::size_t i = 1; i < distinct.size(); ++i) gaps.push_back(distinct[i].x - distinct[i - 1].x);
    double merge_gap = 0.05;
    if (!gaps.empty()) {
        std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
        merge_gap = std::min(merge_gap, 0.25 * gaps[gaps.size() / 2]);
    }
    for (const auto& p : distinct) {
        if (!out.clusters.empty() && out.clusters.back().left == p.left &&
            p.x - out.clusters.back().hi < merge_gap) {
            out.clusters.back().hi = p.x;
            continue;
        }
        out.clusters.push_back({p.x, p.x, p.left});
    }
    return out;
}

double distance_to_poles(const PoleLayout& layout, double c) {
    double d = inf;
    for (const auto& cl : layout.clusters)
        d = std::min({d, std::abs(cl.lo - c), std::abs(cl.hi - c)});
    return d;
}

// Sum of the residues of Theta(xi) z^-xi inside a cluster, by the trapezoidal
// rule on a circle that separates the cluster from every other pole.
double cluster_residue(const HFunctionParams& h, const PoleLayout& layout, std::size_t idx,
                       double log_z) {
    const Cluster& cl = layout.clusters[idx];
    const double center = cl.center();
    const double r_in = 0.5 * (cl.hi - cl.lo);
    double r_out = inf;
    for (std::size_t i = 0; i < layout.clusters.size(); ++i) {
        if (i == idx) continue;
        const auto& o = layout.clusters[i];
        r_out = std::min({r_out, std::abs(o.lo - center), std::abs(o.hi - center)});
    }
    if (!std::isfinite(r_out)) r_out = r_in + 1.0;
    const double r = r_in > 0.0 ? std::sqrt(r_in * r_out) : std::min(0.5 * r_out, 0.5);

    Complex acc = 0.0;
    for (int j = 0; j < residue_points; ++j) {
        const double phi = 2.0 * pi * (j + 0.5) / residue_points;
        const Complex e = std::polar(1.0, phi);
        const Complex xi = center + r * e;
        const Complex lt = log_theta(h, xi);
        if (std::isinf(lt.real())) continue;
        acc += std::exp(lt - xi * log_z) * e;
    }
    return (acc * r / double(residue_points)).real();
}

// (1/pi) \int_0^inf Re[Theta(c + i y) z^-(c + i y)] dy by the trapezoidal rule
// with step h, together with the same rule at step 2h from the even nodes.
struct LineIntegral {
    double fine;
    double coarse;
    double magnitude;   // integral of |integrand|, for error scaling
    double tail_ratio;  // |integrand| at the cut-off over its peak
};

LineIntegral line_trapezoid(const HFunctionParams& h, double c, double log_z, double step,
                            double height) {
    double fine = 0.0, coarse = 0.0, mag = 0.0, peak = 0.0, ratio = 1.0;
    int quiet = 0;
    for (long j = 0;; ++j) {
        const double y = step * double(j);
        if (y > height) break;
        const Complex xi(c, y);
        const Complex lt = log_theta(h, xi);
        const Complex f = std::isinf(lt.real()) ? Complex(0.0) : std::exp(lt - xi * log_z);
        const double w = j == 0 ? 0.5 : 1.0;
        fine += w * f.real();
        if (j % 2 == 0) coarse += w * f.real();
        const double af = std::abs(f);
        mag += w * af;
        peak = std::max(peak, af);
        ratio = peak > 0.0 ? af / peak : 0.0;
        // stop on an even index so both rules see the same range
        if (y > 1.0 && ratio < 1e-18) {
            if (++quiet >= 8 && j % 2 == 0) break;
        } else {
            quiet = 0;
        }
    }
    return {fine * step / pi, coarse * 2.0 * step / pi, mag * step / pi, ratio};
}

}  // namespace

void HFunctionParams::validate(int checked_index) const {
    std::vector<std::string> bad;
    const int p = int(upper.size()), q = int(lower.size());
    if (n < 0 || n > p) bad.push_back("need 0 <= n <= p (n=" + std::to_string(n) + ", p=" + std::to_string(p) + ")");
    if (m < 1 || m > q) bad.push_back("need 1 <= m <= q (m=" + std::to_string(m) + ", q=" + std::to_string(q) + ")");
    for (const auto& g : upper)
        if (!(g.scale > 0.0) || !std::isfinite(g.shift)) bad.push_back("upper scales must be positive, shifts finite");
    for (const auto& g : lower)
        if (!(g.scale > 0.0) || !std::isfinite(g.shift)) bad.push_back("lower scales must be positive, shifts finite");
    if (!bad.empty()) throw ConstraintError(std::move(bad));

    // A_i (b_j + k) != B_j (a_i - s - 1): a left pole never meets a right pole
    for (int i = 0; i < n; ++i) {
        const auto& [a, A] = upper[i];
        for (int j = 0; j < m; ++j) {
            const auto& [b, B] = lower[j];
            for (int k = 0; k <= checked_index; ++k)
                for (int s = 0; s <= checked_index; ++s) {
                    const double lhs = A * (b + k), rhs = B * (a - s - 1.0);
                    if (std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)))
                        throw ConstraintError({"pole families of Gamma(b_" + std::to_string(j + 1) +
                                               ") and Gamma(1-a_" + std::to_string(i + 1) +
                                               ") collide at k=" + std::to_string(k) +
                                               ", s=" + std::to_string(s)});
                }
        }
    }
}

HFunctionParams HFunctionParams::green_kernel(double time_shift, double alpha, double beta,
                                              double theta) {
    if (!(beta > 0.0)) throw DomainError("green_kernel: beta must be positive");
    const double rho = (beta - theta) / (2.0 * beta);
    if (!(rho > 0.0 && rho < 1.0))
        throw DomainError("green_kernel: rho = (beta - theta)/(2 beta) = " + std::to_string(rho) +
                          " outside (0, 1)");
    HFunctionParams h;
    h.m = 2;
    h.n = 1;
    h.upper = {{1.0, 1.0 / beta}, {time_shift, alpha / beta}, {1.0, rho}};
    h.lower = {{1.0, 1.0}, {1.0, 1.0 / beta}, {1.0, rho}};
    return h;
}

Complex mellin_barnes_integrand(const HFunctionParams& params, Complex xi, double z) {
    const Complex lt = log_theta(params, xi);
    if (std::isinf(lt.real())) return 0.0;
    return std::exp(lt - xi * std::log(z));
}

double h_function(const HFunctionParams& params, double z, const QuadratureConfig& cfg) {
    if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("h_function: z must be positive and finite");
    params.validate();

    const double log_z = std::log(z);
    PoleLayout layout = pole_layout(params, 0.0);
    if (!(layout.left_max < layout.right_min))
        throw ConstraintError({"h_function: no vertical line separates the pole families (left max " +
                               std::to_string(layout.left_max) + " >= right min " +
                               std::to_string(layout.right_min) + ")"});
    const double c0 = std::isfinite(layout.right_min) ? 0.5 * (layout.left_max + layout.right_min)
                                                      : layout.left_max + 0.5;
    layout = pole_layout(params, c0);

    // Candidate abscissae: the separating line and the mid-gaps between
    // clusters. The scale of the integrand along a line is estimated from a
    // few points near the real axis.
    auto log_scale = [&](double c) {
        double best = -inf;
        for (double y : {0.0, 0.7, 1.9}) {
            const Complex xi(c, y);
            best = std::max(best, (log_theta(params, xi) - xi * log_z).real());
        }
        return best;
    };
    // Near z = 1 the separating line is well conditioned; far from it the
    // line is moved towards the family whose residues dominate.
    double c = c0;
    double best_cost = log_scale(c0);
    const double keep_margin = std::log(100.0);
    const bool shift = z < 0.1 || z > 10.0;
    const double reach = std::min(shift_window, 40.0 / std::abs(log_z));
    for (std::size_t i = 1; shift && i < layout.clusters.size(); ++i) {
        const double mid = 0.5 * (layout.clusters[i - 1].hi + layout.clusters[i].lo);
        if (mid == c0 || std::abs(mid - c0) > reach) continue;
        if ((z < 1.0) != (mid < c0)) continue;
        const double cost = log_scale(mid);
        if (cost < best_cost - keep_margin) {
            best_cost = cost;
            c = mid;
        }
    }

    double residues = 0.0;
    for (std::size_t i = 0; i < layout.clusters.size(); ++i) {
        const double x = layout.clusters[i].center();
        if (c < c0 && x > c && x < c0) residues += cluster_residue(params, layout, i, log_z);
        if (c > c0 && x < c && x > c0) residues -= cluster_residue(params, layout, i, log_z);
    }

    // trapezoidal rule along Re xi = c, halving the step until it settles
    const double d = distance_to_poles(layout, c);
    double scale_sum = 0.0;
    for (const auto& g : params.upper) scale_sum += g.scale;
    for (const auto& g : params.lower) scale_sum += g.scale;
    const double omega = std::abs(log_z) + scale_sum * std::log(10.0);
    double step = 2.0 * pi * d / (37.0 + d * omega);
    for (int level = 0; level < 10; ++level, step *= 0.5) {
        const LineIntegral li = line_trapezoid(params, c, log_z, step, cfg.mb_contour_height);
        if (li.tail_ratio > 1e-12)
            throw ToleranceError("h_function: Mellin-Barnes integrand has not decayed at |Im xi| = " +
                                 std::to_string(cfg.mb_contour_height));
        const double diff = std::abs(li.fine - li.coarse);
        if (diff <= std::max(1e-13 * std::abs(li.fine + residues), 1e-16 * li.magnitude))
            return li.fine + residues;
    }
    throw ToleranceError("h_function: contour quadrature did not converge");
}

}  // namespace fracgreen
