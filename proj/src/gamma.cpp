#include "fracgreen/gamma.hpp"

#include <array>
#include <cmath>

namespace fracgreen {

namespace {

constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_p = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

const double half_log_two_pi = 0.5 * std::log(2.0 * pi);

bool is_nonpositive_integer(Complex z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// log Gamma for Re z >= 1/2.
Complex log_gamma_right(Complex z) {
    z -= 1.0;
    Complex x = lanczos_p[0];
    for (std::size_t i = 1; i < lanczos_p.size(); ++i) x += lanczos_p[i] / (z + double(i));
    const Complex t = z + lanczos_g + 0.5;
    return half_log_two_pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

// log sin(pi z) without overflow for large |Im z|.
Complex log_sin_pi(Complex z) {
    if (z.imag() < 0.0) return std::conj(log_sin_pi(std::conj(z)));
    // sin(pi z) = exp(-i pi z) (exp(2 i pi z) - 1) / (2 i), |exp(2 i pi z)| <= 1
    const Complex i_pi_z = Complex(0.0, pi) * z;
    return -i_pi_z + std::log((std::exp(2.0 * i_pi_z) - 1.0) / Complex(0.0, 2.0));
}

}  // namespace

Complex log_gamma_complex(Complex z) {
    if (is_nonpositive_integer(z))
        throw PoleError("log_gamma_complex: pole at z = " + std::to_string(z.real()));
    if (z.real() >= 0.5) return log_gamma_right(z);
    return std::log(pi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
}

Complex gamma_complex(Complex z) {
    if (is_nonpositive_integer(z))
        throw PoleError("gamma_complex: pole at z = " + std::to_string(z.real()));
    if (z.real() >= 0.5) return std::exp(log_gamma_right(z));
    return pi / (std::sin(pi * z) * std::exp(log_gamma_right(1.0 - z)));
}

double rgamma(double x) {
    if (x <= 0.0 && x == std::floor(x)) return 0.0;
    if (x < 170.0) return 1.0 / std::tgamma(x);
    return std::exp(-std::lgamma(x));
}

}  // namespace fracgreen
