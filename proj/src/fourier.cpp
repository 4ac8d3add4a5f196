#include "fracgreen/fourier.hpp"

#include <unsupported/Eigen/FFT>

namespace fracgreen {

VectorXc dft(const VectorXc& f) {
    if (f.size() == 0) return {};
    Eigen::FFT<double> fft;
    VectorXc out(f.size());
    fft.fwd(out, f);
    return out;
}

VectorXc idft(const VectorXc& F) {
    if (F.size() == 0) return {};
    Eigen::FFT<double> fft;
    VectorXc out(F.size());
    fft.inv(out, F);  // Eigen scales by 1/n by default
    return out;
}

VectorXr dft_frequencies(Eigen::Index n, double dx) {
    VectorXr k(n);
    for (Eigen::Index m = 0; m < n; ++m) {
        const Eigen::Index s = m < (n + 1) / 2 ? m : m - n;
        k(m) = 2.0 * pi * static_cast<double>(s) / (static_cast<double>(n) * dx);
    }
    return k;
}

VectorXc fourier_multiply(const VectorXc& f, double dx, const std::function<Complex(double)>& M) {
    VectorXc F = dft(f);
    const VectorXr kappa = dft_frequencies(f.size(), dx);
    for (Eigen::Index m = 0; m < F.size(); ++m) F(m) *= M(-kappa(m));
    return idft(F);
}

Eigen::Index next_pow2(Eigen::Index n) {
    Eigen::Index p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace fracgreen
