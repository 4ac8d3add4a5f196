#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace fracgreen {

using Complex = std::complex<double>;

template <class Scalar_, int Rows_ = Eigen::Dynamic>
using vec_type = Eigen::Matrix<Scalar_, Rows_, 1>;

template <class Scalar_, int Rows_ = Eigen::Dynamic, int Cols_ = Eigen::Dynamic>
using mat_type = Eigen::Matrix<Scalar_, Rows_, Cols_, Eigen::RowMajor>;

using VectorXr = vec_type<double>;
using VectorXc = vec_type<Complex>;
using MatrixXc = mat_type<Complex>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

// Error hierarchy. Every numerical routine either returns finite values or
// throws one of these.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument at a pole of a meromorphic function (e.g. Gamma at -n).
class PoleError : public Error {
public:
    using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Parameter-constraint violations; carries one message per violated inequality.
class ConstraintError : public Error {
public:
    explicit ConstraintError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

// Green kind not available in the parameter regime (e.g. G2 with alpha <= 1).
class RegimeError : public Error {
public:
    using Error::Error;
};

// Real-space evaluation requested for a kernel whose Fourier integrand does
// not decay (purely imaginary lambda and friends).
class FourierOnlyError : public Error {
public:
    using Error::Error;
};

// A numerical method failed its own accuracy estimate.
class ToleranceError : public Error {
public:
    using Error::Error;
};

inline ConstraintError::ConstraintError(std::vector<std::string> violations)
    : Error([&] {
          std::string msg = "constraint violation";
          for (const auto& v : violations) msg += "; " + v;
          return msg;
      }()),
      violations_(std::move(violations)) {}

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace fracgreen
