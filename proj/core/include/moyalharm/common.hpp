#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace moyalharm {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Thrown when matrix shapes or parameter domains are invalid.
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown when a Gaussian integral has a non positive definite real part.
struct DivergentIntegral : std::runtime_error {
  double offending_eigenvalue;
  explicit DivergentIntegral(const std::string& what, double eig)
      : std::runtime_error(what), offending_eigenvalue(eig) {}
};

// Thrown when a (metric, symplectic) pair is required to be adapted but is not.
struct NotAdapted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when adaptive quadrature cannot reach the requested tolerance.
struct QuadratureFailure : std::runtime_error {
  double achieved_error;
  explicit QuadratureFailure(const std::string& what, double err)
      : std::runtime_error(what), achieved_error(err) {}
};

// Thrown when an internal numerical consistency check fails (e.g. a
// decomposition residual above tolerance, or an undecidable calibration).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw InvalidInput(msg);
}

// Max-abs residual between two matrices, used by all verification helpers.
inline double max_abs_diff(const Mat& a, const Mat& b) {
  return (a - b).cwiseAbs().maxCoeff();
}
inline double max_abs_diff(const CMat& a, const CMat& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace moyalharm
