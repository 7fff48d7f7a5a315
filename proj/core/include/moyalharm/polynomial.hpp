#pragma once

#include <map>
#include <vector>

#include "moyalharm/common.hpp"
#include "moyalharm/gaussian.hpp"

namespace moyalharm {

// Sparse polynomial in `dim` variables with complex coefficients, keyed by
// exponent multi-index. The map ordering makes arithmetic deterministic.
class PolynomialFunction {
 public:
  using MultiIndex = std::vector<int>;
  using TermMap = std::map<MultiIndex, Complex>;

  explicit PolynomialFunction(int dim);

  static PolynomialFunction constant(int dim, Complex value);
  static PolynomialFunction coordinate(int dim, int axis);
  // Linear form v . x.
  static PolynomialFunction linear_form(const CVec& v);

  int dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int total_degree() const;

  void add_term(const MultiIndex& idx, Complex coeff);

  PolynomialFunction operator+(const PolynomialFunction& o) const;
  PolynomialFunction operator-(const PolynomialFunction& o) const;
  PolynomialFunction operator*(const PolynomialFunction& o) const;
  PolynomialFunction operator*(Complex s) const;

  PolynomialFunction derivative(int axis) const;

  Complex evaluate(const CVec& x) const;

  // Largest coefficient magnitude of the difference, the residual measure
  // used by the verification helpers.
  double max_coeff_diff(const PolynomialFunction& o) const;
  double max_coeff_abs() const;

 private:
  int dim_;
  TermMap terms_;
};

inline PolynomialFunction operator*(Complex s, const PolynomialFunction& p) {
  return p * s;
}

// Integral of p(x) * integrand(x) over R^dim, by reducing the polynomial to
// Gaussian moments of the measure defined by the integrand (mean Q^{-1} L,
// covariance Q^{-1}, the standard recursion for moments). Valid for complex
// symmetric Q with Re(Q) positive definite.
Complex gaussian_moment_integral(const PolynomialFunction& p,
                                 const QuadraticIntegrand& integrand);

}  // namespace moyalharm
