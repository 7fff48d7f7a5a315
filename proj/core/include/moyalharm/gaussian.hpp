#pragma once

#include <vector>

#include "moyalharm/common.hpp"

namespace moyalharm {

// f(u) = c * exp(-u^T A u + b^T u) with A complex symmetric.
struct GaussianFunction {
  int dim;
  CMat a;
  CVec b;
  Complex c;

  GaussianFunction(CMat a_in, CVec b_in, Complex c_in);

  // Real centered isotropic exp(-s x^2), convenience for tests and checks.
  static GaussianFunction isotropic(int dim, double s, Complex c = 1.0);

  Complex evaluate(const CVec& x) const;
  Complex evaluate(const Vec& x) const;

  // Absolutely integrable iff Re(A) is positive definite.
  bool is_integrable(double tol = 0.0) const;
};

// prefactor * exp(-1/2 u^T Q u + L^T u); the half convention matches the
// standard multivariate Gaussian integral formula.
struct QuadraticIntegrand {
  int dim;
  CMat q;
  CVec l;
  Complex prefactor;

  QuadraticIntegrand(CMat q_in, CVec l_in, Complex prefactor_in);

  static QuadraticIntegrand from_gaussian(const GaussianFunction& f);
  GaussianFunction to_gaussian() const;

  Complex evaluate(const CVec& x) const;
};

// Pointwise product; exponents add, prefactors multiply.
GaussianFunction multiply(const GaussianFunction& f, const GaussianFunction& g);

// prefactor * (2 pi)^{k/2} det(Q)^{-1/2} exp(1/2 L^T Q^{-1} L).
//
// det(Q)^{-1/2} is taken on the branch continuous from real positive
// definite Q: the product of the principal inverse square roots of the
// individual eigenvalues, each of which has positive real part whenever
// Re(Q) is positive definite. Throws DivergentIntegral if Re(Q) is not
// positive definite (eigenvalue check, relative tolerance 1e-12).
Complex gaussian_integral(const QuadraticIntegrand& q);

// Full-space integral of a Gaussian function.
Complex integrate(const GaussianFunction& f);

// Integrates out the variables listed in `integrated` (0-based, strictly
// increasing) via the Schur complement, returning the marginal integrand in
// the remaining variables:
//   Q' = Q_vv - Q_vu Q_uu^{-1} Q_uv,  L' = L_v - Q_vu Q_uu^{-1} L_u,
//   prefactor *= (2 pi)^{|u|/2} det(Q_uu)^{-1/2} exp(1/2 L_u^T Q_uu^{-1} L_u).
// Only Re(Q_uu) must be positive definite.
QuadraticIntegrand partial_gaussian_integral(const QuadraticIntegrand& q,
                                             const std::vector<int>& integrated);

// Accumulates exponent terms built from affine expressions u = T xi + d of a
// common variable vector xi, producing a QuadraticIntegrand over xi. This is
// the assembly point for star products, vertex phases and graph integrands.
class ExponentBuilder {
 public:
  explicit ExponentBuilder(int dim);

  // exponent += -(T xi + d)^T A (T xi + d) + b^T (T xi + d); coeff *= c.
  void add_gaussian(const GaussianFunction& g, const CMat& t, const CVec& d);

  // exponent += (T1 xi + d1)^T W (T2 xi + d2).
  void add_bilinear(const CMat& w, const CMat& t1, const CVec& d1, const CMat& t2,
                    const CVec& d2);

  void add_constant(Complex exponent_shift) { cconst_ += exponent_shift; }
  void multiply_prefactor(Complex factor) { coeff_ *= factor; }

  QuadraticIntegrand build() const;

 private:
  int dim_;
  CMat h_;
  CVec l_;
  Complex cconst_;
  Complex coeff_;
};

}  // namespace moyalharm
