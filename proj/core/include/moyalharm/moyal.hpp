#pragma once

#include "moyalharm/common.hpp"
#include "moyalharm/gaussian.hpp"
#include "moyalharm/polynomial.hpp"
#include "moyalharm/symplectic.hpp"

namespace moyalharm {

// Deformation context for a (metric, symplectic, theta) triple.
//
// wedge is the real antisymmetric matrix M with y ^ z = y^T M z
// (M = (2/theta) G Sigma^{-1} G), and poisson is the coordinate commutator
// tensor P with [x_mu, x_nu] = i P_{mu nu}. The global sign of
// P = +- theta G^{-1} Sigma G^{-1} is not trusted from algebra: the
// constructor calibrates it against the integral engine by extrapolating the
// mollified first moments exp(-eps x^2 + s x_mu) * exp(-eps x^2 + t x_nu)
// to eps -> 0 and throws NumericalError if the comparison is not decisive.
struct MoyalContext {
  Metric g;
  SymplecticStructure sigma;
  double theta;
  Mat wedge;
  Mat poisson;
  int calibrated_sign;
  double normalization;  // det(G)^2 / ((pi theta)^D |det Sigma|)

  MoyalContext(Metric g_in, SymplecticStructure sigma_in, double theta_in);

  static MoyalContext standard(int dim, double theta);
};

// Closed form of the deformed product of two absolutely integrable Gaussian
// functions: the shifted-argument double Gaussian integral over (y, z) is
// carried out by the Schur complement with the evaluation point symbolic.
GaussianFunction star_gaussian(const MoyalContext& ctx, const GaussianFunction& a,
                               const GaussianFunction& b);

// One-shot triple product through the single (y, z) integral with arguments
// (x+y, x+z, x-y+z); used to cross-check iterated associativity.
GaussianFunction star_triple_oneshot(const MoyalContext& ctx, const GaussianFunction& a,
                                     const GaussianFunction& b,
                                     const GaussianFunction& c);

// Terminating bidifferential series for polynomials:
//   a * b = sum_k (1/k!) (i/2)^k P^{x k} (d^k a)(d^k b),
// truncating at min(deg a, deg b).
PolynomialFunction star_polynomial(const MoyalContext& ctx, const PolynomialFunction& a,
                                   const PolynomialFunction& b);

// Coordinate commutator [x_mu, x_nu] computed through the polynomial engine,
// as a matrix of the i-coefficients; equals poisson by construction.
Mat commutator_matrix(const MoyalContext& ctx);

// |int(a*b) - int(a b)| / |int(a b)|.
double check_tracial(const MoyalContext& ctx, const GaussianFunction& a,
                     const GaussianFunction& b);

// Max residual of (a*b)*c vs a*(b*c) over a deterministic low-discrepancy
// sample of [-2,2]^D, normalized by the largest sample magnitude; also
// cross-checks the one-shot triple product at the origin.
double check_associativity(const MoyalContext& ctx, const GaussianFunction& a,
                           const GaussianFunction& b, const GaussianFunction& c);

struct DerivationResiduals {
  double leibniz;
  double commutator;
  double anticommutator;
};

// Residuals (max coefficient magnitude, normalized by the polynomial scale)
// of the three structural identities: the partial derivative Leibniz rule
// (with partner b = a), [xt_mu, a] = 2i d_mu a and {xt_mu, a} = 2 xt_mu a,
// where xt = M x is the wedge-dual coordinate.
DerivationResiduals check_derivation_relations(const MoyalContext& ctx,
                                               const PolynomialFunction& a);

}  // namespace moyalharm
