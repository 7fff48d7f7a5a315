#pragma once

#include "moyalharm/moyal.hpp"

namespace moyalharm {

// Model data for the scalar theory with confining harmonic term. The pair
// (g, sigma) need not be adapted for classical-action evaluation; the
// propagator and graph machinery check adaptedness themselves.
struct ModelParams {
  Metric g;
  SymplecticStructure sigma;
  double theta;
  double omega;   // in [0, 1]; must be > 0 for propagator and graphs
  double mass2;
  double lambda;
  double omega_tilde;  // 2 omega / theta
  MoyalContext context;
  bool adapted;

  ModelParams(Metric g_in, SymplecticStructure sigma_in, double theta_in,
              double omega_in, double mass2_in, double lambda_in);

  // Same couplings over the standard pair in the same dimension.
  ModelParams standard_like() const;
};

// Real Gaussian field configuration phi = c exp(-x^T A x + b^T x) with
// positive definite A.
struct FieldConfig {
  GaussianFunction phi;

  explicit FieldConfig(GaussianFunction phi_in);
  FieldConfig(const Mat& a, const Vec& b, double c);
};

struct ActionTerms {
  double kinetic;
  double harmonic;
  double mass;
  double quartic;
  double total() const { return kinetic + harmonic + mass + quartic; }
};

// S = int( 1/2 G^{-1} d phi d phi + omega^2/2 G^{-1} xt xt phi^2
//          + m^2/2 phi^2 + lambda phi*phi*phi*phi ),
// with xt = M x. Derivative terms reduce to Gaussian moments; the quartic
// uses two closed-form star products and the tracial identity.
ActionTerms action_terms(const ModelParams& params, const FieldConfig& field);
double action_value(const ModelParams& params, const FieldConfig& field);

// phi^Lambda(x) = phi(Lambda^{-1} x).
FieldConfig transform_field(const OrthogonalMap& map, const FieldConfig& field);

// Relative residual of S_{G, Lambda Sigma^{-1} Lambda^T}(phi^Lambda) against
// S_{G, Sigma^{-1}}(phi).
double check_classical_invariance(const ModelParams& params, const FieldConfig& field,
                                  const OrthogonalMap& map);

}  // namespace moyalharm
