#include "moyalharm/action.hpp"

#include <cmath>

namespace moyalharm {

ModelParams::ModelParams(Metric g_in, SymplecticStructure sigma_in, double theta_in,
                         double omega_in, double mass2_in, double lambda_in)
    : g(std::move(g_in)), sigma(std::move(sigma_in)), theta(theta_in), omega(omega_in),
      mass2(mass2_in), lambda(lambda_in), omega_tilde(2.0 * omega_in / theta_in),
      context(g, sigma, theta_in), adapted(is_adapted(sigma, g)) {
  require(theta > 0.0, "ModelParams: theta must be positive");
  require(omega >= 0.0 && omega <= 1.0, "ModelParams: omega must lie in [0, 1]");
  require(mass2 >= 0.0, "ModelParams: mass2 must be non-negative");
}

ModelParams ModelParams::standard_like() const {
  StandardPair std_pair = standard_structures(g.dim);
  return ModelParams(std_pair.metric, std_pair.sigma, theta, omega, mass2, lambda);
}

FieldConfig::FieldConfig(GaussianFunction phi_in) : phi(std::move(phi_in)) {
  double imag = phi.a.imag().cwiseAbs().maxCoeff() + phi.b.imag().cwiseAbs().maxCoeff() +
                std::abs(phi.c.imag());
  require(imag < 1e-12, "FieldConfig: field must be real");
  require(phi.is_integrable(), "FieldConfig: Re(A) must be positive definite");
}

FieldConfig::FieldConfig(const Mat& a, const Vec& b, double c)
    : FieldConfig(GaussianFunction(a.cast<Complex>(), b.cast<Complex>(), c)) {}

ActionTerms action_terms(const ModelParams& params, const FieldConfig& field) {
  const int d = params.g.dim;
  const GaussianFunction& phi = field.phi;
  require(phi.dim == d, "action_terms: field dimension mismatch");

  QuadraticIntegrand phi2 = QuadraticIntegrand::from_gaussian(multiply(phi, phi));

  // d_mu phi = q_mu(x) phi with q_mu = -2 (A x)_mu + b_mu.
  std::vector<PolynomialFunction> q;
  q.reserve(d);
  for (int mu = 0; mu < d; ++mu) {
    CVec coeffs = -2.0 * phi.a.row(mu).transpose();
    PolynomialFunction p = PolynomialFunction::linear_form(coeffs);
    p.add_term(PolynomialFunction::MultiIndex(d, 0), phi.b(mu));
    q.push_back(p);
  }
  PolynomialFunction kin(d);
  for (int mu = 0; mu < d; ++mu)
    for (int nu = 0; nu < d; ++nu) {
      double w = params.g.g_inv(mu, nu);
      if (w == 0.0) continue;
      kin = kin + q[mu] * q[nu] * Complex(0.5 * w);
    }
  double kinetic = gaussian_moment_integral(kin, phi2).real();

  // xt G^{-1} xt = x^T (M^T G^{-1} M) x; positive semidefinite for any sigma.
  Mat h = params.context.wedge.transpose() * params.g.g_inv * params.context.wedge;
  PolynomialFunction harm(d);
  for (int mu = 0; mu < d; ++mu)
    for (int nu = 0; nu < d; ++nu) {
      if (h(mu, nu) == 0.0) continue;
      PolynomialFunction::MultiIndex idx(d, 0);
      idx[mu] += 1;
      idx[nu] += 1;
      harm.add_term(idx, 0.5 * params.omega * params.omega * h(mu, nu));
    }
  double harmonic = gaussian_moment_integral(harm, phi2).real();

  double mass = 0.5 * params.mass2 * gaussian_integral(phi2).real();

  double quartic = 0.0;
  if (params.lambda != 0.0) {
    // int phi*phi*phi*phi = int (phi*phi) (phi*phi) by associativity and the
    // tracial identity.
    GaussianFunction s = star_gaussian(params.context, phi, phi);
    quartic = params.lambda * integrate(multiply(s, s)).real();
  }
  return {kinetic, harmonic, mass, quartic};
}

double action_value(const ModelParams& params, const FieldConfig& field) {
  return action_terms(params, field).total();
}

FieldConfig transform_field(const OrthogonalMap& map, const FieldConfig& field) {
  Mat lam_inv = map.lambda.inverse();
  CMat a = lam_inv.transpose().cast<Complex>() * field.phi.a * lam_inv.cast<Complex>();
  CVec b = lam_inv.transpose().cast<Complex>() * field.phi.b;
  return FieldConfig(GaussianFunction(0.5 * (a + CMat(a.transpose())), b, field.phi.c));
}

double check_classical_invariance(const ModelParams& params, const FieldConfig& field,
                                  const OrthogonalMap& map) {
  double base = action_value(params, field);
  ModelParams transformed(params.g, orthogonal_action(map, params.sigma), params.theta,
                          params.omega, params.mass2, params.lambda);
  double moved = action_value(transformed, transform_field(map, field));
  return std::abs(moved - base) / std::max(std::abs(base), 1e-300);
}

}  // namespace moyalharm
