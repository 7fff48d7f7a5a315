#include "moyalharm/propagator.hpp"

#include <cmath>

namespace moyalharm {

CutoffSpec::CutoffSpec(double epsilon_in, double alpha_max_in, double rel_tol_in)
    : epsilon(epsilon_in), alpha_max(alpha_max_in), rel_tol(rel_tol_in) {
  require(epsilon > 0.0 && epsilon < alpha_max,
          "CutoffSpec: need 0 < epsilon < alpha_max");
  require(rel_tol > 0.0, "CutoffSpec: tolerance must be positive");
}

MehlerKernel::MehlerKernel(Metric g_in, double omega_in, double theta_in, double mass2_in)
    : g(std::move(g_in)), omega(omega_in), theta(theta_in), mass2(mass2_in),
      omega_tilde(2.0 * omega_in / theta_in) {
  require(omega > 0.0, "MehlerKernel: omega must be positive");
  require(theta > 0.0, "MehlerKernel: theta must be positive");
  require(mass2 >= 0.0, "MehlerKernel: mass2 must be non-negative");
}

MehlerKernel::MehlerKernel(const ModelParams& params)
    : MehlerKernel(params.g, params.omega, params.theta, params.mass2) {
  if (!params.adapted)
    throw NotAdapted("MehlerKernel: the pair must be adapted; the harmonic "
                     "potential reduces to the metric form only then");
}

double kernel_at(const MehlerKernel& k, const Vec& x, const Vec& y, double alpha) {
  require(x.size() == k.g.dim && y.size() == k.g.dim, "kernel_at: size mismatch");
  require(alpha > 0.0, "kernel_at: alpha must be positive");
  Vec diff = x - y, sum = x + y;
  double th = std::tanh(0.5 * alpha);
  double expo = -(k.omega_tilde / 4.0) *
                ((diff.dot(k.g.g * diff)) / th + th * (sum.dot(k.g.g * sum)));
  return std::exp(expo);
}

namespace {

double line_prefactor(const MehlerKernel& k) {
  const int d = k.g.dim;
  return k.theta * std::sqrt(k.g.g.determinant()) / (4.0 * k.omega) *
         std::pow(k.omega / (M_PI * k.theta), 0.5 * d);
}

double alpha_weight(const MehlerKernel& k, double alpha) {
  const double d = static_cast<double>(k.g.dim);
  return std::pow(std::sinh(alpha), -0.5 * d) *
         std::exp(-k.mass2 * alpha / (2.0 * k.omega_tilde));
}

}  // namespace

PropagatorValue propagator_value(const MehlerKernel& k, const Vec& x, const Vec& y,
                                 const CutoffSpec& cutoff) {
  require(x.size() == k.g.dim && y.size() == k.g.dim, "propagator_value: size mismatch");
  if (k.mass2 == 0.0 && x.norm() + y.norm() < 1e-14)
    throw InvalidInput("propagator_value: massless kernel at coincident origin "
                       "arguments has no damping at large alpha");
  QuadratureOptions opt;
  opt.rel_tol = cutoff.rel_tol;
  opt.abs_tol = std::min(opt.abs_tol, cutoff.rel_tol);
  std::function<double(double)> f = [&](double a) {
    return alpha_weight(k, a) * kernel_at(k, x, y, a);
  };
  auto est = integrate_exp_mapped(f, cutoff.epsilon, cutoff.alpha_max - cutoff.epsilon,
                                  opt);
  double pref = line_prefactor(k);
  return {pref * est.value, pref * est.abs_error};
}

std::vector<double> check_green_property(const MehlerKernel& k,
                                         const GaussianFunction& testfn, const Vec& x0,
                                         const std::vector<double>& epsilons,
                                         std::optional<double> omega_op) {
  const int d = k.g.dim;
  require(testfn.dim == d && x0.size() == d, "check_green_property: size mismatch");
  require(testfn.is_integrable(), "check_green_property: test function must decay");

  const double ot_op = 2.0 * omega_op.value_or(k.omega) / k.theta;

  // (O f)(y) = p(y) f(y) with
  // p = -sum G^{-1}_{mn} [q_m q_n - 2 A_{mn}] + ot_op^2 y G y + m^2,
  // q_m = -2 (A y)_m + b_m.
  std::vector<PolynomialFunction> q;
  q.reserve(d);
  for (int mu = 0; mu < d; ++mu) {
    PolynomialFunction p = PolynomialFunction::linear_form(CVec(-2.0 * testfn.a.row(mu).transpose()));
    p.add_term(PolynomialFunction::MultiIndex(d, 0), testfn.b(mu));
    q.push_back(p);
  }
  PolynomialFunction op_poly(d);
  Complex trace_term = 0.0;
  for (int mu = 0; mu < d; ++mu)
    for (int nu = 0; nu < d; ++nu) {
      double w = k.g.g_inv(mu, nu);
      if (w == 0.0) continue;
      op_poly = op_poly - q[mu] * q[nu] * Complex(w);
      trace_term += 2.0 * w * testfn.a(mu, nu);
    }
  op_poly.add_term(PolynomialFunction::MultiIndex(d, 0), trace_term + k.mass2);
  for (int mu = 0; mu < d; ++mu)
    for (int nu = 0; nu < d; ++nu) {
      if (k.g.g(mu, nu) == 0.0) continue;
      PolynomialFunction::MultiIndex idx(d, 0);
      idx[mu] += 1;
      idx[nu] += 1;
      op_poly.add_term(idx, ot_op * ot_op * k.g.g(mu, nu));
    }

  const double ot = k.omega_tilde;
  auto inner = [&](double alpha) {
    // Kernel as a Gaussian in y at fixed alpha, times (O f)(y).
    double th = std::tanh(0.5 * alpha);
    double ch = 1.0 / th;
    CMat a_k = (ot / 4.0) * (ch + th) * k.g.g.cast<Complex>();
    CVec b_k = (ot / 2.0) * (ch - th) * (k.g.g * x0).cast<Complex>();
    Complex c_k = std::exp(-(ot / 4.0) * (ch + th) * x0.dot(k.g.g * x0));
    GaussianFunction kernel_y(a_k, b_k, c_k);
    QuadraticIntegrand joint =
        QuadraticIntegrand::from_gaussian(multiply(kernel_y, testfn));
    return gaussian_moment_integral(op_poly, joint);
  };

  double pref = line_prefactor(k);
  QuadratureOptions opt;
  opt.rel_tol = 1e-10;
  std::vector<double> residuals;
  residuals.reserve(epsilons.size());
  for (double eps : epsilons) {
    require(eps > 0.0, "check_green_property: epsilon must be positive");
    std::function<Complex(double)> f = [&](double a) {
      return alpha_weight(k, a) * inner(a);
    };
    auto est = integrate_exp_mapped(f, eps, 40.0 - eps, opt);
    Complex applied = pref * est.value;
    Complex expected = testfn.evaluate(CVec(x0.cast<Complex>()));
    residuals.push_back(std::abs(applied - expected));
  }
  return residuals;
}

}  // namespace moyalharm
