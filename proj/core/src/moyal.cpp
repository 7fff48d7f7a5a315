#include "moyalharm/moyal.hpp"

#include <cmath>

namespace moyalharm {

namespace {

constexpr Complex kImag{0.0, 1.0};

double min_real_eigenvalue(const CMat& a) {
  Mat re = a.real();
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (re + Mat(re.transpose())));
  return es.eigenvalues().minCoeff();
}

void require_integrable(const GaussianFunction& f, const char* who) {
  double lo = min_real_eigenvalue(f.a);
  if (lo <= 0.0)
    throw DivergentIntegral(std::string(who) +
                                ": factor is not absolutely integrable, Re(A) min "
                                "eigenvalue " + std::to_string(lo),
                            lo);
}

// Mollified first-moment cross derivative
//   d^2/ds dt (e^{-eps x^2 + s x_mu} * e^{-eps x^2 + t x_nu})(0)
// evaluated exactly from the closed form: C0(eps) (Q_eps^{-1})_{(y mu),(z nu)}.
Complex mollified_first_moment(const MoyalContext& ctx, double eps, int mu, int nu) {
  const int d = ctx.g.dim;
  CMat q = CMat::Zero(2 * d, 2 * d);
  q.topLeftCorner(d, d) = 2.0 * eps * CMat::Identity(d, d);
  q.bottomRightCorner(d, d) = 2.0 * eps * CMat::Identity(d, d);
  q.topRightCorner(d, d) = kImag * ctx.wedge.cast<Complex>();
  q.bottomLeftCorner(d, d) = kImag * ctx.wedge.transpose().cast<Complex>();
  Complex c0 = gaussian_integral(
      QuadraticIntegrand(q, CVec::Zero(2 * d), ctx.normalization));
  Eigen::FullPivLU<CMat> lu(q);
  CMat qinv = lu.inverse();
  return c0 * qinv(mu, d + nu);
}

}  // namespace

MoyalContext::MoyalContext(Metric g_in, SymplecticStructure sigma_in, double theta_in)
    : g(std::move(g_in)), sigma(std::move(sigma_in)), theta(theta_in) {
  require(g.dim == sigma.dim, "MoyalContext: dimension mismatch");
  require(theta > 0.0, "MoyalContext: theta must be positive");
  const int d = g.dim;
  wedge = (2.0 / theta) * g.g * sigma.sigma_inv * g.g;
  wedge = 0.5 * (wedge - Mat(wedge.transpose()));
  double det_g = g.g.determinant();
  double det_sigma = std::abs(sigma.sigma.determinant());
  normalization = det_g * det_g / (std::pow(M_PI * theta, d) * det_sigma);

  Mat p_candidate = theta * g.g_inv * sigma.sigma * g.g_inv;
  p_candidate = 0.5 * (p_candidate - Mat(p_candidate.transpose()));

  int mu = 0, nu = 1;
  double best = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (std::abs(p_candidate(i, j)) > best) {
        best = std::abs(p_candidate(i, j));
        mu = i;
        nu = j;
      }
  require(best > 0.0, "MoyalContext: degenerate commutator candidate");

  const double e1 = 1e-2, e2 = 1e-3;
  Complex m1 = mollified_first_moment(*this, e1, mu, nu);
  Complex m2 = mollified_first_moment(*this, e2, mu, nu);
  Complex extrap = (e1 * m2 - e2 * m1) / (e1 - e2);
  Complex target_plus = 0.5 * kImag * p_candidate(mu, nu);
  double dev_plus = std::abs(extrap - target_plus);
  double dev_minus = std::abs(extrap + target_plus);
  if (dev_plus < 0.2 * dev_minus) {
    calibrated_sign = 1;
  } else if (dev_minus < 0.2 * dev_plus) {
    calibrated_sign = -1;
  } else {
    throw NumericalError(
        "MoyalContext: commutator sign calibration undecidable, deviations " +
        std::to_string(dev_plus) + " / " + std::to_string(dev_minus));
  }
  poisson = calibrated_sign * p_candidate;
}

MoyalContext MoyalContext::standard(int dim, double theta) {
  StandardPair std_pair = standard_structures(dim);
  return MoyalContext(std_pair.metric, std_pair.sigma, theta);
}

GaussianFunction star_gaussian(const MoyalContext& ctx, const GaussianFunction& a,
                               const GaussianFunction& b) {
  const int d = ctx.g.dim;
  require(a.dim == d && b.dim == d, "star_gaussian: dimension mismatch");
  require_integrable(a, "star_gaussian");
  require_integrable(b, "star_gaussian");

  // Variables xi = (y, z, x); integrate (y, z), keep x symbolic.
  CMat ty(d, 3 * d), tz(d, 3 * d), tx_plus_y(d, 3 * d), tx_plus_z(d, 3 * d);
  ty << CMat::Identity(d, d), CMat::Zero(d, d), CMat::Zero(d, d);
  tz << CMat::Zero(d, d), CMat::Identity(d, d), CMat::Zero(d, d);
  tx_plus_y << CMat::Identity(d, d), CMat::Zero(d, d), CMat::Identity(d, d);
  tx_plus_z << CMat::Zero(d, d), CMat::Identity(d, d), CMat::Identity(d, d);
  CVec zero = CVec::Zero(d);

  ExponentBuilder builder(3 * d);
  builder.add_gaussian(a, tx_plus_y, zero);
  builder.add_gaussian(b, tx_plus_z, zero);
  builder.add_bilinear(-kImag * ctx.wedge.cast<Complex>(), ty, zero, tz, zero);
  builder.multiply_prefactor(ctx.normalization);

  std::vector<int> yz(2 * d);
  for (int i = 0; i < 2 * d; ++i) yz[i] = i;
  return partial_gaussian_integral(builder.build(), yz).to_gaussian();
}

GaussianFunction star_triple_oneshot(const MoyalContext& ctx, const GaussianFunction& a,
                                     const GaussianFunction& b,
                                     const GaussianFunction& c) {
  const int d = ctx.g.dim;
  require(a.dim == d && b.dim == d && c.dim == d,
          "star_triple_oneshot: dimension mismatch");
  require_integrable(a, "star_triple_oneshot");
  require_integrable(b, "star_triple_oneshot");
  require_integrable(c, "star_triple_oneshot");

  CMat ty(d, 3 * d), tz(d, 3 * d), t1(d, 3 * d), t2(d, 3 * d), t3(d, 3 * d);
  CMat id = CMat::Identity(d, d), z0 = CMat::Zero(d, d);
  ty << id, z0, z0;
  tz << z0, id, z0;
  t1 << id, z0, id;       // x + y
  t2 << z0, id, id;       // x + z
  t3 << -id, id, id;      // x - y + z
  CVec zero = CVec::Zero(d);

  ExponentBuilder builder(3 * d);
  builder.add_gaussian(a, t1, zero);
  builder.add_gaussian(b, t2, zero);
  builder.add_gaussian(c, t3, zero);
  builder.add_bilinear(-kImag * ctx.wedge.cast<Complex>(), ty, zero, tz, zero);
  builder.multiply_prefactor(ctx.normalization);

  std::vector<int> yz(2 * d);
  for (int i = 0; i < 2 * d; ++i) yz[i] = i;
  return partial_gaussian_integral(builder.build(), yz).to_gaussian();
}

PolynomialFunction star_polynomial(const MoyalContext& ctx, const PolynomialFunction& a,
                                   const PolynomialFunction& b) {
  const int d = ctx.g.dim;
  require(a.dim() == d && b.dim() == d, "star_polynomial: dimension mismatch");

  // Doubled variables (x, x'); F_0 = a(x) b(x'), then repeatedly apply
  // sum_{mu nu} P_{mu nu} d_{x_mu} d_{x'_nu} and restrict to the diagonal.
  PolynomialFunction f(2 * d);
  for (const auto& [ia, ca] : a.terms())
    for (const auto& [ib, cb] : b.terms()) {
      PolynomialFunction::MultiIndex idx(2 * d, 0);
      for (int k = 0; k < d; ++k) {
        idx[k] = ia[k];
        idx[d + k] = ib[k];
      }
      f.add_term(idx, ca * cb);
    }

  const int kmax = std::min(a.total_degree(), b.total_degree());
  PolynomialFunction out(d);
  Complex coeff = 1.0;
  for (int k = 0;; ++k) {
    for (const auto& [idx, c] : f.terms()) {
      PolynomialFunction::MultiIndex collapsed(d, 0);
      for (int t = 0; t < d; ++t) collapsed[t] = idx[t] + idx[d + t];
      out.add_term(collapsed, coeff * c);
    }
    if (k == kmax || f.empty()) break;
    PolynomialFunction next(2 * d);
    for (int mu = 0; mu < d; ++mu)
      for (int nu = 0; nu < d; ++nu) {
        double p = ctx.poisson(mu, nu);
        if (p == 0.0) continue;
        next = next + f.derivative(mu).derivative(d + nu) * Complex(p, 0.0);
      }
    f = next;
    coeff *= 0.5 * kImag / static_cast<double>(k + 1);
  }
  return out;
}

Mat commutator_matrix(const MoyalContext& ctx) {
  const int d = ctx.g.dim;
  Mat out = Mat::Zero(d, d);
  for (int mu = 0; mu < d; ++mu)
    for (int nu = 0; nu < d; ++nu) {
      PolynomialFunction xm = PolynomialFunction::coordinate(d, mu);
      PolynomialFunction xn = PolynomialFunction::coordinate(d, nu);
      PolynomialFunction comm =
          star_polynomial(ctx, xm, xn) - star_polynomial(ctx, xn, xm);
      PolynomialFunction::MultiIndex zero(d, 0);
      auto it = comm.terms().find(zero);
      Complex v = (it == comm.terms().end()) ? Complex(0.0) : it->second;
      out(mu, nu) = v.imag();
    }
  return out;
}

double check_tracial(const MoyalContext& ctx, const GaussianFunction& a,
                     const GaussianFunction& b) {
  Complex lhs = integrate(star_gaussian(ctx, a, b));
  Complex rhs = integrate(multiply(a, b));
  return std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
}

double check_associativity(const MoyalContext& ctx, const GaussianFunction& a,
                           const GaussianFunction& b, const GaussianFunction& c) {
  const int d = ctx.g.dim;
  GaussianFunction left = star_gaussian(ctx, star_gaussian(ctx, a, b), c);
  GaussianFunction right = star_gaussian(ctx, a, star_gaussian(ctx, b, c));
  GaussianFunction oneshot = star_triple_oneshot(ctx, a, b, c);

  double worst = 0.0, scale = 0.0;
  for (const Vec& x : halton_points(d, 10, -2.0, 2.0)) {
    Complex l = left.evaluate(x);
    Complex r = right.evaluate(x);
    worst = std::max(worst, std::abs(l - r));
    scale = std::max({scale, std::abs(l), std::abs(r)});
  }
  CVec origin = CVec::Zero(d);
  double at0 = std::abs(left.evaluate(origin) - oneshot.evaluate(origin));
  worst = std::max(worst, at0);
  scale = std::max(scale, std::abs(left.evaluate(origin)));
  return worst / std::max(scale, 1e-300);
}

DerivationResiduals check_derivation_relations(const MoyalContext& ctx,
                                               const PolynomialFunction& a) {
  const int d = ctx.g.dim;
  require(a.dim() == d, "check_derivation_relations: dimension mismatch");
  const double scale = std::max(a.max_coeff_abs(), 1.0);
  DerivationResiduals out{0.0, 0.0, 0.0};

  const PolynomialFunction& b = a;
  PolynomialFunction ab = star_polynomial(ctx, a, b);
  for (int mu = 0; mu < d; ++mu) {
    PolynomialFunction lhs = ab.derivative(mu);
    PolynomialFunction rhs = star_polynomial(ctx, a.derivative(mu), b) +
                             star_polynomial(ctx, a, b.derivative(mu));
    out.leibniz = std::max(out.leibniz, lhs.max_coeff_diff(rhs) / scale);
  }

  for (int mu = 0; mu < d; ++mu) {
    PolynomialFunction xt =
        PolynomialFunction::linear_form(ctx.wedge.row(mu).transpose().cast<Complex>());
    PolynomialFunction xa = star_polynomial(ctx, xt, a);
    PolynomialFunction ax = star_polynomial(ctx, a, xt);
    PolynomialFunction comm_target = a.derivative(mu) * (2.0 * kImag);
    PolynomialFunction anti_target = (xt * a) * Complex(2.0);
    out.commutator =
        std::max(out.commutator, (xa - ax).max_coeff_diff(comm_target) / scale);
    out.anticommutator =
        std::max(out.anticommutator, (xa + ax).max_coeff_diff(anti_target) / scale);
  }
  return out;
}

}  // namespace moyalharm
