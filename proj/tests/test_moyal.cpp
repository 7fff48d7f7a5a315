#include <cmath>

#include "doctest.h"
#include "moyalharm/moyal.hpp"
#include "oracles.hpp"

using namespace moyalharm;

namespace {

// Direct evaluation of the defining double integral over (y, z) by tensor
// Gauss-Legendre on a box, bypassing the closed-form engine entirely.
Complex star_brute_force(const MoyalContext& ctx, const GaussianFunction& a,
                         const GaussianFunction& b, const Vec& x, double box,
                         int n) {
  const int d = ctx.g.dim;
  CVec shift = x.cast<Complex>();
  std::function<Complex(const Vec&)> f = [&](const Vec& u) {
    CVec y = u.head(d).cast<Complex>();
    CVec z = u.tail(d).cast<Complex>();
    double phase = u.head(d).dot(ctx.wedge * u.tail(d));
    return a.evaluate(CVec(shift + y)) * b.evaluate(CVec(shift + z)) *
           std::exp(Complex(0.0, -phase));
  };
  return ctx.normalization * oracle::tensor_gl_box(f, 2 * d, -box, box, n);
}

GaussianFunction mixed_gaussian(const CMat& a, const CVec& b, Complex c) {
  return GaussianFunction(a, b, c);
}

}  // namespace

TEST_CASE("context caches antisymmetric wedge and poisson tensors") {
  SeededRng rng(2);
  Metric g(random_spd_matrix(4, rng));
  SymplecticStructure sigma = random_adapted_sigma(g, rng);
  MoyalContext ctx(g, sigma, 0.8);
  CHECK(max_abs_diff(ctx.wedge, Mat(-ctx.wedge.transpose())) < 1e-12);
  CHECK(max_abs_diff(ctx.poisson, Mat(-ctx.poisson.transpose())) < 1e-12);
  Mat candidate = 0.8 * g.g_inv * sigma.sigma * g.g_inv;
  Mat scaled = ctx.calibrated_sign * candidate;
  CHECK(max_abs_diff(ctx.poisson, scaled) < 1e-12);
}

TEST_CASE("commutative limit as theta shrinks") {
  GaussianFunction a = GaussianFunction::isotropic(2, 1.0, 1.0);
  GaussianFunction b = GaussianFunction::isotropic(2, 0.7, 0.5);
  CVec origin = CVec::Zero(2);
  Complex pointwise = a.evaluate(origin) * b.evaluate(origin);
  double prev = 1e100;
  for (double theta : {1e-2, 1e-3, 1e-4}) {
    MoyalContext ctx = MoyalContext::standard(2, theta);
    Complex starred = star_gaussian(ctx, a, b).evaluate(origin);
    double dev = std::abs(starred - pointwise) / std::abs(pointwise);
    CHECK(dev < 10.0 * theta);
    CHECK(dev < prev);
    prev = dev;
  }
}

TEST_CASE("tracial identity on the textbook pair") {
  MoyalContext ctx = MoyalContext::standard(2, 1.0);
  GaussianFunction a = GaussianFunction::isotropic(2, 1.0, 1.0);
  Complex starred = integrate(star_gaussian(ctx, a, a));
  CHECK(std::abs(starred - Complex(M_PI / 2.0, 0.0)) < 1e-10);
  CHECK(check_tracial(ctx, a, a) < 1e-10);
}

TEST_CASE("closed form matches brute-force quadrature of the defining integral") {
  // Three frozen configurations; box sizes and node counts chosen so the
  // oscillatory phase is fully resolved inside the Gaussian support.
  MoyalContext std1 = MoyalContext::standard(2, 1.0);
  GaussianFunction iso = GaussianFunction::isotropic(2, 1.0, 1.0);
  Vec origin = Vec::Zero(2);
  Complex closed = star_gaussian(std1, iso, iso).evaluate(CVec(origin.cast<Complex>()));
  Complex brute = star_brute_force(std1, iso, iso, origin, 6.0, 72);
  CHECK(std::abs(closed - brute) / std::abs(closed) < 1e-6);

  CMat a2 = CMat::Zero(2, 2);
  a2 << Complex(1.3, 0.0), Complex(0.2, 0.1), Complex(0.2, 0.1), Complex(1.0, -0.1);
  CVec b2(2);
  b2 << Complex(0.4, 0.0), Complex(0.0, 0.3);
  GaussianFunction ga = mixed_gaussian(a2, b2, Complex(1.0, 0.2));
  GaussianFunction gb = GaussianFunction::isotropic(2, 0.8, 1.0);
  Vec x2(2);
  x2 << 0.2, -0.4;
  Complex closed2 = star_gaussian(std1, ga, gb).evaluate(CVec(x2.cast<Complex>()));
  Complex brute2 = star_brute_force(std1, ga, gb, x2, 6.0, 72);
  CHECK(std::abs(closed2 - brute2) / std::abs(closed2) < 1e-6);

  Mat gm(2, 2);
  gm << 4, 0, 0, 1;
  Metric gmet(gm);
  SymplecticStructure gsig(Mat(gmet.g_sqrt * MoyalContext::standard(2, 1.0).sigma.sigma *
                               gmet.g_sqrt));
  MoyalContext curved(gmet, gsig, 1.0);
  GaussianFunction gc = GaussianFunction::isotropic(2, 1.5, 1.0);
  Vec x3(2);
  x3 << 0.1, 0.2;
  Complex closed3 =
      star_gaussian(curved, gc, iso).evaluate(CVec(x3.cast<Complex>()));
  Complex brute3 = star_brute_force(curved, gc, iso, x3, 5.0, 80);
  CHECK(std::abs(closed3 - brute3) / std::abs(closed3) < 1e-6);
}

TEST_CASE("tracial residual stays small across random pairs") {
  SeededRng rng(23);
  for (int dim : {2, 4}) {
    Metric g(random_spd_matrix(dim, rng));
    SymplecticStructure sigma = random_adapted_sigma(g, rng);
    MoyalContext ctx(g, sigma, 1.0);
    for (int rep = 0; rep < 10; ++rep) {
      CMat aa = random_spd_matrix(dim, rng, 0.4, 2.0).cast<Complex>();
      CMat bb = random_spd_matrix(dim, rng, 0.4, 2.0).cast<Complex>();
      CVec la(dim), lb(dim);
      for (int i = 0; i < dim; ++i) {
        la(i) = Complex(0.3 * rng.gaussian(), 0.3 * rng.gaussian());
        lb(i) = Complex(0.3 * rng.gaussian(), 0.3 * rng.gaussian());
      }
      GaussianFunction a(aa, la, Complex(1.0, 0.3));
      GaussianFunction b(bb, lb, Complex(0.7, -0.2));
      CHECK(check_tracial(ctx, a, b) < 1e-8);
    }
  }
}

TEST_CASE("associativity: iterated products and the one-shot triple integral") {
  SeededRng rng(29);
  for (int dim : {2, 4}) {
    Metric g(random_spd_matrix(dim, rng));
    SymplecticStructure sigma = random_adapted_sigma(g, rng);
    MoyalContext ctx(g, sigma, 1.0);
    GaussianFunction a(random_spd_matrix(dim, rng, 0.5, 1.5).cast<Complex>(),
                       CVec::Zero(dim), 1.0);
    GaussianFunction b(random_spd_matrix(dim, rng, 0.5, 1.5).cast<Complex>(),
                       CVec::Zero(dim), Complex(0.8, 0.1));
    GaussianFunction c = GaussianFunction::isotropic(dim, 0.9, 1.0);
    CHECK(check_associativity(ctx, a, b, c) < 1e-9);
  }
}

TEST_CASE("polynomial star: unit, squares and commutators") {
  MoyalContext ctx = MoyalContext::standard(2, 1.0);
  PolynomialFunction one = PolynomialFunction::constant(2, 1.0);
  PolynomialFunction x0 = PolynomialFunction::coordinate(2, 0);
  PolynomialFunction x1 = PolynomialFunction::coordinate(2, 1);

  CHECK(star_polynomial(ctx, x0, one).max_coeff_diff(x0) < 1e-15);
  CHECK(star_polynomial(ctx, one, x0).max_coeff_diff(x0) < 1e-15);
  CHECK(star_polynomial(ctx, x0, x0).max_coeff_diff(x0 * x0) < 1e-15);

  PolynomialFunction comm = star_polynomial(ctx, x0, x1) - star_polynomial(ctx, x1, x0);
  PolynomialFunction expect =
      PolynomialFunction::constant(2, Complex(0.0, 1.0) * ctx.poisson(0, 1));
  CHECK(comm.max_coeff_diff(expect) < 1e-15);
}

TEST_CASE("commutator matrix equals the calibrated tensor") {
  SeededRng rng(37);
  for (int dim : {2, 4}) {
    Metric g(random_spd_matrix(dim, rng));
    SymplecticStructure sigma = random_adapted_sigma(g, rng);
    MoyalContext ctx(g, sigma, 0.6);
    CHECK(max_abs_diff(commutator_matrix(ctx), ctx.poisson) < 1e-12);
  }
}

TEST_CASE("derivation relations on polynomials") {
  MoyalContext std2 = MoyalContext::standard(2, 1.0);
  PolynomialFunction x0 = PolynomialFunction::coordinate(2, 0);
  DerivationResiduals r1 = check_derivation_relations(std2, x0);
  CHECK(r1.leibniz < 1e-13);
  CHECK(r1.commutator < 1e-13);
  CHECK(r1.anticommutator < 1e-13);

  PolynomialFunction x1 = PolynomialFunction::coordinate(2, 1);
  DerivationResiduals r2 = check_derivation_relations(std2, x0 * x0 * x1);
  CHECK(r2.leibniz < 1e-12);
  CHECK(r2.commutator < 1e-12);
  CHECK(r2.anticommutator < 1e-12);

  SeededRng rng(43);
  Metric g(random_spd_matrix(4, rng));
  SymplecticStructure sigma = random_adapted_sigma(g, rng);
  MoyalContext ctx(g, sigma, 1.0);
  PolynomialFunction p(4);
  p.add_term({2, 1, 1, 0}, Complex(0.7, 0.2));
  p.add_term({0, 2, 0, 2}, Complex(-0.3, 0.0));
  p.add_term({1, 0, 0, 0}, Complex(0.0, 1.1));
  p.add_term({0, 0, 0, 0}, Complex(2.0, 0.0));
  DerivationResiduals r3 = check_derivation_relations(ctx, p);
  CHECK(r3.leibniz < 1e-12);
  CHECK(r3.commutator < 1e-12);
  CHECK(r3.anticommutator < 1e-12);
}

TEST_CASE("cross-engine first moments extrapolate to the polynomial product") {
  // x_mu * x_nu from the Gaussian engine: mixed finite difference of
  // (exp(-eps y^2 + s y_mu) * exp(-eps y^2 + t y_nu))(x) at s = t = 0,
  // extrapolated linearly from eps in {1e-2, 1e-3}.
  MoyalContext ctx = MoyalContext::standard(2, 1.0);
  Vec x(2);
  x << 0.4, -0.7;
  const double h = 1e-3;
  auto moment = [&](double eps, int mu, int nu) {
    auto f = [&](double s, double t) {
      CVec ba = CVec::Zero(2), bb = CVec::Zero(2);
      ba(mu) = s;
      bb(nu) = t;
      GaussianFunction a(CMat(eps * CMat::Identity(2, 2)), ba, 1.0);
      GaussianFunction b(CMat(eps * CMat::Identity(2, 2)), bb, 1.0);
      return star_gaussian(ctx, a, b).evaluate(CVec(x.cast<Complex>()));
    };
    return (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h);
  };
  for (int mu = 0; mu < 2; ++mu)
    for (int nu = 0; nu < 2; ++nu) {
      Complex d1 = moment(1e-2, mu, nu);
      Complex d2 = moment(1e-3, mu, nu);
      Complex limit = (1e-2 * d2 - 1e-3 * d1) / (1e-2 - 1e-3);
      PolynomialFunction prod =
          star_polynomial(ctx, PolynomialFunction::coordinate(2, mu),
                          PolynomialFunction::coordinate(2, nu));
      Complex expect = prod.evaluate(CVec(x.cast<Complex>()));
      CHECK(std::abs(limit - expect) < 1e-4);
    }
}
