#include "moyalharm/gaussian.hpp"

#include <cmath>

namespace moyalharm {

namespace {

CMat symmetrize(const CMat& m) { return 0.5 * (m + CMat(m.transpose())); }

void check_symmetric(const CMat& m, const char* who) {
  double scale = 1.0 + m.cwiseAbs().maxCoeff();
  require(max_abs_diff(m, CMat(m.transpose())) < 1e-12 * scale,
          std::string(who) + ": quadratic form must be symmetric");
}

// Minimum eigenvalue of the symmetrized real part, plus its scale.
std::pair<double, double> real_part_range(const CMat& q) {
  Mat re = q.real();
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (re + Mat(re.transpose())));
  double lo = es.eigenvalues().minCoeff();
  double hi = es.eigenvalues().cwiseAbs().maxCoeff();
  return {lo, hi};
}

// Product of principal inverse square roots of the eigenvalues. With Re(Q)
// positive definite every eigenvalue lies in the open right half-plane, so
// each factor is the principal branch and the product is the analytic
// continuation from real positive definite Q.
Complex det_inv_sqrt(const CMat& q) {
  Eigen::ComplexSchur<CMat> schur(q, /*computeU=*/false);
  require(schur.info() == Eigen::Success, "gaussian_integral: Schur decomposition failed");
  Complex out = 1.0;
  for (int i = 0; i < q.rows(); ++i) out /= std::sqrt(schur.matrixT()(i, i));
  return out;
}

}  // namespace

GaussianFunction::GaussianFunction(CMat a_in, CVec b_in, Complex c_in)
    : dim(static_cast<int>(a_in.rows())), a(std::move(a_in)), b(std::move(b_in)), c(c_in) {
  require(a.rows() == a.cols() && dim > 0, "GaussianFunction: A must be square");
  require(b.size() == dim, "GaussianFunction: b size mismatch");
  check_symmetric(a, "GaussianFunction");
  a = symmetrize(a);
}

GaussianFunction GaussianFunction::isotropic(int dim, double s, Complex c) {
  return GaussianFunction(s * CMat::Identity(dim, dim), CVec::Zero(dim), c);
}

Complex GaussianFunction::evaluate(const CVec& x) const {
  require(x.size() == dim, "GaussianFunction::evaluate: size mismatch");
  Complex e = -(x.transpose() * a * x)(0) + (b.transpose() * x)(0);
  return c * std::exp(e);
}

Complex GaussianFunction::evaluate(const Vec& x) const { return evaluate(CVec(x.cast<Complex>())); }

bool GaussianFunction::is_integrable(double tol) const {
  auto [lo, hi] = real_part_range(a);
  (void)hi;
  return lo > tol;
}

QuadraticIntegrand::QuadraticIntegrand(CMat q_in, CVec l_in, Complex prefactor_in)
    : dim(static_cast<int>(q_in.rows())), q(std::move(q_in)), l(std::move(l_in)),
      prefactor(prefactor_in) {
  require(q.rows() == q.cols(), "QuadraticIntegrand: Q must be square");
  require(l.size() == dim, "QuadraticIntegrand: L size mismatch");
  if (dim > 0) {
    check_symmetric(q, "QuadraticIntegrand");
    q = symmetrize(q);
  }
}

QuadraticIntegrand QuadraticIntegrand::from_gaussian(const GaussianFunction& f) {
  return QuadraticIntegrand(2.0 * f.a, f.b, f.c);
}

GaussianFunction QuadraticIntegrand::to_gaussian() const {
  return GaussianFunction(0.5 * q, l, prefactor);
}

Complex QuadraticIntegrand::evaluate(const CVec& x) const {
  require(x.size() == dim, "QuadraticIntegrand::evaluate: size mismatch");
  Complex e = -0.5 * (x.transpose() * q * x)(0) + (l.transpose() * x)(0);
  return prefactor * std::exp(e);
}

GaussianFunction multiply(const GaussianFunction& f, const GaussianFunction& g) {
  require(f.dim == g.dim, "multiply: dimension mismatch");
  return GaussianFunction(f.a + g.a, f.b + g.b, f.c * g.c);
}

Complex gaussian_integral(const QuadraticIntegrand& qi) {
  if (qi.dim == 0) return qi.prefactor;
  auto [min_eig, scale] = real_part_range(qi.q);
  if (min_eig <= 1e-12 * std::max(1.0, scale))
    throw DivergentIntegral(
        "gaussian_integral: Re(Q) not positive definite, min eigenvalue " +
            std::to_string(min_eig),
        min_eig);
  Eigen::FullPivLU<CMat> lu(qi.q);
  CVec sol = lu.solve(qi.l);
  Complex expo = 0.5 * (qi.l.transpose() * sol)(0);
  double pw = 0.5 * static_cast<double>(qi.dim);
  return qi.prefactor * std::pow(2.0 * M_PI, pw) * det_inv_sqrt(qi.q) * std::exp(expo);
}

Complex integrate(const GaussianFunction& f) {
  return gaussian_integral(QuadraticIntegrand::from_gaussian(f));
}

QuadraticIntegrand partial_gaussian_integral(const QuadraticIntegrand& qi,
                                             const std::vector<int>& integrated) {
  const int n = qi.dim;
  const int nu = static_cast<int>(integrated.size());
  require(nu > 0, "partial_gaussian_integral: empty index set");
  for (int i = 0; i < nu; ++i) {
    require(integrated[i] >= 0 && integrated[i] < n,
            "partial_gaussian_integral: index out of range");
    require(i == 0 || integrated[i] > integrated[i - 1],
            "partial_gaussian_integral: indices must be strictly increasing");
  }
  std::vector<int> kept;
  kept.reserve(n - nu);
  {
    std::size_t p = 0;
    for (int i = 0; i < n; ++i) {
      if (p < integrated.size() && integrated[p] == i) {
        ++p;
        continue;
      }
      kept.push_back(i);
    }
  }
  const int nv = static_cast<int>(kept.size());

  CMat quu(nu, nu), qvv(nv, nv), qvu(nv, nu);
  CVec lu_vec(nu), lv(nv);
  for (int i = 0; i < nu; ++i) {
    lu_vec(i) = qi.l(integrated[i]);
    for (int k = 0; k < nu; ++k) quu(i, k) = qi.q(integrated[i], integrated[k]);
  }
  for (int i = 0; i < nv; ++i) {
    lv(i) = qi.l(kept[i]);
    for (int k = 0; k < nv; ++k) qvv(i, k) = qi.q(kept[i], kept[k]);
    for (int k = 0; k < nu; ++k) qvu(i, k) = qi.q(kept[i], integrated[k]);
  }

  auto [min_eig, scale] = real_part_range(quu);
  if (min_eig <= 1e-12 * std::max(1.0, scale))
    throw DivergentIntegral(
        "partial_gaussian_integral: Re(Q_uu) not positive definite, min "
        "eigenvalue " + std::to_string(min_eig),
        min_eig);

  Eigen::FullPivLU<CMat> lu(quu);
  CMat quu_inv_quv = lu.solve(CMat(qvu.transpose()));
  CVec quu_inv_lu = lu.solve(lu_vec);

  CMat qp = qvv - qvu * quu_inv_quv;
  CVec lp = lv - qvu * quu_inv_lu;
  Complex expo = 0.5 * (lu_vec.transpose() * quu_inv_lu)(0);
  Complex pref = qi.prefactor * std::pow(2.0 * M_PI, 0.5 * nu) * det_inv_sqrt(quu) *
                 std::exp(expo);
  return QuadraticIntegrand(CMat(0.5 * (qp + CMat(qp.transpose()))), lp, pref);
}

ExponentBuilder::ExponentBuilder(int dim)
    : dim_(dim), h_(CMat::Zero(dim, dim)), l_(CVec::Zero(dim)), cconst_(0.0), coeff_(1.0) {
  require(dim >= 0, "ExponentBuilder: negative dimension");
}

void ExponentBuilder::add_gaussian(const GaussianFunction& g, const CMat& t, const CVec& d) {
  require(t.rows() == g.dim && t.cols() == dim_, "ExponentBuilder::add_gaussian: T shape");
  require(d.size() == g.dim, "ExponentBuilder::add_gaussian: d size");
  h_ -= t.transpose() * g.a * t;
  l_ += t.transpose() * (g.b - 2.0 * (g.a * d));
  cconst_ += -(d.transpose() * g.a * d)(0) + (g.b.transpose() * d)(0);
  coeff_ *= g.c;
}

void ExponentBuilder::add_bilinear(const CMat& w, const CMat& t1, const CVec& d1,
                                   const CMat& t2, const CVec& d2) {
  require(t1.cols() == dim_ && t2.cols() == dim_, "ExponentBuilder::add_bilinear: T shape");
  require(w.rows() == t1.rows() && w.cols() == t2.rows(),
          "ExponentBuilder::add_bilinear: W shape");
  require(d1.size() == t1.rows() && d2.size() == t2.rows(),
          "ExponentBuilder::add_bilinear: d size");
  h_ += t1.transpose() * w * t2;
  l_ += t2.transpose() * CMat(w.transpose()) * d1 + t1.transpose() * w * d2;
  cconst_ += (d1.transpose() * w * d2)(0);
}

QuadraticIntegrand ExponentBuilder::build() const {
  CMat q = -(h_ + CMat(h_.transpose()));
  return QuadraticIntegrand(q, l_, coeff_ * std::exp(cconst_));
}

}  // namespace moyalharm
