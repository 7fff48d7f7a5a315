#include "moyalharm/polynomial.hpp"

#include <cmath>
#include <numeric>

namespace moyalharm {

PolynomialFunction::PolynomialFunction(int dim) : dim_(dim) {
  require(dim > 0, "PolynomialFunction: dim must be positive");
}

PolynomialFunction PolynomialFunction::constant(int dim, Complex value) {
  PolynomialFunction p(dim);
  p.add_term(MultiIndex(dim, 0), value);
  return p;
}

PolynomialFunction PolynomialFunction::coordinate(int dim, int axis) {
  require(axis >= 0 && axis < dim, "PolynomialFunction::coordinate: axis out of range");
  PolynomialFunction p(dim);
  MultiIndex idx(dim, 0);
  idx[axis] = 1;
  p.add_term(idx, 1.0);
  return p;
}

PolynomialFunction PolynomialFunction::linear_form(const CVec& v) {
  PolynomialFunction p(static_cast<int>(v.size()));
  for (int i = 0; i < v.size(); ++i) {
    if (v(i) == 0.0) continue;
    MultiIndex idx(v.size(), 0);
    idx[i] = 1;
    p.add_term(idx, v(i));
  }
  return p;
}

int PolynomialFunction::total_degree() const {
  int deg = 0;
  for (const auto& [idx, c] : terms_)
    deg = std::max(deg, std::accumulate(idx.begin(), idx.end(), 0));
  return deg;
}

void PolynomialFunction::add_term(const MultiIndex& idx, Complex coeff) {
  require(static_cast<int>(idx.size()) == dim_, "PolynomialFunction::add_term: index size");
  auto it = terms_.find(idx);
  if (it == terms_.end()) {
    if (coeff != 0.0) terms_.emplace(idx, coeff);
    return;
  }
  it->second += coeff;
  if (it->second == 0.0) terms_.erase(it);
}

PolynomialFunction PolynomialFunction::operator+(const PolynomialFunction& o) const {
  require(dim_ == o.dim_, "PolynomialFunction: dimension mismatch");
  PolynomialFunction out = *this;
  for (const auto& [idx, c] : o.terms_) out.add_term(idx, c);
  return out;
}

PolynomialFunction PolynomialFunction::operator-(const PolynomialFunction& o) const {
  require(dim_ == o.dim_, "PolynomialFunction: dimension mismatch");
  PolynomialFunction out = *this;
  for (const auto& [idx, c] : o.terms_) out.add_term(idx, -c);
  return out;
}

PolynomialFunction PolynomialFunction::operator*(const PolynomialFunction& o) const {
  require(dim_ == o.dim_, "PolynomialFunction: dimension mismatch");
  PolynomialFunction out(dim_);
  for (const auto& [ia, ca] : terms_)
    for (const auto& [ib, cb] : o.terms_) {
      MultiIndex idx(dim_);
      for (int d = 0; d < dim_; ++d) idx[d] = ia[d] + ib[d];
      out.add_term(idx, ca * cb);
    }
  return out;
}

PolynomialFunction PolynomialFunction::operator*(Complex s) const {
  PolynomialFunction out(dim_);
  if (s == 0.0) return out;
  for (const auto& [idx, c] : terms_) out.add_term(idx, c * s);
  return out;
}

PolynomialFunction PolynomialFunction::derivative(int axis) const {
  require(axis >= 0 && axis < dim_, "PolynomialFunction::derivative: axis out of range");
  PolynomialFunction out(dim_);
  for (const auto& [idx, c] : terms_) {
    if (idx[axis] == 0) continue;
    MultiIndex d = idx;
    d[axis] -= 1;
    out.add_term(d, c * static_cast<double>(idx[axis]));
  }
  return out;
}

Complex PolynomialFunction::evaluate(const CVec& x) const {
  require(x.size() == dim_, "PolynomialFunction::evaluate: size mismatch");
  Complex acc = 0.0;
  for (const auto& [idx, c] : terms_) {
    Complex t = c;
    for (int d = 0; d < dim_; ++d)
      for (int k = 0; k < idx[d]; ++k) t *= x(d);
    acc += t;
  }
  return acc;
}

double PolynomialFunction::max_coeff_diff(const PolynomialFunction& o) const {
  PolynomialFunction delta = *this - o;
  return delta.max_coeff_abs();
}

double PolynomialFunction::max_coeff_abs() const {
  double m = 0.0;
  for (const auto& [idx, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

namespace {

// E[x^idx] for a Gaussian with mean m and covariance C, via the recursion
// E[x_i x^beta] = m_i E[x^beta] + sum_j C_ij beta_j E[x^{beta - e_j}].
Complex gaussian_moment(const PolynomialFunction::MultiIndex& idx, const CVec& mean,
                        const CMat& cov,
                        std::map<PolynomialFunction::MultiIndex, Complex>& memo) {
  const int dim = static_cast<int>(idx.size());
  int first = -1;
  for (int d = 0; d < dim; ++d)
    if (idx[d] > 0) {
      first = d;
      break;
    }
  if (first < 0) return 1.0;
  auto it = memo.find(idx);
  if (it != memo.end()) return it->second;

  PolynomialFunction::MultiIndex beta = idx;
  beta[first] -= 1;
  Complex acc = mean(first) * gaussian_moment(beta, mean, cov, memo);
  for (int j = 0; j < dim; ++j) {
    if (beta[j] == 0) continue;
    PolynomialFunction::MultiIndex gamma = beta;
    gamma[j] -= 1;
    acc += cov(first, j) * static_cast<double>(beta[j]) *
           gaussian_moment(gamma, mean, cov, memo);
  }
  memo.emplace(idx, acc);
  return acc;
}

}  // namespace

Complex gaussian_moment_integral(const PolynomialFunction& p,
                                 const QuadraticIntegrand& integrand) {
  require(p.dim() == integrand.dim, "gaussian_moment_integral: dimension mismatch");
  Complex base = gaussian_integral(integrand);
  if (p.empty()) return 0.0;
  Eigen::FullPivLU<CMat> lu(integrand.q);
  CVec mean = lu.solve(integrand.l);
  CMat cov = lu.inverse();
  std::map<PolynomialFunction::MultiIndex, Complex> memo;
  Complex acc = 0.0;
  for (const auto& [idx, c] : p.terms())
    acc += c * gaussian_moment(idx, mean, cov, memo);
  return base * acc;
}

}  // namespace moyalharm
