#include "moyalharm/rng.hpp"

#include <cmath>

namespace moyalharm {

double SeededRng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller; u1 shifted away from 0 so log stays finite.
  double u1 = 1.0 - uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

Mat SeededRng::gaussian_matrix(int rows, int cols) {
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = gaussian();
  return m;
}

Vec SeededRng::gaussian_vector(int n) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = gaussian();
  return v;
}

Mat random_spd_matrix(int dim, SeededRng& rng, double lo, double hi) {
  require(dim > 0, "random_spd_matrix: dim must be positive");
  require(0.0 < lo && lo <= hi, "random_spd_matrix: need 0 < lo <= hi");
  Mat q = random_standard_orthogonal(dim, rng);
  Vec eigs(dim);
  for (int i = 0; i < dim; ++i) eigs(i) = rng.uniform(lo, hi);
  Mat m = q * eigs.asDiagonal() * q.transpose();
  return 0.5 * (m + m.transpose());
}

Mat random_standard_orthogonal(int dim, SeededRng& rng) {
  require(dim > 0, "random_standard_orthogonal: dim must be positive");
  Mat a = rng.gaussian_matrix(dim, dim);
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i)
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  return q;
}

namespace {

double halton_value(int index, int base) {
  double f = 1.0, v = 0.0;
  int i = index;
  while (i > 0) {
    f /= base;
    v += f * (i % base);
    i /= base;
  }
  return v;
}

}  // namespace

std::vector<Vec> halton_points(int dim, int count, double lo, double hi) {
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
  require(dim > 0 && dim <= 8, "halton_points: dim must be in [1, 8]");
  std::vector<Vec> pts;
  pts.reserve(count);
  for (int k = 0; k < count; ++k) {
    Vec p(dim);
    for (int d = 0; d < dim; ++d)
      p(d) = lo + (hi - lo) * halton_value(k + 1, primes[d]);
    pts.push_back(p);
  }
  return pts;
}

}  // namespace moyalharm
