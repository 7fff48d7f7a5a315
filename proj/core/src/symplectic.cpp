#include "moyalharm/symplectic.hpp"

#include <cmath>
#include <vector>

namespace moyalharm {

Metric::Metric(Mat g_in) : dim(static_cast<int>(g_in.rows())), g(std::move(g_in)) {
  require(g.rows() == g.cols() && dim > 0, "Metric: matrix must be square");
  require(dim % 2 == 0, "Metric: dimension must be even");
  require(max_abs_diff(g, g.transpose()) < 1e-12 * (1.0 + g.cwiseAbs().maxCoeff()),
          "Metric: matrix must be symmetric");
  g = 0.5 * (g + Mat(g.transpose()));
  g_sqrt = matrix_sqrt(g);
  g_sqrt_inv = g_sqrt.inverse();
  g_inv = g.inverse();
}

Metric Metric::identity(int dim) { return Metric(Mat::Identity(dim, dim)); }

SymplecticStructure::SymplecticStructure(Mat sigma_in)
    : dim(static_cast<int>(sigma_in.rows())), sigma(std::move(sigma_in)) {
  require(sigma.rows() == sigma.cols() && dim > 0,
          "SymplecticStructure: matrix must be square");
  double scale = 1.0 + sigma.cwiseAbs().maxCoeff();
  require(max_abs_diff(sigma, Mat(-sigma.transpose())) < 1e-12 * scale,
          "SymplecticStructure: matrix must be antisymmetric");
  require(dim % 2 == 0, "SymplecticStructure: odd-dimensional antisymmetric "
                        "matrices are singular");
  sigma = 0.5 * (sigma - Mat(sigma.transpose()));
  Eigen::FullPivLU<Mat> lu(sigma);
  require(lu.isInvertible(), "SymplecticStructure: matrix must be invertible");
  sigma_inv = lu.inverse();
}

OrthogonalMap::OrthogonalMap(Mat lambda_in, Metric metric_in, double tol)
    : metric(std::move(metric_in)), lambda(std::move(lambda_in)) {
  require(lambda.rows() == lambda.cols() && lambda.rows() == metric.dim,
          "OrthogonalMap: shape mismatch with metric");
  Mat resid = lambda.transpose() * metric.g * lambda - metric.g;
  double err = resid.cwiseAbs().maxCoeff();
  if (err > tol)
    throw InvalidInput("OrthogonalMap: lambda^T G lambda != G, residual " +
                       std::to_string(err));
}

StandardPair standard_structures(int dim) {
  require(dim > 0 && dim % 2 == 0, "standard_structures: dim must be even and positive");
  Mat sigma = Mat::Zero(dim, dim);
  for (int b = 0; b < dim / 2; ++b) {
    sigma(2 * b, 2 * b + 1) = -1.0;
    sigma(2 * b + 1, 2 * b) = 1.0;
  }
  return {Metric::identity(dim), SymplecticStructure(sigma)};
}

Mat matrix_sqrt(const Mat& m) {
  require(m.rows() == m.cols() && m.rows() > 0, "matrix_sqrt: matrix must be square");
  double scale = 1.0 + m.cwiseAbs().maxCoeff();
  require(max_abs_diff(m, m.transpose()) < 1e-10 * scale,
          "matrix_sqrt: matrix must be symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + Mat(m.transpose())));
  require(es.info() == Eigen::Success, "matrix_sqrt: eigendecomposition failed");
  double min_eig = es.eigenvalues().minCoeff();
  require(min_eig > 0.0, "matrix_sqrt: matrix not positive definite, min eigenvalue " +
                             std::to_string(min_eig));
  Mat r = es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
          es.eigenvectors().transpose();
  return 0.5 * (r + Mat(r.transpose()));
}

Mat normalized_form(const SymplecticStructure& sigma, const Metric& g) {
  require(sigma.dim == g.dim, "normalized_form: dimension mismatch");
  Mat j = -g.g_sqrt_inv * sigma.sigma * g.g_sqrt_inv;
  return 0.5 * (j - Mat(j.transpose()));
}

std::optional<ComplexStructure> adapted_witness(const SymplecticStructure& sigma,
                                                const Metric& g, double tol) {
  Mat j = normalized_form(sigma, g);
  int dim = g.dim;
  double resid = max_abs_diff(Mat(j.transpose() * j), Mat::Identity(dim, dim));
  if (resid > tol) return std::nullopt;
  return ComplexStructure{dim, g.g_sqrt_inv * j * g.g_sqrt};
}

namespace {

// Deterministic orthonormal pairing of R^D under an antisymmetric orthogonal
// J with J^2 = -1. Each J-invariant plane is seeded from the first standard
// basis vector with a significant component outside the span already built;
// the partner is +-J u with the sign fixed so the partner's largest-magnitude
// component is positive. The sign choice decides the epsilon of the block.
struct PairBasis {
  std::vector<Vec> rows;          // u1, v1, u2, v2, ...
  std::vector<int> epsilons;      // +1 -> sigma block, -1 -> flipped block
};

Vec project_out(const std::vector<Vec>& basis, Vec v) {
  // Two rounds of Gram-Schmidt keep orthogonality at machine precision.
  for (int round = 0; round < 2; ++round)
    for (const Vec& b : basis) v -= b.dot(v) * b;
  return v;
}

PairBasis build_pair_basis(const Mat& j) {
  const int dim = static_cast<int>(j.rows());
  PairBasis out;
  for (int pair = 0; pair < dim / 2; ++pair) {
    double guaranteed = static_cast<double>(dim - 2 * pair) / dim;
    int seed = -1;
    for (int k = 0; k < dim; ++k) {
      Vec r = project_out(out.rows, Vec(Vec::Unit(dim, k)));
      if (r.squaredNorm() >= 0.5 * guaranteed) {
        seed = k;
        break;
      }
    }
    if (seed < 0)
      throw NumericalError("decompose_adapted: basis pairing degenerated");
    Vec u = project_out(out.rows, Vec(Vec::Unit(dim, seed)));
    u.normalize();
    Vec w = j * u;
    w = project_out(out.rows, w);
    w -= u.dot(w) * u;
    if (w.norm() < 0.5)
      throw NumericalError("decompose_adapted: J-partner collapsed; matrix "
                           "is too far from antisymmetric orthogonal");
    w.normalize();
    int lead = 0;
    w.cwiseAbs().maxCoeff(&lead);
    int s = (w(lead) >= 0.0) ? 1 : -1;
    out.rows.push_back(u);
    out.rows.push_back(s * w);
    out.epsilons.push_back(-s);
  }
  return out;
}

}  // namespace

OrthogonalMap decompose_adapted(const SymplecticStructure& sigma, const Metric& g,
                                double tol) {
  if (!is_adapted(sigma, g, tol))
    throw NotAdapted("decompose_adapted: pair is not adapted within tolerance");
  const int dim = g.dim;
  Mat j = normalized_form(sigma, g);
  PairBasis basis = build_pair_basis(j);

  Mat s(dim, dim);
  for (int i = 0; i < dim; ++i) s.row(i) = basis.rows[i].transpose();

  // Blocks with epsilon = -1 are conjugated by rho = [[0,1],[1,0]], which
  // maps the flipped block back to the standard one.
  Mat s0 = Mat::Identity(dim, dim);
  for (int pair = 0; pair < dim / 2; ++pair) {
    if (basis.epsilons[pair] < 0) {
      s0(2 * pair, 2 * pair) = 0.0;
      s0(2 * pair + 1, 2 * pair + 1) = 0.0;
      s0(2 * pair, 2 * pair + 1) = 1.0;
      s0(2 * pair + 1, 2 * pair) = 1.0;
    }
  }
  Mat r = s0 * s;

  Mat sigma_st = standard_structures(dim).sigma.sigma;
  Mat round_trip = g.g_sqrt * r.transpose() * sigma_st * r * g.g_sqrt;
  double resid = max_abs_diff(round_trip, sigma.sigma);
  if (resid > tol)
    throw NumericalError("decompose_adapted: round trip residual " +
                         std::to_string(resid) + " above tolerance");
  return OrthogonalMap(r, Metric::identity(dim));
}

SymplecticStructure orthogonal_action(const OrthogonalMap& map,
                                      const SymplecticStructure& sigma) {
  require(map.metric.dim == sigma.dim, "orthogonal_action: dimension mismatch");
  // sigma'^{-1} = lambda sigma^{-1} lambda^T  <=>  sigma' = lambda^{-T} sigma lambda^{-1}.
  Mat lam_inv = map.lambda.inverse();
  Mat s = lam_inv.transpose() * sigma.sigma * lam_inv;
  return SymplecticStructure(0.5 * (s - Mat(s.transpose())));
}

OrthogonalMap random_orthogonal(const Metric& g, std::uint64_t seed) {
  SeededRng rng(seed);
  Mat q = random_standard_orthogonal(g.dim, rng);
  return OrthogonalMap(g.g_sqrt_inv * q * g.g_sqrt, g);
}

bool symmetry_group_check(const OrthogonalMap& map, const SymplecticStructure& sigma,
                          double tol) {
  require(map.metric.dim == sigma.dim, "symmetry_group_check: dimension mismatch");
  Mat resid = map.lambda.transpose() * sigma.sigma * map.lambda - sigma.sigma;
  return resid.cwiseAbs().maxCoeff() <= tol;
}

SymplecticStructure random_adapted_sigma(const Metric& g, SeededRng& rng) {
  Mat q = random_standard_orthogonal(g.dim, rng);
  Mat sigma_st = standard_structures(g.dim).sigma.sigma;
  Mat s = g.g_sqrt * q.transpose() * sigma_st * q * g.g_sqrt;
  return SymplecticStructure(0.5 * (s - Mat(s.transpose())));
}

Mat random_standard_isotropy(int dim, SeededRng& rng) {
  require(dim > 0 && dim % 2 == 0, "random_standard_isotropy: dim must be even");
  const int h = dim / 2;
  // Random unitary from QR of a complex Gaussian matrix, then realified with
  // i |-> [[0,-1],[1,0]] per 2x2 block so it commutes with Sigma_st.
  CMat a(h, h);
  for (int i = 0; i < h; ++i)
    for (int k = 0; k < h; ++k) a(i, k) = Complex(rng.gaussian(), rng.gaussian());
  Eigen::HouseholderQR<CMat> qr(a);
  CMat q = qr.householderQ();
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < h; ++i) {
    Complex d = r(i, i);
    double ad = std::abs(d);
    if (ad > 0.0) q.col(i) *= d / ad;
  }
  Mat out(dim, dim);
  for (int i = 0; i < h; ++i)
    for (int k = 0; k < h; ++k) {
      double re = q(i, k).real(), im = q(i, k).imag();
      out(2 * i, 2 * k) = re;
      out(2 * i, 2 * k + 1) = -im;
      out(2 * i + 1, 2 * k) = im;
      out(2 * i + 1, 2 * k + 1) = re;
    }
  return out;
}

}  // namespace moyalharm
