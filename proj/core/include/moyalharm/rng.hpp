#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "moyalharm/common.hpp"

namespace moyalharm {

// Deterministic random source. The normal sampler is hand-rolled Box-Muller
// on top of mt19937_64 so that seeded runs reproduce bit-identically across
// standard library implementations.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double gaussian();

  Mat gaussian_matrix(int rows, int cols);
  Vec gaussian_vector(int n);

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Random symmetric positive definite matrix with eigenvalues in [lo, hi].
Mat random_spd_matrix(int dim, SeededRng& rng, double lo = 0.5, double hi = 3.0);

// Haar-ish random element of O(dim) from the QR of a Gaussian matrix with
// the R-diagonal sign fix.
Mat random_standard_orthogonal(int dim, SeededRng& rng);

// Deterministic low-discrepancy points (Halton sequence) mapped to
// [lo, hi]^dim; used for residual sampling grids.
std::vector<Vec> halton_points(int dim, int count, double lo, double hi);

}  // namespace moyalharm
