#pragma once

#include <optional>

#include "moyalharm/common.hpp"
#include "moyalharm/rng.hpp"

namespace moyalharm {

// Symmetric positive definite metric together with its square root and
// inverse, which nearly every operation needs.
struct Metric {
  int dim;
  Mat g;
  Mat g_sqrt;
  Mat g_sqrt_inv;
  Mat g_inv;

  explicit Metric(Mat g_in);
  static Metric identity(int dim);
};

// Antisymmetric invertible matrix defining the deformation. Not required to
// be adapted to any metric; adaptedness is a property of the pair.
struct SymplecticStructure {
  int dim;
  Mat sigma;
  Mat sigma_inv;

  explicit SymplecticStructure(Mat sigma_in);
};

// Witness of adaptedness: I with I^2 = -1, I^T G I = G and Sigma = I^T G.
struct ComplexStructure {
  int dim;
  Mat i_matrix;
};

// Linear map preserving a metric: lambda^T G lambda = G.
struct OrthogonalMap {
  Metric metric;
  Mat lambda;

  OrthogonalMap(Mat lambda_in, Metric metric_in, double tol = 1e-10);
};

struct StandardPair {
  Metric metric;
  SymplecticStructure sigma;
};

// Identity metric and the block-diagonal symplectic matrix with 2x2 blocks
// [[0,-1],[1,0]]. dim must be even and positive.
StandardPair standard_structures(int dim);

// Principal square root of a symmetric positive definite matrix via the
// symmetric eigendecomposition. Throws InvalidInput if m is not SPD.
Mat matrix_sqrt(const Mat& m);

// J = -G^{-1/2} Sigma G^{-1/2}; the pair is adapted iff J is orthogonal.
Mat normalized_form(const SymplecticStructure& sigma, const Metric& g);

// Returns the complex-structure witness I = G^{-1/2} J G^{1/2} when the pair
// is adapted (max-abs residual of J^T J - 1 below tol), nullopt otherwise.
std::optional<ComplexStructure> adapted_witness(const SymplecticStructure& sigma,
                                                const Metric& g,
                                                double tol = 1e-9);

inline bool is_adapted(const SymplecticStructure& sigma, const Metric& g,
                       double tol = 1e-9) {
  return adapted_witness(sigma, g, tol).has_value();
}

// For an adapted pair, returns standard-orthogonal R with
//   Sigma = G^{1/2} R^T Sigma_st R G^{1/2}.
// The representative is fixed by a deterministic pairing of the standard
// basis under J, so equal inputs give equal output. Throws NotAdapted if the
// pair is not adapted and NumericalError if the round trip residual exceeds
// tolerance.
OrthogonalMap decompose_adapted(const SymplecticStructure& sigma, const Metric& g,
                                double tol = 1e-9);

// Pullback action on the symplectic structure: sigma' with
// sigma'^{-1} = lambda sigma^{-1} lambda^T.
SymplecticStructure orthogonal_action(const OrthogonalMap& map,
                                      const SymplecticStructure& sigma);

// Seeded G-orthogonal map: G^{-1/2} Q G^{1/2} with Q Haar-ish in O(dim).
OrthogonalMap random_orthogonal(const Metric& g, std::uint64_t seed);

// Whether the map additionally preserves sigma (lambda^T sigma lambda = sigma),
// i.e. lies in the isotropy subgroup of the pair.
bool symmetry_group_check(const OrthogonalMap& map, const SymplecticStructure& sigma,
                          double tol = 1e-9);

// Random adapted partner for g: Sigma = G^{1/2} Q^T Sigma_st Q G^{1/2}.
SymplecticStructure random_adapted_sigma(const Metric& g, SeededRng& rng);

// Element of the isotropy group of the standard pair (orthogonal and
// symplectic), realified from a random unitary matrix.
Mat random_standard_isotropy(int dim, SeededRng& rng);

}  // namespace moyalharm
