#pragma once

#include <array>
#include <string>
#include <vector>

#include "moyalharm/action.hpp"
#include "moyalharm/propagator.hpp"

namespace moyalharm {

struct CornerRef {
  int vertex;
  int corner;
};

inline bool operator==(const CornerRef& a, const CornerRef& b) {
  return a.vertex == b.vertex && a.corner == b.corner;
}

// A graph of quartic vertices: n vertices with 4 cyclically ordered corners
// each, lines pairing distinct corners, and an ordered list of external
// corners carrying the remaining slots. Every corner appears exactly once.
struct FeynmanGraph {
  int n_vertices;
  std::vector<std::array<CornerRef, 2>> lines;
  std::vector<CornerRef> external;

  FeynmanGraph(int n, std::vector<std::array<CornerRef, 2>> lines_in,
               std::vector<CornerRef> external_in);

  int n_external() const { return static_cast<int>(external.size()); }
  int n_lines() const { return static_cast<int>(lines.size()); }
};

// Graph file format:
//   { "n": 1, "lines": [[[0,1],[0,2]]], "external": [[0,0],[0,3]],
//     "positions": [[0.3,0.0],[-0.1,0.2]] }
// Corner slots are [vertex, corner] with 0-based indices; the corner order is
// the cyclic order of the quartic product. "positions" (optional) gives
// default external points.
struct GraphFile {
  FeynmanGraph graph;
  std::vector<Vec> positions;
};

GraphFile parse_graph(const std::string& text);
GraphFile load_graph(const std::string& path);

// Unit-modulus vertex phase with hypermomentum p:
//   exp(-i sum_{c<c'} (-1)^{c+c'+1} x_c ^ x_{c'} - i sum_c (-1)^c p ^ x_c),
// 0-based corner indices, ^ the wedge of ctx.
Complex vertex_factor(const MoyalContext& ctx, const std::array<Vec, 4>& x,
                      const Vec& p);

// Joint Gaussian over the free internal corner coordinates at fixed Schwinger
// parameters. Per vertex the constraint x_0 - x_1 + x_2 - x_3 = 0 eliminates
// the internal corner of highest index (unit Jacobian); a vertex whose four
// corners are all external is checked against its constraint directly and
// throws InvalidInput on violation. The prefactor carries the per-vertex
// det(G)/(pi theta)^D and per-line theta sqrt(det G)/(4 omega) *
// (omega/(pi theta))^{D/2} normalizations together with the external parts of
// the phases and kernels; the alpha-dependent sinh and mass weights are
// applied by amplitude().
QuadraticIntegrand assemble_integrand(const FeynmanGraph& graph,
                                      const ModelParams& params,
                                      const std::vector<Vec>& externals,
                                      const std::vector<double>& alphas);

struct AmplitudeResult {
  Complex value;
  double abs_error;
  int n;
  int n_external;
  double epsilon;
  double det_g_factor;  // (det G)^{(n + N/2)/2}
};

// Regularized amputated amplitude: per-line adaptive quadrature (nested, at
// most 3 lines) over [epsilon, alpha_max] of the Gaussian integral of
// assemble_integrand times the sinh^{-D/2}(a) exp(-m^2 a/(2 ot)) weights.
// A zero-line graph needs no quadrature and returns the constrained vertex
// phase times its normalization.
AmplitudeResult amplitude(const FeynmanGraph& graph, const ModelParams& params,
                          const std::vector<Vec>& externals,
                          const CutoffSpec& cutoff);

// Relative residual of the amplitude of (G, Sigma) at {x_e} against
// (det G)^{(n+N/2)/2} times the standard-pair amplitude at {R G^{1/2} x_e},
// R = decompose_adapted(sigma, g).
double check_covariance(const FeynmanGraph& graph, const ModelParams& params,
                        const std::vector<Vec>& externals, const CutoffSpec& cutoff);

// Relative residual of the amplitude with sigma^{-1} -> L sigma^{-1} L^T and
// externals mapped by L against the original, for L orthogonal w.r.t. G.
double check_orthogonal_invariance(const FeynmanGraph& graph,
                                   const ModelParams& params,
                                   const std::vector<Vec>& externals,
                                   const OrthogonalMap& map,
                                   const CutoffSpec& cutoff);

struct WeightedGraph {
  FeynmanGraph graph;
  Complex weight;
};

// Finite truncation of the effective action: sum over graphs of
// w * int dx_1..dx_N A({x_e}) phi(x_1)..phi(x_N). External corners become
// Gaussian integration variables (an all-external vertex eliminates its
// highest corner instead of failing), so each graph reduces to the same
// alpha-quadrature of a closed-form Gaussian integral.
Complex effective_action_term(const std::vector<WeightedGraph>& graphs,
                              const ModelParams& params, const FieldConfig& field,
                              const CutoffSpec& cutoff);

}  // namespace moyalharm
