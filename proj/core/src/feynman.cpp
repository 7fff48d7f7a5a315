#include "moyalharm/feynman.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace moyalharm {

namespace {

int corner_id(const CornerRef& c) { return 4 * c.vertex + c.corner; }

double corner_sign(int corner) { return (corner % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

FeynmanGraph::FeynmanGraph(int n, std::vector<std::array<CornerRef, 2>> lines_in,
                           std::vector<CornerRef> external_in)
    : n_vertices(n), lines(std::move(lines_in)), external(std::move(external_in)) {
  require(n_vertices >= 1, "FeynmanGraph: need at least one vertex");
  std::vector<int> seen(4 * n_vertices, 0);
  auto mark = [&](const CornerRef& c) {
    require(c.vertex >= 0 && c.vertex < n_vertices && c.corner >= 0 && c.corner < 4,
            "FeynmanGraph: corner slot out of range");
    seen[corner_id(c)] += 1;
  };
  for (const auto& l : lines) {
    require(!(l[0] == l[1]), "FeynmanGraph: line endpoints must differ");
    mark(l[0]);
    mark(l[1]);
  }
  for (const auto& e : external) mark(e);
  for (int id = 0; id < 4 * n_vertices; ++id)
    require(seen[id] == 1,
            "FeynmanGraph: every corner must appear exactly once across lines "
            "and the external list");
}

GraphFile parse_graph(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("graph file: ") + e.what());
  }
  try {
    auto read_corner = [](const nlohmann::json& c) {
      if (!c.is_array() || c.size() != 2)
        throw InvalidInput("graph file: corner slots are [vertex, corner] pairs");
      return CornerRef{c.at(0).get<int>(), c.at(1).get<int>()};
    };
    int n = j.at("n").get<int>();
    std::vector<std::array<CornerRef, 2>> lines;
    for (const auto& l : j.value("lines", nlohmann::json::array())) {
      if (!l.is_array() || l.size() != 2)
        throw InvalidInput("graph file: lines are pairs of corner slots");
      lines.push_back({read_corner(l.at(0)), read_corner(l.at(1))});
    }
    std::vector<CornerRef> ext;
    for (const auto& e : j.value("external", nlohmann::json::array()))
      ext.push_back(read_corner(e));
    GraphFile out{FeynmanGraph(n, std::move(lines), std::move(ext)), {}};
    if (j.contains("positions")) {
      for (const auto& p : j.at("positions")) {
        Vec x(p.size());
        for (int i = 0; i < static_cast<int>(p.size()); ++i)
          x(i) = p.at(i).get<double>();
        out.positions.push_back(std::move(x));
      }
      require(out.positions.size() == out.graph.external.size(),
              "graph file: positions count must match the external list");
      for (const auto& x : out.positions)
        require(x.size() == out.positions.front().size(),
                "graph file: positions must share one dimension");
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("graph file: ") + e.what());
  }
}

GraphFile load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("graph file: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

Complex vertex_factor(const MoyalContext& ctx, const std::array<Vec, 4>& x,
                      const Vec& p) {
  const int d = ctx.g.dim;
  require(p.size() == d, "vertex_factor: hypermomentum dimension mismatch");
  for (const auto& xi : x)
    require(xi.size() == d, "vertex_factor: corner dimension mismatch");
  double expo = 0.0;
  for (int c = 0; c < 4; ++c)
    for (int cp = c + 1; cp < 4; ++cp) {
      double sgn = ((c + cp) % 2 == 0) ? -1.0 : 1.0;
      expo += sgn * x[c].dot(ctx.wedge * x[cp]);
    }
  for (int c = 0; c < 4; ++c) expo += corner_sign(c) * p.dot(ctx.wedge * x[c]);
  return std::exp(Complex(0.0, -expo));
}

namespace {

// Shared assembly. With field == nullptr the externals are fixed points;
// otherwise the external corners become integration variables and each
// carries one factor of *field.
QuadraticIntegrand assemble_impl(const FeynmanGraph& graph, const ModelParams& params,
                                 const std::vector<Vec>& externals,
                                 const std::vector<double>& alphas,
                                 const GaussianFunction* field) {
  const int d = params.g.dim;
  const int n = graph.n_vertices;
  const int total = 4 * n;
  if (!params.adapted)
    throw NotAdapted("assemble_integrand: the pair (g, sigma) must be adapted");
  require(params.omega > 0.0, "assemble_integrand: omega must be positive");
  require(static_cast<int>(alphas.size()) == graph.n_lines(),
          "assemble_integrand: one alpha per line required");
  for (double a : alphas)
    require(a > 0.0, "assemble_integrand: alphas must be positive");
  if (field == nullptr) {
    require(static_cast<int>(externals.size()) == graph.n_external(),
            "assemble_integrand: one position per external corner required");
    for (const auto& x : externals)
      require(x.size() == d, "assemble_integrand: external point dimension mismatch");
  } else {
    require(field->dim == d, "effective_action_term: field dimension mismatch");
  }

  std::vector<int> ext_pos(total, -1);
  for (int e = 0; e < graph.n_external(); ++e)
    ext_pos[corner_id(graph.external[e])] = e;
  std::vector<bool> internal(total, false);
  for (const auto& l : graph.lines) {
    internal[corner_id(l[0])] = true;
    internal[corner_id(l[1])] = true;
  }

  // One corner per vertex is solved out of the constraint
  // x_0 - x_1 + x_2 - x_3 = 0: the internal corner of highest index, or the
  // highest corner outright when externals are integration variables too.
  std::vector<int> elim(n, -1);
  for (int v = 0; v < n; ++v) {
    for (int c = 0; c < 4; ++c)
      if (internal[4 * v + c]) elim[v] = c;
    if (field != nullptr && elim[v] < 0) elim[v] = 3;
  }
  auto is_eliminated = [&](int id) { return elim[id / 4] == id % 4; };

  std::vector<int> block(total, -1);
  int nvar = 0;
  for (int id = 0; id < total; ++id) {
    if (is_eliminated(id)) continue;
    if (internal[id] || field != nullptr) block[id] = nvar++;
  }
  const int dim = nvar * d;

  std::vector<CMat> t(total);
  std::vector<CVec> sh(total);
  for (int id = 0; id < total; ++id) {
    if (is_eliminated(id)) continue;
    t[id] = CMat::Zero(d, dim);
    sh[id] = CVec::Zero(d);
    if (block[id] >= 0)
      t[id].block(0, block[id] * d, d, d) = CMat::Identity(d, d);
    else
      sh[id] = externals[ext_pos[id]].cast<Complex>();
  }
  for (int v = 0; v < n; ++v) {
    if (elim[v] < 0) {
      Vec r = Vec::Zero(d);
      double scale = 0.0;
      for (int c = 0; c < 4; ++c) {
        const Vec& x = externals[ext_pos[4 * v + c]];
        r += corner_sign(c) * x;
        scale = std::max(scale, x.cwiseAbs().maxCoeff());
      }
      if (r.cwiseAbs().maxCoeff() > 1e-9 * (1.0 + scale))
        throw InvalidInput(
            "assemble_integrand: external positions violate a vertex constraint");
      continue;
    }
    const int kid = 4 * v + elim[v];
    const double sk = corner_sign(elim[v]);
    t[kid] = CMat::Zero(d, dim);
    sh[kid] = CVec::Zero(d);
    for (int c = 0; c < 4; ++c) {
      if (c == elim[v]) continue;
      const int cid = 4 * v + c;
      const double w = -sk * corner_sign(c);
      t[kid] += w * t[cid];
      sh[kid] += w * sh[cid];
    }
  }

  ExponentBuilder builder(dim);
  const CMat wedge_c = params.context.wedge.cast<Complex>();
  for (int v = 0; v < n; ++v)
    for (int c = 0; c < 4; ++c)
      for (int cp = c + 1; cp < 4; ++cp) {
        const double sgn = ((c + cp) % 2 == 0) ? -1.0 : 1.0;
        const int a = 4 * v + c, b = 4 * v + cp;
        builder.add_bilinear(Complex(0.0, -sgn) * wedge_c, t[a], sh[a], t[b], sh[b]);
      }
  const double ot = params.omega_tilde;
  const CMat g_c = params.g.g.cast<Complex>();
  for (int li = 0; li < graph.n_lines(); ++li) {
    const int a = corner_id(graph.lines[li][0]);
    const int b = corner_id(graph.lines[li][1]);
    const double th = std::tanh(0.5 * alphas[li]);
    GaussianFunction diff_part(CMat((ot / (4.0 * th)) * g_c), CVec::Zero(d), 1.0);
    GaussianFunction sum_part(CMat((ot * th / 4.0) * g_c), CVec::Zero(d), 1.0);
    builder.add_gaussian(diff_part, CMat(t[a] - t[b]), CVec(sh[a] - sh[b]));
    builder.add_gaussian(sum_part, CMat(t[a] + t[b]), CVec(sh[a] + sh[b]));
  }
  if (field != nullptr)
    for (const auto& e : graph.external) {
      const int id = corner_id(e);
      builder.add_gaussian(*field, t[id], sh[id]);
    }

  const double det_g = params.g.g.determinant();
  const double vertex_norm = det_g / std::pow(M_PI * params.theta, d);
  const double line_norm = params.theta * std::sqrt(det_g) / (4.0 * params.omega) *
                           std::pow(params.omega / (M_PI * params.theta), 0.5 * d);
  builder.multiply_prefactor(std::pow(vertex_norm, n) *
                             std::pow(line_norm, graph.n_lines()));
  return builder.build();
}

// Nested per-line quadrature of value_at over [epsilon, alpha_max]^L with the
// sinh^{-D/2} and mass weights attached at each level.
QuadratureEstimate<Complex> nested_alpha_integral(
    int n_lines, int d, double mass2, double ot, const CutoffSpec& cutoff,
    const std::function<Complex(const std::vector<double>&)>& value_at) {
  QuadratureOptions opt;
  opt.rel_tol = cutoff.rel_tol;
  opt.abs_tol = std::min(opt.abs_tol, cutoff.rel_tol);
  std::vector<double> alphas(n_lines, 0.0);
  std::function<QuadratureEstimate<Complex>(int)> level =
      [&](int li) -> QuadratureEstimate<Complex> {
    std::function<Complex(double)> f = [&, li](double a) -> Complex {
      alphas[li] = a;
      const double w =
          std::pow(std::sinh(a), -0.5 * d) * std::exp(-mass2 * a / (2.0 * ot));
      if (li + 1 == n_lines) return w * value_at(alphas);
      return w * level(li + 1).value;
    };
    return integrate_exp_mapped(f, cutoff.epsilon, cutoff.alpha_max - cutoff.epsilon,
                                opt);
  };
  return level(0);
}

}  // namespace

QuadraticIntegrand assemble_integrand(const FeynmanGraph& graph,
                                      const ModelParams& params,
                                      const std::vector<Vec>& externals,
                                      const std::vector<double>& alphas) {
  return assemble_impl(graph, params, externals, alphas, nullptr);
}

AmplitudeResult amplitude(const FeynmanGraph& graph, const ModelParams& params,
                          const std::vector<Vec>& externals,
                          const CutoffSpec& cutoff) {
  require(graph.n_lines() <= 3, "amplitude: at most 3 lines supported");
  AmplitudeResult out;
  out.n = graph.n_vertices;
  out.n_external = graph.n_external();
  out.epsilon = cutoff.epsilon;
  out.det_g_factor = std::pow(params.g.g.determinant(),
                              0.5 * (graph.n_vertices + 0.5 * graph.n_external()));
  if (graph.n_lines() == 0) {
    out.value = gaussian_integral(assemble_impl(graph, params, externals, {}, nullptr));
    out.abs_error = 0.0;
    return out;
  }
  auto est = nested_alpha_integral(
      graph.n_lines(), params.g.dim, params.mass2, params.omega_tilde, cutoff,
      [&](const std::vector<double>& alphas) {
        return gaussian_integral(assemble_impl(graph, params, externals, alphas, nullptr));
      });
  out.value = est.value;
  out.abs_error = est.abs_error;
  return out;
}

double check_covariance(const FeynmanGraph& graph, const ModelParams& params,
                        const std::vector<Vec>& externals, const CutoffSpec& cutoff) {
  AmplitudeResult left = amplitude(graph, params, externals, cutoff);
  OrthogonalMap r = decompose_adapted(params.sigma, params.g);
  ModelParams st = params.standard_like();
  std::vector<Vec> mapped;
  mapped.reserve(externals.size());
  for (const auto& x : externals)
    mapped.push_back(r.lambda * (params.g.g_sqrt * x));
  AmplitudeResult right = amplitude(graph, st, mapped, cutoff);
  const Complex rhs = left.det_g_factor * right.value;
  const double scale = std::max(std::abs(left.value), std::abs(rhs));
  if (scale == 0.0) return 0.0;
  return std::abs(left.value - rhs) / scale;
}

double check_orthogonal_invariance(const FeynmanGraph& graph,
                                   const ModelParams& params,
                                   const std::vector<Vec>& externals,
                                   const OrthogonalMap& map,
                                   const CutoffSpec& cutoff) {
  require(max_abs_diff(map.metric.g, params.g.g) <= 1e-10,
          "check_orthogonal_invariance: map must be orthogonal for the model metric");
  AmplitudeResult base = amplitude(graph, params, externals, cutoff);
  SymplecticStructure sig2 = orthogonal_action(map, params.sigma);
  ModelParams moved(params.g, sig2, params.theta, params.omega, params.mass2,
                    params.lambda);
  std::vector<Vec> mapped;
  mapped.reserve(externals.size());
  for (const auto& x : externals) mapped.push_back(map.lambda * x);
  AmplitudeResult other = amplitude(graph, moved, mapped, cutoff);
  const double scale = std::max(std::abs(base.value), std::abs(other.value));
  if (scale == 0.0) return 0.0;
  return std::abs(base.value - other.value) / scale;
}

Complex effective_action_term(const std::vector<WeightedGraph>& graphs,
                              const ModelParams& params, const FieldConfig& field,
                              const CutoffSpec& cutoff) {
  Complex total = 0.0;
  for (const auto& wg : graphs) {
    require(wg.graph.n_lines() <= 3,
            "effective_action_term: at most 3 lines per graph");
    Complex value;
    if (wg.graph.n_lines() == 0) {
      value = gaussian_integral(assemble_impl(wg.graph, params, {}, {}, &field.phi));
    } else {
      value = nested_alpha_integral(
                  wg.graph.n_lines(), params.g.dim, params.mass2, params.omega_tilde,
                  cutoff,
                  [&](const std::vector<double>& alphas) {
                    return gaussian_integral(
                        assemble_impl(wg.graph, params, {}, alphas, &field.phi));
                  })
                  .value;
    }
    total += wg.weight * value;
  }
  return total;
}

}  // namespace moyalharm
