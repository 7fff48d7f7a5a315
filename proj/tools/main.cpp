// moyalharm: batch CLI over the core library. Machine-readable records go to
// stdout as one JSON object per line; a human summary goes to stderr. Output
// carries no timestamps, so identical inputs give byte-identical stdout.
//
// Exit codes: 0 success / all checks pass, 1 verdict failure (not adapted, or
// a verification check failed), 2 invalid input or precondition, 3 quadrature
// convergence failure.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "moyalharm/feynman.hpp"

using namespace moyalharm;
using ojson = nlohmann::ordered_json;

namespace {

struct RunConfig {
  int dimension = 2;
  double theta = 1.0;
  double omega = 0.5;
  double mass2 = 1.0;
  double lambda = 1.0;
  std::optional<Mat> metric;
  std::optional<Mat> sigma;
  std::optional<std::uint64_t> sigma_seed;  // sigma: "adapted-random:<seed>"
  double epsilon = 0.2;
  double tolerance = 1e-8;  // adaptive-quadrature relative tolerance
  std::uint64_t seed = 42;
  std::string graph_path;
  std::vector<Vec> externals;
  std::optional<std::uint64_t> map_seed;
  std::optional<Mat> field_a;
  std::optional<Vec> field_b;
  double field_c = 1.0;
};

struct Overrides {
  std::optional<double> theta, omega, epsilon, tol;
  std::optional<std::uint64_t> seed;
  std::string config_path;
  std::string graph_path;  // --graph wins over the config file
};

Mat parse_matrix(const ojson& j, const char* key) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw InvalidInput(std::string(key) + ": expected an array of rows");
  int rows = static_cast<int>(j.size());
  int cols = static_cast<int>(j[0].size());
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols)
      throw InvalidInput(std::string(key) + ": ragged rows");
    for (int c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
  }
  return m;
}

Vec parse_vector(const ojson& j, const char* key) {
  if (!j.is_array()) throw InvalidInput(std::string(key) + ": expected an array");
  Vec v(static_cast<int>(j.size()));
  for (int i = 0; i < v.size(); ++i) v(i) = j[i].get<double>();
  return v;
}

ojson mat_to_json(const Mat& m) {
  ojson rows = ojson::array();
  for (int i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

ojson vec_to_json(const Vec& v) {
  ojson a = ojson::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

RunConfig load_config(const Overrides& ov) {
  RunConfig cfg;
  if (!ov.config_path.empty()) {
    std::ifstream f(ov.config_path);
    if (!f.good()) throw InvalidInput("cannot open config file " + ov.config_path);
    ojson j;
    try {
      j = ojson::parse(f);
    } catch (const nlohmann::json::exception& e) {
      throw InvalidInput(std::string("config parse error: ") + e.what());
    }
    if (j.contains("dimension")) cfg.dimension = j["dimension"].get<int>();
    if (j.contains("theta")) cfg.theta = j["theta"].get<double>();
    if (j.contains("omega")) cfg.omega = j["omega"].get<double>();
    if (j.contains("mass2")) cfg.mass2 = j["mass2"].get<double>();
    if (j.contains("lambda")) cfg.lambda = j["lambda"].get<double>();
    if (j.contains("epsilon")) cfg.epsilon = j["epsilon"].get<double>();
    if (j.contains("tolerance")) cfg.tolerance = j["tolerance"].get<double>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("graph")) cfg.graph_path = j["graph"].get<std::string>();
    if (j.contains("map_seed")) cfg.map_seed = j["map_seed"].get<std::uint64_t>();
    if (j.contains("metric")) cfg.metric = parse_matrix(j["metric"], "metric");
    if (j.contains("sigma")) {
      const ojson& s = j["sigma"];
      if (s.is_string()) {
        std::string tok = s.get<std::string>();
        const std::string prefix = "adapted-random";
        if (tok.rfind(prefix, 0) != 0)
          throw InvalidInput("sigma: unknown token \"" + tok + "\"");
        if (tok.size() > prefix.size() && tok[prefix.size()] == ':')
          cfg.sigma_seed = std::stoull(tok.substr(prefix.size() + 1));
        else
          cfg.sigma_seed = cfg.seed;
      } else {
        cfg.sigma = parse_matrix(s, "sigma");
      }
    }
    if (j.contains("externals")) {
      for (const ojson& p : j["externals"])
        cfg.externals.push_back(parse_vector(p, "externals"));
    }
    if (j.contains("field")) {
      const ojson& fj = j["field"];
      if (fj.contains("a")) cfg.field_a = parse_matrix(fj["a"], "field.a");
      if (fj.contains("b")) cfg.field_b = parse_vector(fj["b"], "field.b");
      if (fj.contains("c")) cfg.field_c = fj["c"].get<double>();
    }
  }
  if (ov.theta) cfg.theta = *ov.theta;
  if (ov.omega) cfg.omega = *ov.omega;
  if (ov.epsilon) cfg.epsilon = *ov.epsilon;
  if (ov.tol) cfg.tolerance = *ov.tol;
  if (ov.seed) cfg.seed = *ov.seed;
  if (!ov.graph_path.empty()) cfg.graph_path = ov.graph_path;
  return cfg;
}

Metric build_metric(const RunConfig& cfg) {
  if (cfg.metric) {
    Metric g(*cfg.metric);
    if (g.dim != cfg.dimension)
      throw InvalidInput("metric dimension does not match the configured dimension");
    return g;
  }
  return Metric::identity(cfg.dimension);
}

SymplecticStructure build_sigma(const RunConfig& cfg, const Metric& g) {
  if (cfg.sigma) {
    SymplecticStructure s(*cfg.sigma);
    if (s.dim != g.dim) throw InvalidInput("sigma dimension does not match metric");
    return s;
  }
  if (cfg.sigma_seed) {
    SeededRng rng(*cfg.sigma_seed);
    return random_adapted_sigma(g, rng);
  }
  // canonical adapted partner of g
  return SymplecticStructure(
      Mat(g.g_sqrt * standard_structures(g.dim).sigma.sigma * g.g_sqrt));
}

ModelParams build_params(const RunConfig& cfg) {
  Metric g = build_metric(cfg);
  return ModelParams(g, build_sigma(cfg, g), cfg.theta, cfg.omega, cfg.mass2,
                     cfg.lambda);
}

FieldConfig build_field(const RunConfig& cfg) {
  int d = cfg.dimension;
  Mat a = cfg.field_a ? *cfg.field_a : Mat(Mat::Identity(d, d));
  Vec b = cfg.field_b ? *cfg.field_b : Vec(Vec::Zero(d));
  return FieldConfig(a, b, cfg.field_c);
}

std::vector<Vec> resolve_externals(const RunConfig& cfg, const GraphFile& gf,
                                   int need) {
  std::vector<Vec> ext = cfg.externals.empty() ? gf.positions : cfg.externals;
  if (static_cast<int>(ext.size()) != need)
    throw InvalidInput("need " + std::to_string(need) +
                       " external points (config \"externals\" or graph "
                       "\"positions\"), got " +
                       std::to_string(ext.size()));
  for (const Vec& v : ext)
    if (v.size() != cfg.dimension)
      throw InvalidInput("external point dimension does not match configuration");
  return ext;
}

void emit(const ojson& record) { std::cout << record.dump() << "\n"; }

std::string params_digest(const RunConfig& cfg) {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "D=%d theta=%g omega=%g m2=%g lambda=%g eps=%g seed=%llu",
                cfg.dimension, cfg.theta, cfg.omega, cfg.mass2, cfg.lambda,
                cfg.epsilon, static_cast<unsigned long long>(cfg.seed));
  return buf;
}

// ---- adapt ------------------------------------------------------------------

int cmd_adapt(const RunConfig& cfg) {
  Metric g = build_metric(cfg);
  SymplecticStructure sigma = build_sigma(cfg, g);
  std::optional<ComplexStructure> witness = adapted_witness(sigma, g);
  ojson rec{{"command", "adapt"}, {"dimension", g.dim}};
  if (!witness) {
    rec["adapted"] = false;
    emit(rec);
    std::fprintf(stderr, "adapted: false\n");
    return 1;
  }
  OrthogonalMap r = decompose_adapted(sigma, g);
  Mat rebuilt = g.g_sqrt * r.lambda.transpose() *
                standard_structures(g.dim).sigma.sigma * r.lambda * g.g_sqrt;
  double residual = max_abs_diff(sigma.sigma, rebuilt);
  rec["adapted"] = true;
  rec["witness"] = mat_to_json(witness->i_matrix);
  rec["r"] = mat_to_json(r.lambda);
  rec["residual"] = residual;
  emit(rec);
  std::fprintf(stderr, "adapted: true\nround-trip residual: %.3e\n", residual);
  return 0;
}

// ---- verify -----------------------------------------------------------------

struct Verifier {
  std::string digest;
  bool all_pass = true;
  int n_checks = 0;

  template <typename Fn>
  void run(const std::string& check, double tol, Fn&& residual_fn) {
    double residual;
    try {
      residual = residual_fn();
    } catch (const QuadratureFailure& e) {
      throw QuadratureFailure(check + ": " + e.what(), e.achieved_error);
    }
    bool pass = residual < tol;
    all_pass = all_pass && pass;
    ++n_checks;
    emit(ojson{{"check", check},
               {"params", digest},
               {"residual", residual},
               {"tolerance", tol},
               {"pass", pass}});
    std::fprintf(stderr, "[%s] %-28s residual %.3e  (tol %.0e)\n",
                 pass ? "pass" : "FAIL", check.c_str(), residual, tol);
  }
};

void suite_star(const RunConfig& cfg, Verifier& v) {
  Metric g = build_metric(cfg);
  SymplecticStructure sigma = build_sigma(cfg, g);
  MoyalContext ctx(g, sigma, cfg.theta);
  int d = g.dim;
  SeededRng rng(cfg.seed);
  for (int k = 0; k < 5; ++k) {
    CVec la(d), lb(d);
    for (int i = 0; i < d; ++i) {
      la(i) = Complex(0.3 * rng.gaussian(), 0.3 * rng.gaussian());
      lb(i) = Complex(0.3 * rng.gaussian(), 0.3 * rng.gaussian());
    }
    GaussianFunction a(random_spd_matrix(d, rng, 0.4, 2.0).cast<Complex>(), la,
                       Complex(1.0, 0.2));
    GaussianFunction b(random_spd_matrix(d, rng, 0.4, 2.0).cast<Complex>(), lb,
                       Complex(0.8, -0.1));
    GaussianFunction c = GaussianFunction::isotropic(d, 0.8, 1.0);
    v.run("tracial-" + std::to_string(k), 1e-8,
          [&] { return check_tracial(ctx, a, b); });
    v.run("associativity-" + std::to_string(k), 1e-9,
          [&] { return check_associativity(ctx, a, b, c); });
  }
  v.run("commutator", 1e-12, [&] {
    Mat expected =
        ctx.calibrated_sign * ctx.theta * g.g_inv * sigma.sigma * g.g_inv;
    return max_abs_diff(commutator_matrix(ctx), expected);
  });
}

void suite_action(const RunConfig& cfg, Verifier& v) {
  ModelParams params = build_params(cfg);
  FieldConfig field = build_field(cfg);
  for (int k = 0; k < 5; ++k) {
    OrthogonalMap lam = random_orthogonal(params.g, cfg.seed + k);
    v.run("classical-invariance-" + std::to_string(k), 1e-8,
          [&] { return check_classical_invariance(params, field, lam); });
  }
}

void suite_propagator(const RunConfig& cfg, Verifier& v) {
  ModelParams params = build_params(cfg);
  if (!params.adapted)
    throw NotAdapted("propagator suite requires sigma adapted to the metric");
  MehlerKernel k(params.g, params.omega, params.theta, params.mass2);
  CutoffSpec cutoff(cfg.epsilon, 40.0, cfg.tolerance);
  int d = params.g.dim;

  v.run("propagator-symmetry", 1e-12, [&] {
    Vec x = Vec::Constant(d, 0.3), y = Vec::Constant(d, -0.1);
    double a = propagator_value(k, x, y, cutoff).value;
    double b = propagator_value(k, y, x, cutoff).value;
    return std::abs(a - b) / std::abs(a);
  });

  v.run("metric-scaling", 1e-10, [&] {
    MehlerKernel kstd(Metric::identity(d), params.omega, params.theta,
                      params.mass2);
    double worst = 0.0;
    for (const Vec& p : halton_points(d, 3, -0.8, 0.8)) {
      Vec q = Vec::Constant(d, 0.2);
      double lhs = propagator_value(k, p, q, cutoff).value;
      double rhs =
          std::sqrt(params.g.g.determinant()) *
          propagator_value(kstd, Vec(params.g.g_sqrt * p), Vec(params.g.g_sqrt * q),
                           cutoff)
              .value;
      worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
    }
    return worst;
  });

  // residual sequence must shrink; record the last/first ratio
  v.run("green-convergence", 0.34, [&] {
    GaussianFunction f = GaussianFunction::isotropic(d, 0.5, 1.0);
    Vec x0 = Vec::Constant(d, 0.3);
    std::vector<double> res =
        check_green_property(k, f, x0, {0.4, 0.2, 0.1, 0.05});
    for (std::size_t i = 1; i < res.size(); ++i)
      if (res[i] >= res[i - 1]) return 1.0;
    return res.back() / res.front();
  });
}

void suite_covariance(const RunConfig& cfg, Verifier& v) {
  if (cfg.graph_path.empty())
    throw InvalidInput("covariance suite requires a graph file");
  ModelParams params = build_params(cfg);
  if (!params.adapted)
    throw NotAdapted("covariance suite requires sigma adapted to the metric");
  GraphFile gf = load_graph(cfg.graph_path);
  std::vector<Vec> ext = resolve_externals(cfg, gf, gf.graph.n_external());
  for (double eps : {cfg.epsilon, cfg.epsilon / 2.0}) {
    char name[48];
    std::snprintf(name, sizeof name, "covariance-eps%g", eps);
    v.run(name, 1e-5, [&] {
      return check_covariance(gf.graph, params, ext,
                              CutoffSpec(eps, 40.0, cfg.tolerance));
    });
  }
}

void suite_invariance(const RunConfig& cfg, Verifier& v) {
  if (cfg.graph_path.empty())
    throw InvalidInput("invariance suite requires a graph file");
  ModelParams params = build_params(cfg);
  if (!params.adapted)
    throw NotAdapted("invariance suite requires sigma adapted to the metric");
  GraphFile gf = load_graph(cfg.graph_path);
  std::vector<Vec> ext = resolve_externals(cfg, gf, gf.graph.n_external());
  OrthogonalMap lam =
      random_orthogonal(params.g, cfg.map_seed ? *cfg.map_seed : cfg.seed);
  CutoffSpec cutoff(cfg.epsilon, 40.0, cfg.tolerance);

  v.run("amplitude-invariance", 1e-5, [&] {
    return check_orthogonal_invariance(gf.graph, params, ext, lam, cutoff);
  });
  v.run("effective-action-invariance", 1e-5, [&] {
    FieldConfig field = build_field(cfg);
    Complex base = effective_action_term({{gf.graph, 1.0}}, params, field, cutoff);
    ModelParams moved(params.g, orthogonal_action(lam, params.sigma), params.theta,
                      params.omega, params.mass2, params.lambda);
    Complex turned = effective_action_term({{gf.graph, 1.0}}, moved,
                                           transform_field(lam, field), cutoff);
    return std::abs(turned - base) / std::abs(base);
  });
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
  Verifier v;
  v.digest = params_digest(cfg);
  if (suite == "star" || suite == "all") suite_star(cfg, v);
  if (suite == "action" || suite == "all") suite_action(cfg, v);
  if (suite == "propagator" || suite == "all") suite_propagator(cfg, v);
  if (suite == "covariance" || suite == "all") suite_covariance(cfg, v);
  if (suite == "invariance" || suite == "all") suite_invariance(cfg, v);
  if (v.n_checks == 0)
    throw InvalidInput("unknown suite \"" + suite +
                       "\" (star, action, propagator, covariance, invariance, all)");
  std::fprintf(stderr, "verify %s: %s (%d checks)\n", suite.c_str(),
               v.all_pass ? "all passed" : "FAILURES", v.n_checks);
  return v.all_pass ? 0 : 1;
}

// ---- amplitude --------------------------------------------------------------

void write_alpha_scan(const FeynmanGraph& graph, const ModelParams& params,
                      const std::vector<Vec>& ext, const RunConfig& cfg,
                      int points, const std::string& path) {
  int n_lines = graph.n_lines();
  if (n_lines == 0) throw InvalidInput("alpha scan needs a graph with lines");
  if (points < 2) throw InvalidInput("alpha scan needs at least 2 points");
  std::ofstream out(path);
  if (!out.good()) throw InvalidInput("cannot open scan output file " + path);
  for (int l = 1; l <= n_lines; ++l) out << "alpha_" << l << ",";
  out << "re,im\n";

  const double lo = cfg.epsilon, hi = 40.0;
  const double d = static_cast<double>(params.g.dim);
  auto weight = [&](double a) {
    return std::pow(std::sinh(a), -0.5 * d) *
           std::exp(-params.mass2 * a / (2.0 * params.omega_tilde));
  };
  std::vector<int> idx(n_lines, 0);
  std::vector<double> alphas(n_lines);
  long total = 1;
  for (int l = 0; l < n_lines; ++l) total *= points;
  for (long row = 0; row < total; ++row) {
    long rem = row;
    for (int l = 0; l < n_lines; ++l) {
      idx[l] = static_cast<int>(rem % points);
      rem /= points;
      alphas[l] = lo * std::pow(hi / lo, idx[l] / double(points - 1));
    }
    QuadraticIntegrand q = assemble_integrand(graph, params, ext, alphas);
    Complex val = gaussian_integral(q);
    for (int l = 0; l < n_lines; ++l) val *= weight(alphas[l]);
    char buf[64];
    for (int l = 0; l < n_lines; ++l) {
      std::snprintf(buf, sizeof buf, "%.17g,", alphas[l]);
      out << buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", val.real(), val.imag());
    out << buf;
  }
}

int cmd_amplitude(const RunConfig& cfg, int scan_points,
                  const std::string& scan_out) {
  if (cfg.graph_path.empty())
    throw InvalidInput("amplitude needs a graph file (config \"graph\" or --graph)");
  GraphFile gf = load_graph(cfg.graph_path);
  ModelParams params = build_params(cfg);
  std::vector<Vec> ext = resolve_externals(cfg, gf, gf.graph.n_external());
  CutoffSpec cutoff(cfg.epsilon, 40.0, cfg.tolerance);
  AmplitudeResult r = amplitude(gf.graph, params, ext, cutoff);
  ojson rec{{"command", "amplitude"},   {"graph", cfg.graph_path},
            {"n", r.n},                 {"n_external", r.n_external},
            {"epsilon", r.epsilon},     {"value_re", r.value.real()},
            {"value_im", r.value.imag()}, {"abs_error", r.abs_error},
            {"det_g_factor", r.det_g_factor}};
  if (scan_points > 0) {
    write_alpha_scan(gf.graph, params, ext, cfg, scan_points, scan_out);
    rec["alpha_scan"] = scan_out;
  }
  emit(rec);
  std::fprintf(stderr, "amplitude = %.12g %+.12g i  (abs err %.2e, eps %g)\n",
               r.value.real(), r.value.imag(), r.abs_error, r.epsilon);
  if (scan_points > 0)
    std::fprintf(stderr, "alpha scan written to %s\n", scan_out.c_str());
  return 0;
}

// ---- propagator -------------------------------------------------------------

int cmd_propagator(const RunConfig& cfg) {
  ModelParams params = build_params(cfg);
  if (!params.adapted)
    throw NotAdapted("propagator requires sigma adapted to the metric");
  int d = params.g.dim;
  Vec x = Vec::Zero(d), y = Vec::Zero(d);
  if (cfg.externals.size() >= 1) x = cfg.externals[0];
  if (cfg.externals.size() >= 2) y = cfg.externals[1];
  if (x.size() != d || y.size() != d)
    throw InvalidInput("propagator points must match the configured dimension");
  MehlerKernel k(params.g, params.omega, params.theta, params.mass2);
  PropagatorValue pv = propagator_value(k, x, y, CutoffSpec(cfg.epsilon, 40.0,
                                                            cfg.tolerance));
  emit(ojson{{"command", "propagator"},
             {"x", vec_to_json(x)},
             {"y", vec_to_json(y)},
             {"epsilon", cfg.epsilon},
             {"value", pv.value},
             {"abs_error", pv.abs_error}});
  std::fprintf(stderr, "propagator = %.12g  (abs err %.2e, eps %g)\n", pv.value,
               pv.abs_error, cfg.epsilon);
  return 0;
}

// ---- action -----------------------------------------------------------------

int cmd_action(const RunConfig& cfg) {
  ModelParams params = build_params(cfg);
  FieldConfig field = build_field(cfg);
  ActionTerms t = action_terms(params, field);
  emit(ojson{{"command", "action"},
             {"kinetic", t.kinetic},
             {"harmonic", t.harmonic},
             {"mass", t.mass},
             {"quartic", t.quartic},
             {"total", t.total()}});
  std::fprintf(stderr,
               "S[phi] = %.12g  (kinetic %.6g, harmonic %.6g, mass %.6g, "
               "quartic %.6g)\n",
               t.total(), t.kinetic, t.harmonic, t.mass, t.quartic);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scalar field theory with harmonic term on Moyal space"};
  app.require_subcommand(1);

  Overrides ov;
  std::string suite = "all";
  int scan_points = 0;
  std::string scan_out = "alpha_scan.csv";

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", ov.config_path, "JSON config file");
    cmd->add_option("--theta", ov.theta, "override theta");
    cmd->add_option("--omega", ov.omega, "override omega");
    cmd->add_option("--epsilon", ov.epsilon, "override the Schwinger cutoff");
    cmd->add_option("--seed", ov.seed, "override the seed");
    cmd->add_option("--tol", ov.tol, "override the quadrature tolerance");
  };

  CLI::App* adapt = app.add_subcommand(
      "adapt", "test adaptedness and decompose onto the standard pair");
  add_common(adapt);

  CLI::App* verify = app.add_subcommand("verify", "run a residual check suite");
  verify->add_option("suite", suite,
                     "star, action, propagator, covariance, invariance, all");
  verify->add_option("--graph", ov.graph_path, "graph file for covariance/invariance");
  add_common(verify);

  CLI::App* ampl =
      app.add_subcommand("amplitude", "regularized amplitude of a graph");
  ampl->add_option("--graph", ov.graph_path, "graph file");
  ampl->add_option("--alpha-scan", scan_points,
                   "emit a CSV table of the alpha integrand on an N-point grid");
  ampl->add_option("--scan-out", scan_out, "CSV output path for --alpha-scan");
  add_common(ampl);

  CLI::App* prop = app.add_subcommand(
      "propagator", "propagator value between two configured points");
  add_common(prop);

  CLI::App* act =
      app.add_subcommand("action", "classical action of the configured field");
  add_common(act);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    RunConfig cfg = load_config(ov);
    if (adapt->parsed()) return cmd_adapt(cfg);
    if (verify->parsed()) return cmd_verify(cfg, suite);
    if (ampl->parsed()) return cmd_amplitude(cfg, scan_points, scan_out);
    if (prop->parsed()) return cmd_propagator(cfg);
    if (act->parsed()) return cmd_action(cfg);
    return 2;
  } catch (const QuadratureFailure& e) {
    std::fprintf(stderr, "quadrature failure: %s\n", e.what());
    return 3;
  } catch (const NotAdapted& e) {
    std::fprintf(stderr, "precondition error: %s\n", e.what());
    return 2;
  } catch (const InvalidInput& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
