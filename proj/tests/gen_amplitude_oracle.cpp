// Regenerates tests/data/amplitude_oracle.json: reference tadpole amplitudes
// computed by direct quadrature. The delta constraint is substituted by hand,
// the free internal corner is integrated on a tensor Gauss-Legendre box and
// the Schwinger parameter by adaptive Simpson, so no step shares code with
// the closed-form Gaussian reduction used by amplitude().
//
// Usage: gen_amplitude_oracle <output.json>

#include <array>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <vector>

#include "json.hpp"
#include "moyalharm/quadrature.hpp"
#include "oracles.hpp"

using moyalharm::Complex;
using moyalharm::Mat;
using moyalharm::Vec;

namespace {

struct Config {
  std::string name;
  std::string graph;  // "planar" or "nonplanar"
  Mat g;
  Mat sigma;
  double theta;
  double omega;
  double mass2;
  double epsilon;
  Vec e0;  // external corner positions
  Vec e1;
  double box;
  int nodes;
};

// exp(-i sum_{c<c'} (-1)^{c+c'+1} x_c ^ x_{c'}) with ^ given by wedge.
Complex phase(const Mat& wedge, const std::array<Vec, 4>& x) {
  double e = 0.0;
  for (int c = 0; c < 4; ++c)
    for (int cp = c + 1; cp < 4; ++cp) {
      double sgn = ((c + cp) % 2 == 0) ? -1.0 : 1.0;
      e += sgn * x[c].dot(wedge * x[cp]);
    }
  return std::exp(Complex(0.0, -e));
}

Complex brute_force(const Config& cfg) {
  const int d = 2;
  const double det_g = cfg.g.determinant();
  const double ot = 2.0 * cfg.omega / cfg.theta;
  const Mat wedge = (2.0 / cfg.theta) * cfg.g * cfg.sigma.inverse() * cfg.g;

  const double vertex_pref = det_g / std::pow(M_PI * cfg.theta, d);
  const double line_pref = cfg.theta * std::sqrt(det_g) / (4.0 * cfg.omega) *
                           std::pow(cfg.omega / (M_PI * cfg.theta), d / 2.0);

  // Corner layout: planar line joins corners (1,2), externals (0,3);
  // non-planar line joins (1,3), externals (0,2). The constraint
  // x0 - x1 + x2 - x3 = 0 fixes the higher internal corner.
  const bool planar = cfg.graph == "planar";

  std::function<Complex(double)> alpha_integrand = [&](double a) {
    double cth = 1.0 / std::tanh(a / 2.0);
    double tnh = std::tanh(a / 2.0);
    std::function<Complex(const Vec&)> inner = [&](const Vec& u) {
      std::array<Vec, 4> x;
      Vec la, lb;
      if (planar) {
        x[0] = cfg.e0;
        x[1] = u;
        x[2] = u + cfg.e1 - cfg.e0;  // x2 = x1 + x3 - x0
        x[3] = cfg.e1;
        la = x[1];
        lb = x[2];
      } else {
        x[0] = cfg.e0;
        x[1] = u;
        x[2] = cfg.e1;
        x[3] = cfg.e0 - u + cfg.e1;  // x3 = x0 - x1 + x2
        la = x[1];
        lb = x[3];
      }
      Vec diff = la - lb, sum = la + lb;
      double kern = std::exp(-(ot / 4.0) * (cth * diff.dot(cfg.g * diff) +
                                            tnh * sum.dot(cfg.g * sum)));
      return phase(wedge, x) * kern;
    };
    double weight = std::pow(std::sinh(a), -d / 2.0) *
                    std::exp(-cfg.mass2 * a / (2.0 * ot));
    return weight * oracle::tensor_gl_box(inner, d, -cfg.box, cfg.box, cfg.nodes);
  };

  Complex integral =
      oracle::adaptive_simpson(alpha_integrand, cfg.epsilon, 40.0, 1e-10, 44);
  return vertex_pref * line_pref * integral;
}

nlohmann::json mat_json(const Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gen_amplitude_oracle <output.json>\n";
    return 2;
  }

  Mat id2 = Mat::Identity(2, 2);
  Mat sigma_st(2, 2);
  sigma_st << 0, -1, 1, 0;
  Mat g_aniso(2, 2);
  g_aniso << 4, 0, 0, 1;
  Mat sigma_aniso(2, 2);
  sigma_aniso << 0, -2, 2, 0;  // G^{1/2} Sigma_st G^{1/2}

  Vec e0(2), e1(2);
  e0 << 0.3, 0.0;
  e1 << -0.1, 0.2;

  std::vector<Config> configs = {
      {"planar-standard", "planar", id2, sigma_st, 1.0, 0.5, 1.0, 0.2, e0, e1,
       14.0, 96},
      {"nonplanar-standard", "nonplanar", id2, sigma_st, 1.0, 0.8, 0.5, 0.4, e0,
       e1, 6.0, 96},
      {"planar-anisotropic", "planar", g_aniso, sigma_aniso, 1.0, 0.5, 1.0, 0.2,
       e0, e1, 14.0, 112},
  };

  nlohmann::json out;
  out["configs"] = nlohmann::json::array();
  for (const Config& cfg : configs) {
    std::cerr << "computing " << cfg.name << "...\n";
    Complex value = brute_force(cfg);
    nlohmann::json entry;
    entry["name"] = cfg.name;
    entry["graph"] = cfg.graph;
    entry["g"] = mat_json(cfg.g);
    entry["sigma"] = mat_json(cfg.sigma);
    entry["theta"] = cfg.theta;
    entry["omega"] = cfg.omega;
    entry["mass2"] = cfg.mass2;
    entry["epsilon"] = cfg.epsilon;
    entry["externals"] = {{cfg.e0(0), cfg.e0(1)}, {cfg.e1(0), cfg.e1(1)}};
    entry["value_re"] = value.real();
    entry["value_im"] = value.imag();
    entry["box"] = cfg.box;
    entry["nodes"] = cfg.nodes;
    out["configs"].push_back(entry);
    std::cerr << "  " << value.real() << (value.imag() < 0 ? " - " : " + ")
              << std::abs(value.imag()) << "i\n";
  }

  std::ofstream f(argv[1]);
  f << out.dump(2) << "\n";
  if (!f) {
    std::cerr << "failed to write " << argv[1] << "\n";
    return 1;
  }
  std::cerr << "wrote " << argv[1] << "\n";
  return 0;
}
