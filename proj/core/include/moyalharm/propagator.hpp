#pragma once

#include <optional>
#include <vector>

#include "moyalharm/action.hpp"
#include "moyalharm/quadrature.hpp"

namespace moyalharm {

// Regularization of the Schwinger parameter integral: [epsilon, alpha_max]
// with the stated quadrature tolerance.
struct CutoffSpec {
  double epsilon;
  double alpha_max = 40.0;
  double rel_tol = 1e-10;

  explicit CutoffSpec(double epsilon_in, double alpha_max_in = 40.0,
                      double rel_tol_in = 1e-10);
};

// Mehler kernel data. Deliberately holds no symplectic structure: for an
// adapted pair the confining potential reduces to the metric form, so the
// kernel depends on (G, omega, theta, m^2) only.
struct MehlerKernel {
  Metric g;
  double omega;
  double theta;
  double mass2;
  double omega_tilde;

  MehlerKernel(Metric g_in, double omega_in, double theta_in, double mass2_in);

  // Requires an adapted pair and omega > 0.
  explicit MehlerKernel(const ModelParams& params);
};

// exp( -(ot/4) [ coth(a/2) (x-y) G (x-y) + tanh(a/2) (x+y) G (x+y) ] ).
double kernel_at(const MehlerKernel& k, const Vec& x, const Vec& y, double alpha);

// theta sqrt(det G) / (4 omega) (omega/(pi theta))^{D/2}
//   int_eps^inf da sinh^{-D/2}(a) exp(-m^2 a / (2 ot)) kernel_at(x, y, a).
struct PropagatorValue {
  double value;
  double abs_error;
};
PropagatorValue propagator_value(const MehlerKernel& k, const Vec& x, const Vec& y,
                                 const CutoffSpec& cutoff);

// For each epsilon in the sequence, |int dy C_eps(x0, y) (O f)(y) - f(x0)|
// where O = -G^{-1} dd + (2 omega_op / theta)^2 x G x + m^2 is the quadratic
// form operator the propagator inverts. Passing omega_op different from the
// kernel's omega (e.g. 0) gives the negative control, whose residuals do not
// converge. The inner y integral is a Gaussian moment in closed form; only
// the Schwinger parameter is quadratured.
std::vector<double> check_green_property(const MehlerKernel& k,
                                         const GaussianFunction& testfn, const Vec& x0,
                                         const std::vector<double>& epsilons,
                                         std::optional<double> omega_op = std::nullopt);

}  // namespace moyalharm
