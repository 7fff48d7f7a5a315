#pragma once

#include <functional>
#include <vector>

#include "moyalharm/common.hpp"

namespace moyalharm {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_panels = 2000;
};

template <typename T>
struct QuadratureEstimate {
  T value;
  double abs_error;
};

// Adaptive Gauss-Kronrod 15(7) panels on [a, b]. Panels are split worst
// error first with deterministic tie-breaking and the final sum runs in
// left-to-right panel order, so results are reproducible. Throws
// QuadratureFailure if the panel budget is exhausted above tolerance.
QuadratureEstimate<double> adaptive_integrate(const std::function<double(double)>& f,
                                              double a, double b,
                                              const QuadratureOptions& opt = {});
QuadratureEstimate<Complex> adaptive_integrate(const std::function<Complex(double)>& f,
                                               double a, double b,
                                               const QuadratureOptions& opt = {});

// Integral over [lo, lo + range] of f via the exponential map
// alpha = lo - log(1 - u), u in [0, u_max]; used for the semi-infinite
// Schwinger parameter with range = alpha_max - epsilon.
QuadratureEstimate<double> integrate_exp_mapped(const std::function<double(double)>& f,
                                                double lo, double range,
                                                const QuadratureOptions& opt = {});
QuadratureEstimate<Complex> integrate_exp_mapped(const std::function<Complex(double)>& f,
                                                 double lo, double range,
                                                 const QuadratureOptions& opt = {});

// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
// Legendre polynomial; machine-precision for n up to several hundred.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace moyalharm
