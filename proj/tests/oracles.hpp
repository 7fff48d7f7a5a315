#pragma once

// Reference integrators for the test suite, deliberately independent of the
// library's Gauss-Kronrod panels and of the closed-form Gaussian calculus:
// recursive adaptive Simpson in one dimension and tensor Gauss-Legendre over
// boxes in up to four dimensions.

#include <cmath>
#include <functional>
#include <vector>

#include "moyalharm/common.hpp"
#include "moyalharm/quadrature.hpp"

namespace oracle {

using moyalharm::Complex;
using moyalharm::Vec;

template <typename T>
T simpson_step(const std::function<T(double)>& f, double a, double b, T fa, T fm,
               T fb, T whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  T flm = f(lm), frm = f(rm);
  T left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  T right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  T delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename T>
T adaptive_simpson(const std::function<T(double)>& f, double a, double b,
                   double tol = 1e-12, int depth = 40) {
  T fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  T whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, depth);
}

// Tensor-product Gauss-Legendre over [lo, hi]^k. Exact bookkeeping of the
// index loops keeps evaluation order deterministic.
inline Complex tensor_gl_box(const std::function<Complex(const Vec&)>& f, int k,
                             double lo, double hi, int n) {
  std::vector<double> nodes, weights;
  moyalharm::gauss_legendre(n, nodes, weights);
  double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    x[i] = mid + half * nodes[i];
    w[i] = half * weights[i];
  }
  std::vector<int> idx(k, 0);
  Vec point(k);
  Complex sum = 0.0;
  while (true) {
    double weight = 1.0;
    for (int a = 0; a < k; ++a) {
      point(a) = x[idx[a]];
      weight *= w[idx[a]];
    }
    sum += weight * f(point);
    int a = k - 1;
    while (a >= 0 && ++idx[a] == n) idx[a--] = 0;
    if (a < 0) break;
  }
  return sum;
}

}  // namespace oracle
