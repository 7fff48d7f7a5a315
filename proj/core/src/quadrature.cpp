#include "moyalharm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>

namespace moyalharm {

namespace {

// Kronrod 15 / Gauss 7 nodes and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
    0.1406532597155259,  0.1690047266392679,  0.1903505780647854,
    0.2044329400752989,  0.2094821410847278};
constexpr double kWg[4] = {0.1294849661688697, 0.2797053914892767,
                           0.3818300505051189, 0.4179591836734694};

template <typename T>
double absval(const T& v) {
  return std::abs(v);
}

template <typename T>
struct Panel {
  double a, b;
  T value;
  double error;
};

template <typename T>
Panel<T> evaluate_panel(const std::function<T(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  T fc = f(c);
  T kron = kWgk[7] * fc;
  T gauss = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    T lo = f(c - h * kXgk[i]);
    T hi = f(c + h * kXgk[i]);
    kron += kWgk[i] * (lo + hi);
    if (i % 2 == 1) gauss += kWg[i / 2] * (lo + hi);
  }
  kron *= h;
  gauss *= h;
  return {a, b, kron, absval<T>(kron - gauss)};
}

template <typename T>
QuadratureEstimate<T> adaptive_impl(const std::function<T(double)>& f, double a,
                                    double b, const QuadratureOptions& opt) {
  if (a == b) return {T{}, 0.0};
  auto worse = [](const Panel<T>& x, const Panel<T>& y) {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;  // deterministic tie-break: leftmost panel first
  };
  std::priority_queue<Panel<T>, std::vector<Panel<T>>, decltype(worse)> heap(worse);
  std::vector<Panel<T>> done;
  heap.push(evaluate_panel(f, a, b));
  int used = 1;

  auto totals = [&] {
    T v = T{};
    double e = 0.0;
    std::vector<Panel<T>> all = done;
    auto copy = heap;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(),
              [](const Panel<T>& x, const Panel<T>& y) { return x.a < y.a; });
    for (const auto& p : all) {
      v += p.value;
      e += p.error;
    }
    return std::make_pair(v, e);
  };

  while (true) {
    auto [value, error] = totals();
    double goal = std::max(opt.abs_tol, opt.rel_tol * absval<T>(value));
    if (error <= goal) return {value, error};
    if (used >= opt.max_panels) {
      char msg[128];
      std::snprintf(msg, sizeof msg,
                    "adaptive_integrate: panel budget exhausted, error %.3e "
                    "above tolerance %.3e",
                    error, goal);
      throw QuadratureFailure(msg, error);
    }
    Panel<T> worst = heap.top();
    heap.pop();
    double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      done.push_back(worst);  // interval at machine resolution
      continue;
    }
    heap.push(evaluate_panel(f, worst.a, mid));
    heap.push(evaluate_panel(f, mid, worst.b));
    ++used;
  }
}

template <typename T>
QuadratureEstimate<T> exp_mapped_impl(const std::function<T(double)>& f, double lo,
                                      double range, const QuadratureOptions& opt) {
  require(range > 0.0, "integrate_exp_mapped: range must be positive");
  const double u_max = -std::expm1(-range);  // 1 - exp(-range)
  std::function<T(double)> g = [&f, lo](double u) {
    double alpha = lo - std::log1p(-u);
    return f(alpha) * (1.0 / (1.0 - u));
  };
  return adaptive_impl<T>(g, 0.0, u_max, opt);
}

}  // namespace

QuadratureEstimate<double> adaptive_integrate(const std::function<double(double)>& f,
                                              double a, double b,
                                              const QuadratureOptions& opt) {
  return adaptive_impl<double>(f, a, b, opt);
}

QuadratureEstimate<Complex> adaptive_integrate(const std::function<Complex(double)>& f,
                                               double a, double b,
                                               const QuadratureOptions& opt) {
  return adaptive_impl<Complex>(f, a, b, opt);
}

QuadratureEstimate<double> integrate_exp_mapped(const std::function<double(double)>& f,
                                                double lo, double range,
                                                const QuadratureOptions& opt) {
  return exp_mapped_impl<double>(f, lo, range, opt);
}

QuadratureEstimate<Complex> integrate_exp_mapped(const std::function<Complex(double)>& f,
                                                 double lo, double range,
                                                 const QuadratureOptions& opt) {
  return exp_mapped_impl<Complex>(f, lo, range, opt);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  require(n > 0, "gauss_legendre: n must be positive");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

}  // namespace moyalharm
