#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace repnet {

/// Gauss-Legendre nodes and weights on [-1, 1], generated by Newton iteration
/// on the Legendre recurrence.
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;

  explicit GaussRule(int n) : x(n), w(n) {
    for (int i = 0; i < n; ++i) {
      double xi = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 64; ++it) {
        double p0 = 1.0, p1 = xi;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2 * k - 1) * xi * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
        const double dx = p1 / dp;
        xi -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      x[i] = xi;
      w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
  }
};

namespace detail {
template <class F>
double apply_rule(const GaussRule& rule, F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) sum += rule.w[i] * f(mid + half * rule.x[i]);
  return sum * half;
}
}  // namespace detail

/// Adaptive quadrature: each segment is evaluated with an embedded 15/31-point
/// Gauss pair; segments whose error estimate exceeds the local tolerance are
/// bisected. abs_tol is a global absolute tolerance.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-10) {
  static const GaussRule g_lo(15);
  static const GaussRule g_hi(31);
  struct Seg {
    double a, b, tol;
    int depth;
  };
  std::vector<Seg> stack{{a, b, abs_tol, 0}};
  double total = 0.0;
  while (!stack.empty()) {
    const Seg s = stack.back();
    stack.pop_back();
    const double lo = detail::apply_rule(g_lo, f, s.a, s.b);
    const double hi = detail::apply_rule(g_hi, f, s.a, s.b);
    if (std::abs(hi - lo) <= s.tol || s.depth >= 48) {
      total += hi;
    } else {
      const double mid = 0.5 * (s.a + s.b);
      stack.push_back({s.a, mid, 0.5 * s.tol, s.depth + 1});
      stack.push_back({mid, s.b, 0.5 * s.tol, s.depth + 1});
    }
  }
  return total;
}

}  // namespace repnet
