#ifndef CHARGEDROP_QUADRATURE_HPP
#define CHARGEDROP_QUADRATURE_HPP

#include <cmath>
#include <numbers>
#include <vector>

namespace chargedrop {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  static GaussRule legendre(int n);

  /// Integral of f over [a, b].
  template <class F>
  double integrate(F&& f, double a, double b) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(mid + half * nodes[i]);
    return half * sum;
  }

  /// Composite rule over `pieces` equal subintervals of [a, b].
  template <class F>
  double integrate(F&& f, double a, double b, int pieces) const {
    double sum = 0.0;
    const double w = (b - a) / pieces;
    for (int k = 0; k < pieces; ++k) sum += integrate(f, a + k * w, a + (k + 1) * w);
    return sum;
  }
};

inline GaussRule GaussRule::legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      // p1 = P_n(x), p0 = P_{n-1}(x)
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace chargedrop

#endif  // CHARGEDROP_QUADRATURE_HPP
