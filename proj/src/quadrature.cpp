#include "sdg/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sdg {

const TriangleRule& triangle_rule_degree4() {
  static const TriangleRule rule = [] {
    constexpr double a = 0.44594849091596488632;
    constexpr double b = 0.09157621350977074346;
    constexpr double wa = 0.22338158967801146570;
    constexpr double wb = 0.10995174365532186764;
    TriangleRule r;
    r.degree = 4;
    r.points = {
        {1.0 - 2.0 * a, a, a}, {a, 1.0 - 2.0 * a, a}, {a, a, 1.0 - 2.0 * a},
        {1.0 - 2.0 * b, b, b}, {b, 1.0 - 2.0 * b, b}, {b, b, 1.0 - 2.0 * b},
    };
    r.weights = {wa, wa, wa, wb, wb, wb};
    return r;
  }();
  return rule;
}

EdgeRule gauss_edge_rule(int n) {
  if (n < 1) throw std::invalid_argument("Gauss rule needs at least one point");
  EdgeRule rule;
  rule.degree = 2 * n - 1;
  rule.points.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton on P_n starting from the Chebyshev-like guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      const double pn = (n == 1) ? x : p1;
      const double pn1 = (n == 1) ? 1.0 : p0;
      dp = n * (x * pn - pn1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

const EdgeRule& edge_rule_3pt() {
  static const EdgeRule rule = [] {
    EdgeRule r;
    r.degree = 5;
    const double s = 0.5 * std::sqrt(0.6);
    r.points = {0.5 - s, 0.5, 0.5 + s};
    r.weights = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
    return r;
  }();
  return rule;
}

const EdgeRule& edge_rule_2pt() {
  static const EdgeRule rule = [] {
    EdgeRule r;
    r.degree = 3;
    const double s = 0.5 / std::sqrt(3.0);
    r.points = {0.5 - s, 0.5 + s};
    r.weights = {0.5, 0.5};
    return r;
  }();
  return rule;
}

}  // namespace sdg
