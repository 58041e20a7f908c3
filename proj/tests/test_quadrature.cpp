#include <doctest.h>

#include <cmath>

#include "sdg/quadrature.hpp"

using namespace sdg;

namespace {

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// Integral of l1^a l2^b l3^c over the reference triangle divided by its area.
double barycentric_moment(int a, int b, int c) {
  return 2.0 * factorial(a) * factorial(b) * factorial(c) / factorial(a + b + c + 2);
}

}  // namespace

TEST_CASE("triangle rule integrates degree 4 exactly") {
  const auto& rule = triangle_rule_degree4();
  CHECK(rule.size() == 6);
  CHECK(rule.degree == 4);
  double wsum = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    wsum += rule.weights[q];
    CHECK(std::abs(rule.points[q].sum() - 1.0) < 1e-15);
    CHECK(rule.points[q].minCoeff() > 0.0);
  }
  CHECK(std::abs(wsum - 1.0) < 1e-14);
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b)
      for (int c = 0; a + b + c <= 4; ++c) {
        double sum = 0.0;
        for (std::size_t q = 0; q < rule.size(); ++q) {
          const Vec3& p = rule.points[q];
          sum += rule.weights[q] * std::pow(p[0], a) * std::pow(p[1], b) * std::pow(p[2], c);
        }
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(c);
        CHECK(std::abs(sum - barycentric_moment(a, b, c)) < 1e-14);
      }
}

TEST_CASE("Gauss edge rules") {
  for (int n = 1; n <= 8; ++n) {
    const EdgeRule rule = gauss_edge_rule(n);
    CHECK(rule.size() == static_cast<std::size_t>(n));
    CHECK(rule.degree == 2 * n - 1);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double sum = 0.0;
      for (std::size_t q = 0; q < rule.size(); ++q) sum += rule.weights[q] * std::pow(rule.points[q], p);
      CAPTURE(n);
      CAPTURE(p);
      CHECK(std::abs(sum - 1.0 / (p + 1)) < 1e-14);
    }
  }
  CHECK(edge_rule_3pt().size() == 3);
  CHECK(edge_rule_2pt().size() == 2);
  CHECK(std::abs(edge_rule_2pt().points[0] - (0.5 - 0.5 / std::sqrt(3.0))) < 1e-15);
  CHECK_THROWS(gauss_edge_rule(0));
}
