#pragma once

#include <vector>

#include "sdg/types.hpp"

namespace sdg {

/// Quadrature on the reference triangle in barycentric coordinates.
/// Weights sum to 1, i.e. integrals are recovered by multiplying with |K|.
struct TriangleRule {
  std::vector<Vec3> points;
  std::vector<double> weights;
  int degree = 0;

  std::size_t size() const { return points.size(); }
};

/// Quadrature on [0, 1]; weights sum to 1.
struct EdgeRule {
  std::vector<double> points;
  std::vector<double> weights;
  int degree = 0;

  std::size_t size() const { return points.size(); }
};

/// Symmetric 6-point rule, exact for degree 4.
const TriangleRule& triangle_rule_degree4();

/// n-point Gauss-Legendre rule mapped to [0, 1] (n in 1..3 tabulated, larger
/// n computed by Newton iteration on the Legendre polynomial).
EdgeRule gauss_edge_rule(int n);

const EdgeRule& edge_rule_3pt();
const EdgeRule& edge_rule_2pt();

}  // namespace sdg
