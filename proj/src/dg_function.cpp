#include "sdg/dg_function.hpp"

#include <cmath>
#include <stdexcept>

namespace sdg {

DGFunction::DGFunction(VectorX coefficients) : coefficients_(std::move(coefficients)) {
  if (coefficients_.size() % 3 != 0) throw std::invalid_argument("DG coefficient count must be a multiple of 3");
}

double evaluate(const DGFunction& u, int element, const Vec3& barycentric) {
  constexpr double tol = 1e-12;
  if ((barycentric.array() < -tol).any() || std::abs(barycentric.sum() - 1.0) > tol) {
    throw std::invalid_argument("invalid barycentric coordinates");
  }
  return u.local(element).dot(barycentric);
}

Vec3 gradient(const DGFunction& u, const SurfaceMesh& mesh, int element) {
  return mesh.barycentric_gradients(element) * u.local(element);
}

std::pair<double, double> trace_pair(const DGFunction& u, const SurfaceMesh& mesh, int edge, double t) {
  const Edge& e = mesh.edges[edge];
  const double plus = u.local(e.plus).dot(mesh.edge_barycentric(e.plus, edge, t));
  if (e.is_boundary()) return {plus, plus};
  const double minus = u.local(e.minus).dot(mesh.edge_barycentric(e.minus, edge, t));
  return {plus, minus};
}

DGFunction l2_project(const ScalarField& f, const SurfaceMesh& mesh, int degree) {
  if (degree != 0 && degree != 1) throw std::invalid_argument("projection degree must be 0 or 1");
  const auto& rule = triangle_rule_degree4();
  DGFunction out(mesh.num_elements());
  for (int k = 0; k < mesh.num_elements(); ++k) {
    Vec3 moments = Vec3::Zero();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      moments += rule.weights[q] * f(mesh.point(k, rule.points[q])) * rule.points[q];
    }
    // Moments are normalised by |K|; the reference mass matrix is (I + J) / 12
    // with inverse 3 (4 I - J).
    if (degree == 0) {
      out.local(k).setConstant(moments.sum());
    } else {
      out.local(k) = 3.0 * (4.0 * moments - Vec3::Constant(moments.sum()));
    }
  }
  return out;
}

double integrate_lifted(const ScalarField& g, const SurfaceMesh& mesh, const ImplicitSurface& surface,
                        bool use_area_factor) {
  const auto& rule = triangle_rule_degree4();
  double total = 0.0;
  for (int k = 0; k < mesh.num_elements(); ++k) {
    double local = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Vec3 x = mesh.point(k, rule.points[q]);
      const double delta = use_area_factor ? area_deformation(surface, mesh.element_normals[k], x) : 1.0;
      local += rule.weights[q] * delta * g(surface.project(x));
    }
    total += mesh.element_areas[k] * local;
  }
  return total;
}

double integrate_discrete(const ScalarField& f, const SurfaceMesh& mesh) {
  const auto& rule = triangle_rule_degree4();
  double total = 0.0;
  for (int k = 0; k < mesh.num_elements(); ++k) {
    double local = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) local += rule.weights[q] * f(mesh.point(k, rule.points[q]));
    total += mesh.element_areas[k] * local;
  }
  return total;
}

}  // namespace sdg
