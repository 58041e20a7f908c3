#pragma once

#include <utility>

#include "sdg/geometry.hpp"
#include "sdg/mesh.hpp"
#include "sdg/quadrature.hpp"

namespace sdg {

/// Element-wise linear field on a triangulated surface.
///
/// Degree of freedom 3*k + i is the value at local vertex i of element k, so
/// the coefficient vector doubles as the unknown vector of the DG systems.
class DGFunction {
 public:
  DGFunction() = default;
  explicit DGFunction(int num_elements) : coefficients_(VectorX::Zero(3 * num_elements)) {}
  explicit DGFunction(VectorX coefficients);

  int num_elements() const { return static_cast<int>(coefficients_.size() / 3); }

  const VectorX& coefficients() const { return coefficients_; }
  VectorX& coefficients() { return coefficients_; }

  auto local(int element) { return coefficients_.segment<3>(3 * element); }
  auto local(int element) const { return coefficients_.segment<3>(3 * element); }

 private:
  VectorX coefficients_;
};

inline int dof(int element, int local_vertex) { return 3 * element + local_vertex; }

/// Value at barycentric coordinates inside one element. Throws
/// std::invalid_argument if the coordinates are negative or do not sum to 1.
double evaluate(const DGFunction& u, int element, const Vec3& barycentric);

/// In-plane gradient of u on the element (constant per element).
Vec3 gradient(const DGFunction& u, const SurfaceMesh& mesh, int element);

/// One-sided traces (u+, u-) at parameter t along the edge.
std::pair<double, double> trace_pair(const DGFunction& u, const SurfaceMesh& mesh, int edge, double t);

inline double jump(const std::pair<double, double>& tr) { return tr.first - tr.second; }
inline double average(const std::pair<double, double>& tr) { return 0.5 * (tr.first + tr.second); }

/// Element-wise L2 projection of a field on the discrete surface onto
/// piecewise constants (degree 0) or piecewise linears (degree 1).
DGFunction l2_project(const ScalarField& f, const SurfaceMesh& mesh, int degree);

/// Sum_K Sum_q w_q |K| delta_h(x_q) g(xi(x_q)): integral over the smooth
/// surface through the lift. With use_area_factor = false delta_h is set to 1.
double integrate_lifted(const ScalarField& g, const SurfaceMesh& mesh, const ImplicitSurface& surface,
                        bool use_area_factor = true);

/// Plain integral over the discrete surface.
double integrate_discrete(const ScalarField& f, const SurfaceMesh& mesh);

}  // namespace sdg
