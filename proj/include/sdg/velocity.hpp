#pragma once

#include <string>
#include <vector>

#include "sdg/geometry.hpp"
#include "sdg/mesh.hpp"

namespace sdg {

/// Velocity field on the smooth surface, given by an ambient formula.
struct ContinuousVelocity {
  VectorField field;
  bool tangential = true;
  bool divergence_free = true;

  Vec3 operator()(const Vec3& x) const { return field(x); }
};

/// (-x2, x1, 0) sqrt(1 - x3^2): tangential and divergence-free on the unit sphere.
ContinuousVelocity sphere_rotation_field();
/// (-x2, x1, 0) / sqrt(x1^2 + x2^2): tangential and divergence-free on tori about x3.
ContinuousVelocity torus_rotation_field();

enum class VelocityMode { lifted, lagrange, rt0 };

VelocityMode parse_velocity_mode(const std::string& name);
std::string to_string(VelocityMode mode);

/// Discrete velocity w_h on a surface mesh.
///
/// Holds non-owning pointers to the mesh (and surface for lifted mode); both
/// must outlive the object. Every evaluation is tangential to the element.
class DiscreteVelocity {
 public:
  static DiscreteVelocity lifted(ContinuousVelocity w, const SurfaceMesh& mesh, const ImplicitSurface& surface);
  static DiscreteVelocity lagrange(std::vector<Vec3> vertex_values, const SurfaceMesh& mesh);
  /// Fluxes are total fluxes through each edge against the "+" orientation.
  static DiscreteVelocity rt0(VectorX edge_fluxes, const SurfaceMesh& mesh);

  VelocityMode mode() const { return mode_; }
  const SurfaceMesh& mesh() const { return *mesh_; }

  /// w_h restricted to `element`, evaluated at an ambient point of its plane.
  Vec3 eval(int element, const Vec3& x) const;

  /// Tangential divergence on the element. Constant per element except in
  /// lifted mode, where it is a central difference with step 1e-5 h.
  double divergence(int element, const Vec3& x) const;

  const VectorX& edge_fluxes() const { return edge_fluxes_; }
  const std::vector<Vec3>& vertex_values() const { return vertex_values_; }

 private:
  DiscreteVelocity(VelocityMode mode, const SurfaceMesh& mesh) : mode_(mode), mesh_(&mesh) {}

  double lagrange_divergence(int element) const;
  double rt0_divergence(int element) const;

  VelocityMode mode_;
  const SurfaceMesh* mesh_;
  const ImplicitSurface* surface_ = nullptr;
  ContinuousVelocity continuous_;
  VectorX edge_fluxes_;
  std::vector<Vec3> vertex_values_;
};

/// P_h(x) w(xi(x)) on the given element.
Vec3 eval_lifted(const ContinuousVelocity& w, const ImplicitSurface& surface, const SurfaceMesh& mesh,
                 int element, const Vec3& x);

/// Average conormal on an edge, (n+ - n-) / |n+ - n-|.
Vec3 average_conormal(const Edge& edge);

/// Lowest-order surface Raviart-Thomas interpolant of w^{-l}: edge fluxes
/// against the average conormal, integrated by 2-point Gauss.
DiscreteVelocity interpolate_rt0(const ContinuousVelocity& w, const SurfaceMesh& mesh,
                                 const ImplicitSurface& surface);

/// Vertex interpolation of w; evaluation projects the linear interpolant
/// onto each element plane.
DiscreteVelocity interpolate_lagrange(const ContinuousVelocity& w, const SurfaceMesh& mesh);

DiscreteVelocity make_discrete_velocity(VelocityMode mode, const ContinuousVelocity& w, const SurfaceMesh& mesh,
                                        const ImplicitSurface& surface);

double divergence(const DiscreteVelocity& v, int element, const Vec3& x);

/// max{-div, -(c + div)/2}.
double mass_perturbation(double div, double c);
double gamma_h(const DiscreteVelocity& v, int element, const Vec3& x, double c);

/// [w_h; n_h] = w+ . n+ + w- . n- at parameter t on the edge.
double normal_jump(const DiscreteVelocity& v, int edge, double t);

}  // namespace sdg
