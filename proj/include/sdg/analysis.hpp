#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sdg/forms.hpp"

namespace sdg {

using Subdomain = std::function<bool(const Vec3&)>;

inline Subdomain whole_surface() {
  return [](const Vec3&) { return true; };
}
/// {x : |x3| > threshold}.
inline Subdomain outside_band(double threshold) {
  return [threshold](const Vec3& x) { return std::abs(x.z()) > threshold; };
}

enum class DGNormVariant { unweighted_h1, eps_weighted };

struct ErrorReport {
  int level = 0;
  int n_elements = 0;
  double h = 0.0;
  double l2_error = 0.0;
  double dg_error = 0.0;
  double linf_error = 0.0;
  std::optional<double> l2_eoc;
  std::optional<double> dg_eoc;
  int solver_iterations = 0;
  bool failed = false;
};

/// L2 error over the part of the smooth surface selected by `subdomain`,
/// integrated through the lift with the area factor delta_h. Membership is
/// decided per quadrature point at xi(x_q).
double l2_error(const DGFunction& u_h, const ScalarField& u_exact, const SurfaceMesh& mesh,
                const ImplicitSurface& surface, const Subdomain& subdomain);

/// Max of |u_h - u o xi| over quadrature points and vertices in the subdomain.
double linf_error(const DGFunction& u_h, const ScalarField& u_exact, const SurfaceMesh& mesh,
                  const ImplicitSurface& surface, const Subdomain& subdomain);

/// DG-norm error: L2 part, broken H1 seminorm of u_h - u o xi (unweighted or
/// eps-weighted), and the upwind (|{w;n}|/2) and penalty (eps alpha / h) jump
/// terms of u_h. Pass velocity == nullptr to drop the upwind jump term.
double dg_error(const DGFunction& u_h, const ManufacturedSolution& u_exact, const SurfaceMesh& mesh,
                const ImplicitSurface& surface, const DiscreteVelocity* velocity, const ProblemCoefficients& coeffs,
                const Subdomain& subdomain, DGNormVariant variant = DGNormVariant::unweighted_h1);

/// Pairwise orders log(e_{k-1}/e_k) / log(h_{k-1}/h_k).
std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& hs);

/// Least-squares slope of log(error) against log(h).
double fitted_order(const std::vector<double>& errors, const std::vector<double>& hs);

/// Sup-norms of the geometric approximation errors of a triangulation and,
/// optionally, of a discrete velocity.
struct GeometryReport {
  double h = 0.0;
  double distance = 0.0;        // |d|
  double area_factor = 0.0;     // |1 - delta_h|
  double normal = 0.0;          // |nu - nu_h|
  double edge_factor = 0.0;     // |1 - delta_e|
  double conormal = 0.0;        // |n - P n_h|
  double projector = 0.0;       // ||P - P P_h||
  double projector_sym = 0.0;   // ||P - P P_h P||

  bool has_velocity = false;
  double normal_jump = 0.0;     // |[w_h; n_h]|
  double divergence = 0.0;      // |div w_h|
  double velocity_error = 0.0;  // |P_h w^{-l} - w_h|
  double velocity_max = 0.0;    // |w^{-l}|
  int s_w = 0;                  // 0 iff the normal jump vanishes (relative 1e-12)
};

GeometryReport geometry_diagnostics(const SurfaceMesh& mesh, const ImplicitSurface& surface,
                                    const DiscreteVelocity* velocity = nullptr,
                                    const ContinuousVelocity* w = nullptr);

/// Continuous vertex field written as a DG function.
DGFunction from_vertex_values(const SurfaceMesh& mesh, const VectorX& values);

}  // namespace sdg
