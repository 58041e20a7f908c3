#include "sdg/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

namespace sdg {

namespace {

// Element sample points: the quadrature points followed by the vertices.
std::vector<Vec3> element_samples() {
  std::vector<Vec3> pts = triangle_rule_degree4().points;
  pts.emplace_back(1.0, 0.0, 0.0);
  pts.emplace_back(0.0, 1.0, 0.0);
  pts.emplace_back(0.0, 0.0, 1.0);
  return pts;
}

double spectral_norm(const Mat3& m) {
  return Eigen::JacobiSVD<Mat3>(m).singularValues()(0);
}

// Conormal of the lifted edge through xi(x), oriented like the discrete one.
Vec3 lifted_conormal(const ImplicitSurface& surface, const Vec3& x, const Vec3& tangent, const Vec3& n_h) {
  const Vec3 tau = (projection_jacobian(surface, x) * tangent).normalized();
  Vec3 n = tau.cross(surface.gradient(x)).normalized();
  if (n.dot(n_h) < 0.0) n = -n;
  return n;
}

}  // namespace

double l2_error(const DGFunction& u_h, const ScalarField& u_exact, const SurfaceMesh& mesh,
                const ImplicitSurface& surface, const Subdomain& subdomain) {
  const auto& rule = triangle_rule_degree4();
  double sum = 0.0;
  for (int k = 0; k < mesh.num_elements(); ++k) {
    double local = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Vec3 x = mesh.point(k, rule.points[q]);
      const Vec3 y = surface.project(x);
      if (!subdomain(y)) continue;
      const double diff = u_h.local(k).dot(rule.points[q]) - u_exact(y);
      local += rule.weights[q] * area_deformation(surface, mesh.element_normals[k], x) * diff * diff;
    }
    sum += mesh.element_areas[k] * local;
  }
  return std::sqrt(sum);
}

double linf_error(const DGFunction& u_h, const ScalarField& u_exact, const SurfaceMesh& mesh,
                  const ImplicitSurface& surface, const Subdomain& subdomain) {
  const std::vector<Vec3> samples = element_samples();
  double worst = 0.0;
  for (int k = 0; k < mesh.num_elements(); ++k) {
    for (const Vec3& bary : samples) {
      const Vec3 y = surface.project(mesh.point(k, bary));
      if (!subdomain(y)) continue;
      worst = std::max(worst, std::abs(u_h.local(k).dot(bary) - u_exact(y)));
    }
  }
  return worst;
}

double dg_error(const DGFunction& u_h, const ManufacturedSolution& u_exact, const SurfaceMesh& mesh,
                const ImplicitSurface& surface, const DiscreteVelocity* velocity, const ProblemCoefficients& coeffs,
                const Subdomain& subdomain, DGNormVariant variant) {
  const auto& tri_rule = triangle_rule_degree4();
  const auto& edge_rule = edge_rule_3pt();

  double l2_sq = 0.0;
  double grad_sq = 0.0;
  for (int k = 0; k < mesh.num_elements(); ++k) {
    const Mat3 grads = mesh.barycentric_gradients(k);
    const Vec3 grad_h = grads * u_h.local(k);
    const Mat3 p_h = tangent_projector(mesh.element_normals[k]);
    double l2_local = 0.0;
    double grad_local = 0.0;
    for (std::size_t q = 0; q < tri_rule.size(); ++q) {
      const Vec3 x = mesh.point(k, tri_rule.points[q]);
      const Vec3 y = surface.project(x);
      if (!subdomain(y)) continue;
      const double delta = area_deformation(surface, mesh.element_normals[k], x);
      const double diff = u_h.local(k).dot(tri_rule.points[q]) - u_exact.value(y);
      // Gradient of u o xi along the facet: P_h D xi(x) grad u(xi(x)).
      const Vec3 grad_exact = p_h * projection_jacobian(surface, x) * u_exact.gradient(y);
      l2_local += tri_rule.weights[q] * delta * diff * diff;
      grad_local += tri_rule.weights[q] * delta * (grad_h - grad_exact).squaredNorm();
    }
    l2_sq += mesh.element_areas[k] * l2_local;
    grad_sq += mesh.element_areas[k] * grad_local;
  }

  const double beta = coeffs.epsilon * coeffs.alpha / mesh.h;
  double jump_sq = 0.0;
  for (int ei = 0; ei < mesh.num_edges(); ++ei) {
    const Edge& e = mesh.edges[ei];
    if (e.is_boundary()) continue;
    double local = 0.0;
    for (std::size_t q = 0; q < edge_rule.size(); ++q) {
      const double t = edge_rule.points[q];
      const Vec3 x = mesh.edge_point(ei, t);
      if (!subdomain(surface.project(x))) continue;
      double weight = beta;
      if (velocity) {
        const double wn_avg =
            0.5 * (velocity->eval(e.plus, x).dot(e.conormal_plus) - velocity->eval(e.minus, x).dot(e.conormal_minus));
        weight += 0.5 * std::abs(wn_avg);
      }
      const double j = jump(trace_pair(u_h, mesh, ei, t));
      local += edge_rule.weights[q] * weight * j * j;
    }
    jump_sq += e.length * local;
  }

  const double h1_part =
      (variant == DGNormVariant::unweighted_h1) ? grad_sq : coeffs.epsilon * (l2_sq + grad_sq);
  return std::sqrt(l2_sq + h1_part + jump_sq);
}

std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& hs) {
  if (errors.size() != hs.size()) throw std::invalid_argument("eoc: errors and mesh sizes differ in length");
  if (errors.size() < 2) throw std::invalid_argument("eoc: need at least two levels");
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!(errors[i] > 0.0) || !(hs[i] > 0.0)) throw std::invalid_argument("eoc: values must be positive");
  }
  std::vector<double> out;
  for (std::size_t i = 1; i < errors.size(); ++i) {
    out.push_back(std::log(errors[i - 1] / errors[i]) / std::log(hs[i - 1] / hs[i]));
  }
  return out;
}

double fitted_order(const std::vector<double>& errors, const std::vector<double>& hs) {
  eoc(errors, hs);  // validation only
  const std::size_t n = errors.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(hs[i]);
    my += std::log(errors[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(hs[i]) - mx;
    sxy += dx * (std::log(errors[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

GeometryReport geometry_diagnostics(const SurfaceMesh& mesh, const ImplicitSurface& surface,
                                    const DiscreteVelocity* velocity, const ContinuousVelocity* w) {
  GeometryReport rep;
  rep.h = mesh.h;
  rep.has_velocity = velocity != nullptr;
  const std::vector<Vec3> samples = element_samples();

  for (int k = 0; k < mesh.num_elements(); ++k) {
    const Vec3& nu_h = mesh.element_normals[k];
    const Mat3 p_h = tangent_projector(nu_h);
    for (const Vec3& bary : samples) {
      const Vec3 x = mesh.point(k, bary);
      const Vec3 nu = surface.gradient(x);
      const Mat3 p = tangent_projector(nu);
      rep.distance = std::max(rep.distance, std::abs(surface.distance(x)));
      rep.area_factor = std::max(rep.area_factor, std::abs(1.0 - area_deformation(surface, nu_h, x)));
      rep.normal = std::max(rep.normal, (nu - nu_h).norm());
      rep.projector = std::max(rep.projector, spectral_norm(p - p * p_h));
      rep.projector_sym = std::max(rep.projector_sym, spectral_norm(p - p * p_h * p));
      if (velocity) {
        const Vec3 wh = velocity->eval(k, x);
        rep.divergence = std::max(rep.divergence, std::abs(velocity->divergence(k, x)));
        if (w) {
          const Vec3 lifted = eval_lifted(*w, surface, mesh, k, x);
          rep.velocity_error = std::max(rep.velocity_error, (lifted - wh).norm());
          rep.velocity_max = std::max(rep.velocity_max, (*w)(surface.project(x)).norm());
        } else {
          rep.velocity_max = std::max(rep.velocity_max, wh.norm());
        }
      }
    }
  }

  std::vector<double> edge_params = edge_rule_3pt().points;
  edge_params.push_back(0.0);
  edge_params.push_back(1.0);
  for (int ei = 0; ei < mesh.num_edges(); ++ei) {
    const Edge& e = mesh.edges[ei];
    const Vec3 t = mesh.edge_tangent(ei);
    const double step = 1e-6 * mesh.h;
    for (double s : edge_params) {
      const Vec3 x = mesh.edge_point(ei, s);
      const Mat3 p = surface_projector(surface, x);
      rep.edge_factor = std::max(rep.edge_factor, std::abs(1.0 - edge_deformation(surface, x, t, step)));
      for (const Vec3* n_h : {&e.conormal_plus, &e.conormal_minus}) {
        if (n_h == &e.conormal_minus && e.is_boundary()) continue;
        const Vec3 n = lifted_conormal(surface, x, t, *n_h);
        rep.conormal = std::max(rep.conormal, (n - p * *n_h).norm());
      }
      if (velocity && !e.is_boundary()) rep.normal_jump = std::max(rep.normal_jump, std::abs(normal_jump(*velocity, ei, s)));
    }
  }
  if (velocity) rep.s_w = rep.normal_jump <= 1e-12 * std::max(rep.velocity_max, 1e-300) ? 0 : 1;
  return rep;
}

DGFunction from_vertex_values(const SurfaceMesh& mesh, const VectorX& values) {
  if (values.size() != mesh.num_vertices()) throw std::invalid_argument("from_vertex_values: size mismatch");
  DGFunction u(mesh.num_elements());
  for (int k = 0; k < mesh.num_elements(); ++k) {
    const auto& tri = mesh.triangles[k];
    u.local(k) = Vec3(values[tri[0]], values[tri[1]], values[tri[2]]);
  }
  return u;
}

}  // namespace sdg
