#include "sdg/velocity.hpp"

#include <cmath>
#include <stdexcept>

#include "sdg/quadrature.hpp"

namespace sdg {

ContinuousVelocity sphere_rotation_field() {
  return {[](const Vec3& x) {
            const double s = std::sqrt(std::max(0.0, 1.0 - x.z() * x.z()));
            return Vec3(-x.y() * s, x.x() * s, 0.0);
          },
          true, true};
}

ContinuousVelocity torus_rotation_field() {
  return {[](const Vec3& x) {
            const double rho = std::hypot(x.x(), x.y());
            return Vec3(-x.y() / rho, x.x() / rho, 0.0);
          },
          true, true};
}

VelocityMode parse_velocity_mode(const std::string& name) {
  if (name == "lifted") return VelocityMode::lifted;
  if (name == "lagrange") return VelocityMode::lagrange;
  if (name == "rt0") return VelocityMode::rt0;
  throw std::invalid_argument("unknown velocity mode '" + name + "'");
}

std::string to_string(VelocityMode mode) {
  switch (mode) {
    case VelocityMode::lifted: return "lifted";
    case VelocityMode::lagrange: return "lagrange";
    case VelocityMode::rt0: return "rt0";
  }
  return "?";
}

DiscreteVelocity DiscreteVelocity::lifted(ContinuousVelocity w, const SurfaceMesh& mesh,
                                          const ImplicitSurface& surface) {
  DiscreteVelocity v(VelocityMode::lifted, mesh);
  v.surface_ = &surface;
  v.continuous_ = std::move(w);
  return v;
}

DiscreteVelocity DiscreteVelocity::lagrange(std::vector<Vec3> vertex_values, const SurfaceMesh& mesh) {
  if (static_cast<int>(vertex_values.size()) != mesh.num_vertices()) {
    throw std::invalid_argument("one velocity value per vertex expected");
  }
  DiscreteVelocity v(VelocityMode::lagrange, mesh);
  v.vertex_values_ = std::move(vertex_values);
  return v;
}

DiscreteVelocity DiscreteVelocity::rt0(VectorX edge_fluxes, const SurfaceMesh& mesh) {
  if (edge_fluxes.size() != mesh.num_edges()) throw std::invalid_argument("one flux per edge expected");
  DiscreteVelocity v(VelocityMode::rt0, mesh);
  v.edge_fluxes_ = std::move(edge_fluxes);
  return v;
}

Vec3 DiscreteVelocity::eval(int element, const Vec3& x) const {
  const SurfaceMesh& m = *mesh_;
  switch (mode_) {
    case VelocityMode::lifted:
      return eval_lifted(continuous_, *surface_, m, element, x);
    case VelocityMode::lagrange: {
      const Vec3 bary = Vec3::Constant(1.0 / 3.0) + m.barycentric_gradients(element).transpose() * (x - m.centroid(element));
      const auto& tri = m.triangles[element];
      const Vec3 w = bary[0] * vertex_values_[tri[0]] + bary[1] * vertex_values_[tri[1]] + bary[2] * vertex_values_[tri[2]];
      return tangent_projector(m.element_normals[element]) * w;
    }
    case VelocityMode::rt0: {
      // Basis for local edge i: sigma * (x - p_i) / (2|K|), p_i the opposite vertex.
      const double scale = 1.0 / (2.0 * m.element_areas[element]);
      Vec3 w = Vec3::Zero();
      for (int i = 0; i < 3; ++i) {
        const int e = m.element_edges[element][i];
        const double sigma = (m.edges[e].plus == element) ? 1.0 : -1.0;
        w += sigma * edge_fluxes_[e] * scale * (x - m.corner(element, i));
      }
      return w;
    }
  }
  return Vec3::Zero();
}

double DiscreteVelocity::lagrange_divergence(int element) const {
  const SurfaceMesh& m = *mesh_;
  const Mat3 grads = m.barycentric_gradients(element);
  const auto& tri = m.triangles[element];
  Mat3 jac = Mat3::Zero();
  for (int i = 0; i < 3; ++i) jac += vertex_values_[tri[i]] * grads.col(i).transpose();
  const Mat3 p = tangent_projector(m.element_normals[element]);
  return (p * jac * p).trace();
}

double DiscreteVelocity::rt0_divergence(int element) const {
  const SurfaceMesh& m = *mesh_;
  double net = 0.0;
  for (int i = 0; i < 3; ++i) {
    const int e = m.element_edges[element][i];
    net += ((m.edges[e].plus == element) ? 1.0 : -1.0) * edge_fluxes_[e];
  }
  return net / m.element_areas[element];
}

double DiscreteVelocity::divergence(int element, const Vec3& x) const {
  switch (mode_) {
    case VelocityMode::lagrange: return lagrange_divergence(element);
    case VelocityMode::rt0: return rt0_divergence(element);
    case VelocityMode::lifted: {
      const SurfaceMesh& m = *mesh_;
      const double step = 1e-5 * m.h;
      const Vec3 t1 = (m.corner(element, 1) - m.corner(element, 0)).normalized();
      const Vec3 t2 = m.element_normals[element].cross(t1);
      double div = 0.0;
      for (const Vec3& t : {t1, t2}) {
        div += t.dot(eval(element, x + step * t) - eval(element, x - step * t)) / (2.0 * step);
      }
      return div;
    }
  }
  return 0.0;
}

Vec3 eval_lifted(const ContinuousVelocity& w, const ImplicitSurface& surface, const SurfaceMesh& mesh,
                 int element, const Vec3& x) {
  return tangent_projector(mesh.element_normals[element]) * w(surface.project(x));
}

Vec3 average_conormal(const Edge& edge) {
  if (edge.is_boundary()) return edge.conormal_plus;
  return (edge.conormal_plus - edge.conormal_minus).normalized();
}

DiscreteVelocity interpolate_rt0(const ContinuousVelocity& w, const SurfaceMesh& mesh,
                                 const ImplicitSurface& surface) {
  const auto& rule = edge_rule_2pt();
  VectorX fluxes(mesh.num_edges());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edges[e];
    const Vec3 n = average_conormal(edge);
    double flux = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      flux += rule.weights[q] * w(surface.project(mesh.edge_point(e, rule.points[q]))).dot(n);
    }
    fluxes[e] = edge.length * flux;
  }
  return DiscreteVelocity::rt0(std::move(fluxes), mesh);
}

DiscreteVelocity interpolate_lagrange(const ContinuousVelocity& w, const SurfaceMesh& mesh) {
  std::vector<Vec3> values;
  values.reserve(mesh.vertices.size());
  for (const Vec3& v : mesh.vertices) values.push_back(w(v));
  return DiscreteVelocity::lagrange(std::move(values), mesh);
}

DiscreteVelocity make_discrete_velocity(VelocityMode mode, const ContinuousVelocity& w, const SurfaceMesh& mesh,
                                        const ImplicitSurface& surface) {
  switch (mode) {
    case VelocityMode::lifted: return DiscreteVelocity::lifted(w, mesh, surface);
    case VelocityMode::lagrange: return interpolate_lagrange(w, mesh);
    case VelocityMode::rt0: return interpolate_rt0(w, mesh, surface);
  }
  throw std::invalid_argument("unknown velocity mode");
}

double divergence(const DiscreteVelocity& v, int element, const Vec3& x) { return v.divergence(element, x); }

double mass_perturbation(double div, double c) { return std::max(-div, -0.5 * (c + div)); }

double gamma_h(const DiscreteVelocity& v, int element, const Vec3& x, double c) {
  return mass_perturbation(v.divergence(element, x), c);
}

double normal_jump(const DiscreteVelocity& v, int edge, double t) {
  const SurfaceMesh& m = v.mesh();
  const Edge& e = m.edges[edge];
  if (e.is_boundary()) return 0.0;
  const Vec3 x = m.edge_point(edge, t);
  return v.eval(e.plus, x).dot(e.conormal_plus) + v.eval(e.minus, x).dot(e.conormal_minus);
}

}  // namespace sdg
