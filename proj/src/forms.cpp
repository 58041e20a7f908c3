#include "sdg/forms.hpp"

#include <cmath>
#include <numbers>

namespace sdg {

namespace {

using Local6 = Eigen::Matrix<double, 6, 6>;
using Vec6 = Eigen::Matrix<double, 6, 1>;

void scatter(TripletList& out, int plus, int minus, const Local6& local) {
  for (int i = 0; i < 6; ++i) {
    const int row = (i < 3) ? dof(plus, i) : dof(minus, i - 3);
    for (int j = 0; j < 6; ++j) {
      const int col = (j < 3) ? dof(plus, j) : dof(minus, j - 3);
      out.emplace_back(row, col, local(i, j));
    }
  }
}

void scatter(TripletList& out, int element, const Mat3& local) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out.emplace_back(dof(element, i), dof(element, j), local(i, j));
}

// Basis traces of both sides at edge parameter t: first three entries live on
// the "+" element, last three on the "-" element.
struct EdgeTraces {
  Vec6 plus = Vec6::Zero();
  Vec6 minus = Vec6::Zero();
};

EdgeTraces edge_traces(const SurfaceMesh& mesh, int edge, double t) {
  const Edge& e = mesh.edges[edge];
  EdgeTraces tr;
  tr.plus.head<3>() = mesh.edge_barycentric(e.plus, edge, t);
  tr.minus.tail<3>() = mesh.edge_barycentric(e.minus, edge, t);
  return tr;
}

}  // namespace

double upwind_flux(double wn_avg, double u_plus, double u_minus) {
  return wn_avg * 0.5 * (u_plus + u_minus) + 0.5 * std::abs(wn_avg) * (u_plus - u_minus);
}

SparseMatrix assemble_advection(const SurfaceMesh& mesh, const DiscreteVelocity& velocity, double c,
                                const AdvectionOptions& options) {
  const auto& tri_rule = triangle_rule_degree4();
  const auto& edge_rule = edge_rule_3pt();
  TripletList triplets;
  triplets.reserve(static_cast<std::size_t>(9 * mesh.num_elements() + 36 * mesh.num_edges()));

  for (int k = 0; k < mesh.num_elements(); ++k) {
    const Mat3 grads = mesh.barycentric_gradients(k);
    Mat3 local = Mat3::Zero();
    for (std::size_t q = 0; q < tri_rule.size(); ++q) {
      const Vec3& phi = tri_rule.points[q];
      const Vec3 x = mesh.point(k, phi);
      const Vec3 w = velocity.eval(k, x);
      const double gamma = options.mass_perturbation ? gamma_h(velocity, k, x, c) : 0.0;
      // Row i is the test function, column j the trial function.
      const Vec3 w_dot_grad = grads.transpose() * w;
      local += tri_rule.weights[q] * (-w_dot_grad * phi.transpose() + (c + gamma) * phi * phi.transpose());
    }
    scatter(triplets, k, mesh.element_areas[k] * local);
  }

  for (int ei = 0; ei < mesh.num_edges(); ++ei) {
    const Edge& e = mesh.edges[ei];
    if (e.is_boundary()) continue;
    Local6 local = Local6::Zero();
    for (std::size_t q = 0; q < edge_rule.size(); ++q) {
      const double t = edge_rule.points[q];
      const Vec3 x = mesh.edge_point(ei, t);
      const double wp = velocity.eval(e.plus, x).dot(e.conormal_plus);
      const double wm = velocity.eval(e.minus, x).dot(e.conormal_minus);
      const double wn_avg = 0.5 * (wp - wm);
      const double wn_jump = wp + wm;
      const EdgeTraces tr = edge_traces(mesh, ei, t);
      const Vec6 u_jump = tr.plus - tr.minus;
      const Vec6 flux = wn_avg * 0.5 * (tr.plus + tr.minus) + 0.5 * std::abs(wn_avg) * u_jump;
      Local6 contrib = u_jump * flux.transpose();
      if (options.velocity_jump_correction) {
        contrib += 0.25 * wn_jump * (tr.plus * tr.plus.transpose() + tr.minus * tr.minus.transpose());
      }
      local += edge_rule.weights[q] * contrib;
    }
    scatter(triplets, e.plus, e.minus, e.length * local);
  }
  return to_sparse(3 * mesh.num_elements(), triplets);
}

SparseMatrix assemble_diffusion_ip(const SurfaceMesh& mesh, double epsilon, double alpha) {
  const int dim = 3 * mesh.num_elements();
  if (epsilon == 0.0) return SparseMatrix(dim, dim);

  const auto& edge_rule = edge_rule_3pt();
  const double beta = epsilon * alpha / mesh.h;
  TripletList triplets;
  triplets.reserve(static_cast<std::size_t>(9 * mesh.num_elements() + 36 * mesh.num_edges()));

  for (int k = 0; k < mesh.num_elements(); ++k) {
    const Mat3 grads = mesh.barycentric_gradients(k);
    scatter(triplets, k, Mat3(epsilon * mesh.element_areas[k] * grads.transpose() * grads));
  }

  for (int ei = 0; ei < mesh.num_edges(); ++ei) {
    const Edge& e = mesh.edges[ei];
    if (e.is_boundary()) continue;
    // {eps grad v; n} = eps/2 (grad v+ . n+ - grad v- . n-), constant along the edge.
    Vec6 flux;
    flux.head<3>() = 0.5 * epsilon * mesh.barycentric_gradients(e.plus).transpose() * e.conormal_plus;
    flux.tail<3>() = -0.5 * epsilon * mesh.barycentric_gradients(e.minus).transpose() * e.conormal_minus;
    Local6 local = Local6::Zero();
    for (std::size_t q = 0; q < edge_rule.size(); ++q) {
      const EdgeTraces tr = edge_traces(mesh, ei, edge_rule.points[q]);
      const Vec6 u_jump = tr.plus - tr.minus;
      local += edge_rule.weights[q] *
               (beta * u_jump * u_jump.transpose() - flux * u_jump.transpose() - u_jump * flux.transpose());
    }
    scatter(triplets, e.plus, e.minus, e.length * local);
  }
  return to_sparse(dim, triplets);
}

VectorX assemble_rhs(const SurfaceMesh& mesh, const ScalarField& f, const ImplicitSurface& surface) {
  const auto& rule = triangle_rule_degree4();
  VectorX rhs = VectorX::Zero(3 * mesh.num_elements());
  for (int k = 0; k < mesh.num_elements(); ++k) {
    Vec3 local = Vec3::Zero();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      local += rule.weights[q] * f(surface.project(mesh.point(k, rule.points[q]))) * rule.points[q];
    }
    rhs.segment<3>(3 * k) = mesh.element_areas[k] * local;
  }
  return rhs;
}

double advection_energy(const SurfaceMesh& mesh, const DiscreteVelocity& velocity, double c, const DGFunction& u) {
  const auto& tri_rule = triangle_rule_degree4();
  const auto& edge_rule = edge_rule_3pt();
  double volume = 0.0;
  for (int k = 0; k < mesh.num_elements(); ++k) {
    double local = 0.0;
    for (std::size_t q = 0; q < tri_rule.size(); ++q) {
      const Vec3 x = mesh.point(k, tri_rule.points[q]);
      const double div = velocity.divergence(k, x);
      const double uq = u.local(k).dot(tri_rule.points[q]);
      local += tri_rule.weights[q] * (c + mass_perturbation(div, c) + 0.5 * div) * uq * uq;
    }
    volume += mesh.element_areas[k] * local;
  }
  double skeleton = 0.0;
  for (int ei = 0; ei < mesh.num_edges(); ++ei) {
    const Edge& e = mesh.edges[ei];
    if (e.is_boundary()) continue;
    double local = 0.0;
    for (std::size_t q = 0; q < edge_rule.size(); ++q) {
      const double t = edge_rule.points[q];
      const Vec3 x = mesh.edge_point(ei, t);
      const double wn_avg =
          0.5 * (velocity.eval(e.plus, x).dot(e.conormal_plus) - velocity.eval(e.minus, x).dot(e.conormal_minus));
      const double j = jump(trace_pair(u, mesh, ei, t));
      local += edge_rule.weights[q] * 0.5 * std::abs(wn_avg) * j * j;
    }
    skeleton += e.length * local;
  }
  return volume + skeleton;
}

ManufacturedSolution layer_solution(double epsilon) {
  const double s = 1.0 / std::sqrt(epsilon);
  constexpr double inv_pi = std::numbers::inv_pi;
  ManufacturedSolution u;
  u.value = [=](const Vec3& x) { return x.x() * x.y() * inv_pi * std::atan(s * x.z()); };
  u.gradient = [=](const Vec3& x) -> Vec3 {
    const double a = std::atan(s * x.z());
    const double da = s / (1.0 + s * s * x.z() * x.z());
    return Vec3(x.y() * a, x.x() * a, x.x() * x.y() * da) * inv_pi;
  };
  u.hessian = [=](const Vec3& x) -> Mat3 {
    const double a = std::atan(s * x.z());
    const double q = 1.0 + s * s * x.z() * x.z();
    const double da = s / q;
    const double dda = -2.0 * s * s * s * x.z() / (q * q);
    Mat3 hess;
    hess << 0.0, a, x.y() * da,
            a, 0.0, x.x() * da,
            x.y() * da, x.x() * da, x.x() * x.y() * dda;
    return Mat3(hess * inv_pi);
  };
  return u;
}

double laplace_beltrami(const ManufacturedSolution& u, const ImplicitSurface& surface, const Vec3& x) {
  const Vec3 nu = surface.gradient(x);
  const Mat3 hess = u.hessian(x);
  const double mean_curvature = surface.hessian(x).trace();
  return hess.trace() - nu.dot(hess * nu) - mean_curvature * u.gradient(x).dot(nu);
}

ScalarField manufactured_rhs(const ManufacturedSolution& u, const ContinuousVelocity& w, double epsilon, double c,
                             const ImplicitSurface& surface) {
  return [u, w, epsilon, c, &surface](const Vec3& x) {
    const Vec3 tangential_grad = surface_projector(surface, x) * u.gradient(x);
    const double diffusion = epsilon > 0.0 ? -epsilon * laplace_beltrami(u, surface, x) : 0.0;
    return diffusion + w(x).dot(tangential_grad) + c * u.value(x);
  };
}

LinearSystem assemble_ipup(const SurfaceMesh& mesh, const DiscreteVelocity& velocity,
                           const ProblemCoefficients& coeffs, const ScalarField& f, const ImplicitSurface& surface) {
  LinearSystem sys;
  sys.matrix = assemble_advection(mesh, velocity, coeffs.c);
  if (coeffs.epsilon > 0.0) sys.matrix += assemble_diffusion_ip(mesh, coeffs.epsilon, coeffs.alpha);
  sys.rhs = assemble_rhs(mesh, f, surface);
  return sys;
}

LinearSystem assemble_cg_fem(const SurfaceMesh& mesh, const ContinuousVelocity& w, const ProblemCoefficients& coeffs,
                             const ScalarField& f, const ImplicitSurface& surface) {
  const auto& rule = triangle_rule_degree4();
  TripletList triplets;
  triplets.reserve(static_cast<std::size_t>(9 * mesh.num_elements()));
  VectorX rhs = VectorX::Zero(mesh.num_vertices());

  for (int k = 0; k < mesh.num_elements(); ++k) {
    const Mat3 grads = mesh.barycentric_gradients(k);
    const double area = mesh.element_areas[k];
    Mat3 local = coeffs.epsilon * area * grads.transpose() * grads;
    Vec3 load = Vec3::Zero();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Vec3& phi = rule.points[q];
      const Vec3 x = mesh.point(k, phi);
      const Vec3 wq = eval_lifted(w, surface, mesh, k, x);
      const Vec3 w_dot_grad = grads.transpose() * wq;
      local += area * rule.weights[q] * (phi * w_dot_grad.transpose() + coeffs.c * phi * phi.transpose());
      load += area * rule.weights[q] * f(surface.project(x)) * phi;
    }
    const auto& tri = mesh.triangles[k];
    for (int i = 0; i < 3; ++i) {
      rhs[tri[i]] += load[i];
      for (int j = 0; j < 3; ++j) triplets.emplace_back(tri[i], tri[j], local(i, j));
    }
  }
  return {to_sparse(mesh.num_vertices(), triplets), rhs};
}

}  // namespace sdg
