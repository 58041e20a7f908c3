#include <doctest.h>

#include <cmath>
#include <random>

#include "sdg/dg_function.hpp"

using namespace sdg;

namespace {

SurfaceMesh single_triangle() {
  return make_surface_mesh({Vec3(0.2, 0.1, 0.3), Vec3(1.4, 0.0, 0.5), Vec3(0.1, 1.1, 0.9)}, {Triangle{0, 1, 2}});
}

double element_l2_error(const DGFunction& u, const ScalarField& f, const SurfaceMesh& mesh) {
  const EdgeRule dense = gauss_edge_rule(6);
  double sum = 0.0;
  for (int k = 0; k < mesh.num_elements(); ++k) {
    // Conical product rule over the triangle, exact well beyond degree 4.
    for (std::size_t i = 0; i < dense.size(); ++i)
      for (std::size_t j = 0; j < dense.size(); ++j) {
        const double s = dense.points[i], t = dense.points[j];
        const Vec3 bary(1.0 - s, s * (1.0 - t), s * t);
        const double w = dense.weights[i] * dense.weights[j] * 2.0 * s;
        const double e = u.local(k).dot(bary) - f(mesh.point(k, bary));
        sum += mesh.element_areas[k] * w * e * e;
      }
  }
  return std::sqrt(sum);
}

double trace_l2_error(const DGFunction& u, const ScalarField& f, const SurfaceMesh& mesh) {
  const EdgeRule dense = gauss_edge_rule(6);
  double sum = 0.0;
  for (int ei = 0; ei < mesh.num_edges(); ++ei) {
    const Edge& e = mesh.edges[ei];
    for (std::size_t q = 0; q < dense.size(); ++q) {
      const double t = dense.points[q];
      const auto [up, um] = trace_pair(u, mesh, ei, t);
      const double fx = f(mesh.edge_point(ei, t));
      sum += e.length * dense.weights[q] * ((up - fx) * (up - fx) + (um - fx) * (um - fx));
    }
  }
  return std::sqrt(sum);
}

}  // namespace

TEST_CASE("evaluate") {
  DGFunction u(1);
  u.local(0) << 1, 1, 1;
  CHECK(evaluate(u, 0, Vec3(0.2, 0.3, 0.5)) == doctest::Approx(1.0));
  u.local(0) << 1, 0, 0;
  CHECK(evaluate(u, 0, Vec3(1, 0, 0)) == 1.0);
  u.local(0) << 2, 4, 6;
  CHECK(evaluate(u, 0, Vec3::Constant(1.0 / 3.0)) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK_THROWS_AS(evaluate(u, 0, Vec3(0.5, 0.6, -0.1)), std::invalid_argument);
  CHECK_THROWS_AS(evaluate(u, 0, Vec3(0.5, 0.6, 0.1)), std::invalid_argument);
  CHECK(dof(3, 2) == 11);
}

TEST_CASE("trace pairs, jumps and averages") {
  const SurfaceMesh mesh = build_icosphere(1);
  DGFunction c(mesh.num_elements());
  c.coefficients().setConstant(2.5);
  for (int ei = 0; ei < mesh.num_edges(); ++ei) {
    const auto tr = trace_pair(c, mesh, ei, 0.3);
    CHECK(jump(tr) == 0.0);
    CHECK(average(tr) == doctest::Approx(2.5));
  }
  CHECK(jump({2.0, 0.0}) == 2.0);
  CHECK(average({2.0, 0.0}) == 1.0);

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> uni(-1, 1);
  DGFunction u(mesh.num_elements());
  for (int i = 0; i < u.coefficients().size(); ++i) u.coefficients()[i] = uni(rng);
  for (int ei = 0; ei < mesh.num_edges(); ++ei) {
    const Edge& e = mesh.edges[ei];
    const auto [p0, m0] = trace_pair(u, mesh, ei, 0.0);
    const auto [p1, m1] = trace_pair(u, mesh, ei, 1.0);
    CHECK(p0 == doctest::Approx(u.local(e.plus)[mesh.local_vertex(e.plus, e.vertices[0])]));
    CHECK(m0 == doctest::Approx(u.local(e.minus)[mesh.local_vertex(e.minus, e.vertices[0])]));
    CHECK(p1 == doctest::Approx(u.local(e.plus)[mesh.local_vertex(e.plus, e.vertices[1])]));
    CHECK(m1 == doctest::Approx(u.local(e.minus)[mesh.local_vertex(e.minus, e.vertices[1])]));
  }
}

TEST_CASE("gradient of a linear field") {
  const SurfaceMesh mesh = single_triangle();
  const Vec3 g(0.3, -1.2, 0.7);
  const ScalarField f = [&](const Vec3& x) { return 0.5 + g.dot(x); };
  DGFunction u(1);
  for (int i = 0; i < 3; ++i) u.local(0)[i] = f(mesh.corner(0, i));
  const Vec3 nu = mesh.element_normals[0];
  CHECK((gradient(u, mesh, 0) - (g - g.dot(nu) * nu)).norm() < 1e-14);
}

TEST_CASE("L2 projection reproduces linears, is idempotent and Galerkin orthogonal") {
  const SurfaceMesh mesh = single_triangle();
  const ScalarField lin = [](const Vec3& x) { return 1.0 - 2.0 * x.x() + 0.5 * x.y() + 3.0 * x.z(); };
  const DGFunction p = l2_project(lin, mesh, 1);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(p.local(0)[i] - lin(mesh.corner(0, i))) < 1e-13);

  const SurfaceMesh sphere = build_icosphere(2);
  const ScalarField f = [](const Vec3& x) { return std::sin(3 * x.x()) + x.y() * x.z(); };
  const DGFunction pf = l2_project(f, sphere, 1);
  const auto& rule = triangle_rule_degree4();
  for (int k = 0; k < sphere.num_elements(); ++k) {
    const SurfaceMesh one = make_surface_mesh(
        {sphere.corner(k, 0), sphere.corner(k, 1), sphere.corner(k, 2)}, {Triangle{0, 1, 2}});
    const Vec3 coeffs = pf.local(k);
    const ScalarField local = [&](const Vec3& x) {
      const Mat3 g = one.barycentric_gradients(0);
      const Vec3 bary = Vec3::Constant(1.0 / 3.0) + g.transpose() * (x - one.centroid(0));
      return coeffs.dot(bary);
    };
    const DGFunction again = l2_project(local, one, 1);
    CHECK((again.local(0) - coeffs).norm() < 1e-13);

    Vec3 residual = Vec3::Zero();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Vec3& phi = rule.points[q];
      residual += rule.weights[q] * (f(sphere.point(k, phi)) - coeffs.dot(phi)) * phi;
    }
    CHECK(residual.norm() < 1e-12);
  }

  DGFunction p0 = l2_project(lin, mesh, 0);
  CHECK(p0.local(0)[0] == doctest::Approx(lin(mesh.centroid(0))));
  CHECK_THROWS(l2_project(lin, mesh, 2));
}

TEST_CASE("projection error orders") {
  Sphere sphere;
  const ScalarField f = [](const Vec3& x) { return x.z() * x.z(); };
  SurfaceMesh mesh = build_icosphere(1);
  double prev1 = 0, prev0 = 0, prevt = 0;
  for (int level = 1; level <= 4; ++level) {
    if (level > 1) mesh = refine(mesh, sphere);
    const DGFunction p1 = l2_project(f, mesh, 1);
    const double e1 = element_l2_error(p1, f, mesh);
    const double e0 = element_l2_error(l2_project(f, mesh, 0), f, mesh);
    const double et = trace_l2_error(p1, f, mesh);
    if (level >= 3) {
      CHECK(prev1 / e1 > std::pow(2.0, 1.7));
      CHECK(prev1 / e1 < std::pow(2.0, 2.3));
      CHECK(prev0 / e0 > std::pow(2.0, 0.7));
      CHECK(prev0 / e0 < std::pow(2.0, 1.3));
      CHECK(prevt / et > std::pow(2.0, 1.2));
      CHECK(prevt / et < std::pow(2.0, 1.8));
    }
    prev1 = e1;
    prev0 = e0;
    prevt = et;
  }
}

TEST_CASE("lifted integrals recover surface areas") {
  Sphere sphere;
  Torus torus;
  const ScalarField one = [](const Vec3&) { return 1.0; };
  SurfaceMesh m = build_icosphere(3);
  const double e3 = std::abs(integrate_lifted(one, m, sphere) - 4 * M_PI);
  CHECK(e3 < 1e-4);
  m = refine(m, sphere);
  const double e4 = std::abs(integrate_lifted(one, m, sphere) - 4 * M_PI);
  CHECK(e3 / e4 > 3.0);

  const double facets = integrate_lifted(one, m, sphere, false);
  CHECK(facets == doctest::Approx(m.total_area()).epsilon(1e-13));
  CHECK(facets < 4 * M_PI);
  CHECK(integrate_discrete(one, m) == doctest::Approx(m.total_area()).epsilon(1e-13));

  SurfaceMesh t = refine(build_torus_mesh(24, 6, torus), torus);
  const double et1 = std::abs(integrate_lifted(one, t, torus) - M_PI * M_PI);
  t = refine(t, torus);
  const double et2 = std::abs(integrate_lifted(one, t, torus) - M_PI * M_PI);
  CHECK(et2 < 1e-4);
  CHECK(et1 / et2 > 3.0);
}
