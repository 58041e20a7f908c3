#include "sdg/geometry.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/LU>

namespace sdg {

namespace {
constexpr double kSingularTol = 1e-14;
}

void ImplicitSurface::check_tube(double d) const {
  if (std::abs(d) > tube_width() * (1.0 + 1e-12)) {
    throw OutOfTubeError(name() + ": point at distance " + std::to_string(d) +
                         " is outside the tubular neighbourhood");
  }
}

// ---------------------------------------------------------------------------

Sphere::Sphere(double radius) : radius_(radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("sphere radius must be positive");
}

double Sphere::distance(const Vec3& x) const {
  const double r = x.norm();
  if (r < kSingularTol * radius_) throw SingularPointError("sphere: distance at the centre");
  return r - radius_;
}

Vec3 Sphere::gradient(const Vec3& x) const {
  const double r = x.norm();
  if (r < kSingularTol * radius_) throw SingularPointError("sphere: normal at the centre");
  return x / r;
}

Mat3 Sphere::hessian(const Vec3& x) const {
  const double r = x.norm();
  if (r < kSingularTol * radius_) throw SingularPointError("sphere: curvature at the centre");
  const Vec3 n = x / r;
  return tangent_projector(n) / r;
}

Vec3 Sphere::project(const Vec3& x) const {
  check_tube(distance(x));
  return radius_ * (x / x.norm());
}

double Sphere::area() const { return 4.0 * std::numbers::pi * radius_ * radius_; }

// ---------------------------------------------------------------------------

Torus::Torus(double major_radius, double minor_radius)
    : major_(major_radius), minor_(minor_radius) {
  if (!(minor_radius > 0.0) || !(major_radius > minor_radius)) {
    throw std::invalid_argument("torus radii must satisfy R > r > 0");
  }
}

Vec3 Torus::spine_point(const Vec3& x) const {
  const double rho = std::hypot(x.x(), x.y());
  if (rho < kSingularTol * major_) throw SingularPointError("torus: point on the symmetry axis");
  const Vec3 s(major_ * x.x() / rho, major_ * x.y() / rho, 0.0);
  if ((x - s).norm() < kSingularTol * minor_) throw SingularPointError("torus: point on the spine circle");
  return s;
}

double Torus::distance(const Vec3& x) const { return (x - spine_point(x)).norm() - minor_; }

Vec3 Torus::gradient(const Vec3& x) const { return (x - spine_point(x)).normalized(); }

Mat3 Torus::hessian(const Vec3& x) const {
  const Vec3 y = x - spine_point(x);
  const double dist = y.norm();
  const Vec3 n = y / dist;
  const double rho = std::hypot(x.x(), x.y());
  // Unit vector along the parallel circle through x.
  const Vec3 e_phi(-x.y() / rho, x.x() / rho, 0.0);
  return (tangent_projector(n) - (major_ / rho) * e_phi * e_phi.transpose()) / dist;
}

Vec3 Torus::project(const Vec3& x) const {
  const Vec3 s = spine_point(x);
  const Vec3 y = x - s;
  check_tube(y.norm() - minor_);
  return s + minor_ * y.normalized();
}

double Torus::tube_width() const { return std::min(minor_, major_ - minor_); }

double Torus::area() const { return 4.0 * std::numbers::pi * std::numbers::pi * major_ * minor_; }

// ---------------------------------------------------------------------------

double signed_distance(const ImplicitSurface& surface, const Vec3& x) { return surface.distance(x); }

Vec3 project_to_surface(const ImplicitSurface& surface, const Vec3& x) { return surface.project(x); }

Vec3 surface_normal(const ImplicitSurface& surface, const Vec3& x) { return surface.gradient(x); }

Mat3 surface_projector(const ImplicitSurface& surface, const Vec3& x) {
  return tangent_projector(surface.gradient(x));
}

Mat3 projection_jacobian(const ImplicitSurface& surface, const Vec3& x) {
  return surface_projector(surface, x) - surface.distance(x) * surface.hessian(x);
}

double area_deformation(const ImplicitSurface& surface, const Vec3& nu_h, const Vec3& x) {
  // H(x) has the normal as null vector, so det(I - d H) is the product over
  // the two principal curvatures at x.
  const double d = surface.distance(x);
  const Mat3 stretch = Mat3::Identity() - d * surface.hessian(x);
  return surface.gradient(x).dot(nu_h) * stretch.determinant();
}

double edge_deformation(const ImplicitSurface& surface, const Vec3& edge_point,
                        const Vec3& edge_tangent, double step) {
  const Vec3 forward = surface.project(edge_point + step * edge_tangent);
  const Vec3 backward = surface.project(edge_point - step * edge_tangent);
  return (forward - backward).norm() / (2.0 * step);
}

std::unique_ptr<ImplicitSurface> make_surface(const std::string& name) {
  if (name == "sphere") return std::make_unique<Sphere>(1.0);
  if (name == "torus") return std::make_unique<Torus>(1.0, 0.25);
  throw std::invalid_argument("unknown surface '" + name + "'");
}

}  // namespace sdg
