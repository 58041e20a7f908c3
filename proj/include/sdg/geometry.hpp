#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "sdg/types.hpp"

namespace sdg {

class SingularPointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class OutOfTubeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Closed surface given as the zero level set of a signed distance function.
///
/// d < 0 inside, nu = grad d points outward, and hessian() is the Weingarten
/// map extended constantly along normal lines. Subclasses supply the closed
/// forms; everything else in the library goes through this interface.
class ImplicitSurface {
 public:
  virtual ~ImplicitSurface() = default;

  virtual double distance(const Vec3& x) const = 0;
  virtual Vec3 gradient(const Vec3& x) const = 0;
  virtual Mat3 hessian(const Vec3& x) const = 0;

  /// Closest point on the surface. Throws OutOfTubeError when |d(x)| exceeds
  /// tube_width().
  virtual Vec3 project(const Vec3& x) const = 0;

  /// Reciprocal of the largest principal curvature magnitude.
  virtual double tube_width() const = 0;
  virtual double area() const = 0;
  virtual std::string name() const = 0;

 protected:
  void check_tube(double d) const;
};

class Sphere final : public ImplicitSurface {
 public:
  explicit Sphere(double radius = 1.0);

  double radius() const { return radius_; }

  double distance(const Vec3& x) const override;
  Vec3 gradient(const Vec3& x) const override;
  Mat3 hessian(const Vec3& x) const override;
  Vec3 project(const Vec3& x) const override;
  double tube_width() const override { return radius_; }
  double area() const override;
  std::string name() const override { return "sphere"; }

 private:
  double radius_;
};

/// Torus of revolution about the x3 axis:
/// (sqrt(x1^2 + x2^2) - R)^2 + x3^2 = r^2.
class Torus final : public ImplicitSurface {
 public:
  Torus(double major_radius = 1.0, double minor_radius = 0.25);

  double major_radius() const { return major_; }
  double minor_radius() const { return minor_; }

  double distance(const Vec3& x) const override;
  Vec3 gradient(const Vec3& x) const override;
  Mat3 hessian(const Vec3& x) const override;
  Vec3 project(const Vec3& x) const override;
  double tube_width() const override;
  double area() const override;
  std::string name() const override { return "torus"; }

 private:
  // Nearest point on the spine circle; throws on the axis or the spine.
  Vec3 spine_point(const Vec3& x) const;

  double major_;
  double minor_;
};

double signed_distance(const ImplicitSurface& surface, const Vec3& x);
Vec3 project_to_surface(const ImplicitSurface& surface, const Vec3& x);

/// Normal nu(x) = grad d(x); constant along normal lines.
Vec3 surface_normal(const ImplicitSurface& surface, const Vec3& x);

/// P(x) = I - nu nu^T.
Mat3 surface_projector(const ImplicitSurface& surface, const Vec3& x);

/// Jacobian of the closest point map, D xi = P - d H.
Mat3 projection_jacobian(const ImplicitSurface& surface, const Vec3& x);

/// Area element ratio dA(xi(x)) / dA_h(x) for a point x on a planar facet
/// with unit normal nu_h:  (nu . nu_h) * prod_i (1 - d kappa_i).
double area_deformation(const ImplicitSurface& surface, const Vec3& nu_h, const Vec3& x);

/// Length element ratio ds(xi(x)) / ds_h(x) along a straight edge with unit
/// tangent t, as |D xi(x) t| by central differences of xi with the given step.
double edge_deformation(const ImplicitSurface& surface, const Vec3& edge_point,
                        const Vec3& edge_tangent, double step);

std::unique_ptr<ImplicitSurface> make_surface(const std::string& name);

}  // namespace sdg
