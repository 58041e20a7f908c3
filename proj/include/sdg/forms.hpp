#pragma once

#include <functional>

#include "sdg/dg_function.hpp"
#include "sdg/linalg.hpp"
#include "sdg/velocity.hpp"

namespace sdg {

struct ProblemCoefficients {
  double epsilon = 1e-6;
  double c = 1.0;
  double alpha = 10.0;  // interior penalty parameter
};

/// Switches for the two terms that make the advection form coercive on a
/// curved triangulation. Turning both off gives the naive upwind form.
struct AdvectionOptions {
  bool mass_perturbation = true;
  bool velocity_jump_correction = true;
};

struct LinearSystem {
  SparseMatrix matrix;
  VectorX rhs;
};

/// Upwind flux {w;n}{u} + |{w;n}|/2 [u] for a given {w;n} = wn_avg.
double upwind_flux(double wn_avg, double u_plus, double u_minus);

/// Advection form: element terms -w_h u . grad v + (c + gamma_h) u v, upwind
/// flux on every interior edge and the velocity normal-jump correction.
SparseMatrix assemble_advection(const SurfaceMesh& mesh, const DiscreteVelocity& velocity, double c,
                                const AdvectionOptions& options = {});

/// Symmetric interior penalty discretisation of -eps Laplace-Beltrami with
/// penalty eps * alpha / h. Returns an all-zero matrix when epsilon == 0.
SparseMatrix assemble_diffusion_ip(const SurfaceMesh& mesh, double epsilon, double alpha);

/// Load vector int_K f(xi(x)) phi_i over the discrete surface.
VectorX assemble_rhs(const SurfaceMesh& mesh, const ScalarField& f, const ImplicitSurface& surface);

/// Volume + jump side of the advection energy identity:
/// Sum_K int (c + gamma_h + div/2) u^2 + Sum_e int |{w;n}|/2 [u]^2.
double advection_energy(const SurfaceMesh& mesh, const DiscreteVelocity& velocity, double c, const DGFunction& u);

/// Closed-form ambient function with its gradient and Hessian.
struct ManufacturedSolution {
  ScalarField value;
  std::function<Vec3(const Vec3&)> gradient;
  std::function<Mat3(const Vec3&)> hessian;
};

/// u = (x1 x2 / pi) atan(x3 / sqrt(eps)), which has an O(sqrt(eps)) layer at x3 = 0.
ManufacturedSolution layer_solution(double epsilon);

/// Laplace-Beltrami of the restriction of u to the surface at a surface point.
double laplace_beltrami(const ManufacturedSolution& u, const ImplicitSurface& surface, const Vec3& x);

/// f = -eps Lap_G u + w . grad_G u + c u for tangential, divergence-free w.
ScalarField manufactured_rhs(const ManufacturedSolution& u, const ContinuousVelocity& w, double epsilon, double c,
                             const ImplicitSurface& surface);

/// Full DG system (IP diffusion + stabilised advection) and its load vector.
LinearSystem assemble_ipup(const SurfaceMesh& mesh, const DiscreteVelocity& velocity,
                           const ProblemCoefficients& coeffs, const ScalarField& f, const ImplicitSurface& surface);

/// Unstabilised continuous P1 surface FEM on the vertices of the mesh.
LinearSystem assemble_cg_fem(const SurfaceMesh& mesh, const ContinuousVelocity& w, const ProblemCoefficients& coeffs,
                             const ScalarField& f, const ImplicitSurface& surface);

}  // namespace sdg
