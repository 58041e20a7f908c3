#pragma once

#include <array>
#include <vector>

#include "sdg/geometry.hpp"
#include "sdg/types.hpp"

namespace sdg {

using Triangle = std::array<int, 3>;

/// Edge shared by a "+" element (the lower index) and a "-" element.
///
/// vertices are stored in increasing global index; this ordering also fixes
/// the edge parameter t in [0, 1] used by both incident elements. Boundary
/// edges (open patches only) carry minus == -1.
struct Edge {
  std::array<int, 2> vertices{};
  int plus = -1;
  int minus = -1;
  int plus_local = -1;   // local edge slot in the "+" element
  int minus_local = -1;  // local edge slot in the "-" element
  Vec3 conormal_plus = Vec3::Zero();
  Vec3 conormal_minus = Vec3::Zero();
  double length = 0.0;

  bool is_boundary() const { return minus < 0; }
};

/// Polyhedral surface made of planar triangles.
///
/// Local edge i of a triangle is the one opposite its local vertex i. All
/// per-element and per-edge geometric data is computed once at construction.
struct SurfaceMesh {
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
  std::vector<Edge> edges;
  std::vector<std::array<int, 3>> element_edges;
  std::vector<Vec3> element_normals;
  std::vector<double> element_areas;
  double h = 0.0;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_elements() const { return static_cast<int>(triangles.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int euler_characteristic() const { return num_vertices() - num_edges() + num_elements(); }
  bool is_closed() const;

  const Vec3& corner(int element, int local) const { return vertices[triangles[element][local]]; }
  Vec3 centroid(int element) const;
  Vec3 point(int element, const Vec3& barycentric) const;

  /// In-plane gradients of the three barycentric coordinates (columns).
  Mat3 barycentric_gradients(int element) const;

  /// Local vertex slot of global vertex v in element, or -1.
  int local_vertex(int element, int v) const;

  /// Barycentric coordinates in `element` of the point at parameter t on edge.
  Vec3 edge_barycentric(int element, int edge, double t) const;
  Vec3 edge_point(int edge, double t) const;
  Vec3 edge_tangent(int edge) const;

  double total_area() const;
};

/// Builds adjacency, normals, conormals and h from raw connectivity.
/// Throws std::invalid_argument on degenerate triangles or non-manifold edges.
SurfaceMesh make_surface_mesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles);

/// Icosahedron inscribed in the sphere, subdivided `level` times with
/// midpoints pushed to the sphere. Requires level <= 8.
SurfaceMesh build_icosphere(int level, double radius = 1.0);

/// Structured (angle, angle) grid on the torus, each quad split along its
/// shorter diagonal. Requires n_major >= 8 and n_minor >= 4.
SurfaceMesh build_torus_mesh(int n_major, int n_minor, const Torus& torus);

/// Uniform 1:4 subdivision; new vertices are edge midpoints projected onto the surface.
SurfaceMesh refine(const SurfaceMesh& mesh, const ImplicitSurface& surface);

/// Outward unit conormal of `element` on `edge`, lying in the element plane.
Vec3 conormal(const SurfaceMesh& mesh, int element, int edge);

}  // namespace sdg
