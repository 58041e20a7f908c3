#include "sdg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace sdg {

namespace {

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

Vec3 outward_conormal(const Vec3& a, const Vec3& b, const Vec3& opposite, const Vec3& normal) {
  Vec3 n = (b - a).cross(normal).normalized();
  if (n.dot(opposite - a) > 0.0) n = -n;
  return n;
}

}  // namespace

bool SurfaceMesh::is_closed() const {
  return std::none_of(edges.begin(), edges.end(), [](const Edge& e) { return e.is_boundary(); });
}

Vec3 SurfaceMesh::centroid(int element) const {
  return (corner(element, 0) + corner(element, 1) + corner(element, 2)) / 3.0;
}

Vec3 SurfaceMesh::point(int element, const Vec3& barycentric) const {
  return barycentric[0] * corner(element, 0) + barycentric[1] * corner(element, 1) +
         barycentric[2] * corner(element, 2);
}

Mat3 SurfaceMesh::barycentric_gradients(int element) const {
  const Vec3& n = element_normals[element];
  const double scale = 1.0 / (2.0 * element_areas[element]);
  Mat3 grads;
  for (int i = 0; i < 3; ++i) {
    const Vec3& p1 = corner(element, (i + 1) % 3);
    const Vec3& p2 = corner(element, (i + 2) % 3);
    grads.col(i) = scale * n.cross(p2 - p1);
  }
  return grads;
}

int SurfaceMesh::local_vertex(int element, int v) const {
  const auto& tri = triangles[element];
  for (int i = 0; i < 3; ++i)
    if (tri[i] == v) return i;
  return -1;
}

Vec3 SurfaceMesh::edge_barycentric(int element, int edge, double t) const {
  const Edge& e = edges[edge];
  const int la = local_vertex(element, e.vertices[0]);
  const int lb = local_vertex(element, e.vertices[1]);
  if (la < 0 || lb < 0) throw std::invalid_argument("edge does not belong to element");
  Vec3 bary = Vec3::Zero();
  bary[la] = 1.0 - t;
  bary[lb] = t;
  return bary;
}

Vec3 SurfaceMesh::edge_point(int edge, double t) const {
  const Edge& e = edges[edge];
  return (1.0 - t) * vertices[e.vertices[0]] + t * vertices[e.vertices[1]];
}

Vec3 SurfaceMesh::edge_tangent(int edge) const {
  const Edge& e = edges[edge];
  return (vertices[e.vertices[1]] - vertices[e.vertices[0]]).normalized();
}

double SurfaceMesh::total_area() const {
  double sum = 0.0;
  for (double a : element_areas) sum += a;
  return sum;
}

SurfaceMesh make_surface_mesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles) {
  SurfaceMesh mesh;
  mesh.vertices = std::move(vertices);
  mesh.triangles = std::move(triangles);

  const int nt = mesh.num_elements();
  mesh.element_normals.resize(nt);
  mesh.element_areas.resize(nt);
  mesh.element_edges.resize(nt);

  for (int k = 0; k < nt; ++k) {
    for (int v : mesh.triangles[k]) {
      if (v < 0 || v >= mesh.num_vertices()) throw std::invalid_argument("triangle references missing vertex");
    }
    const Vec3 cross = (mesh.corner(k, 1) - mesh.corner(k, 0)).cross(mesh.corner(k, 2) - mesh.corner(k, 0));
    const double twice_area = cross.norm();
    if (!(twice_area > 0.0)) throw std::invalid_argument("degenerate triangle " + std::to_string(k));
    mesh.element_normals[k] = cross / twice_area;
    mesh.element_areas[k] = 0.5 * twice_area;
  }

  std::unordered_map<std::uint64_t, int> lookup;
  lookup.reserve(static_cast<std::size_t>(3 * nt));
  for (int k = 0; k < nt; ++k) {
    const auto& tri = mesh.triangles[k];
    for (int i = 0; i < 3; ++i) {
      const int a = tri[(i + 1) % 3];
      const int b = tri[(i + 2) % 3];
      auto [it, inserted] = lookup.try_emplace(edge_key(a, b), mesh.num_edges());
      if (inserted) {
        Edge e;
        e.vertices = {std::min(a, b), std::max(a, b)};
        e.plus = k;
        e.plus_local = i;
        mesh.edges.push_back(e);
      } else {
        Edge& e = mesh.edges[it->second];
        if (e.minus >= 0) throw std::invalid_argument("non-manifold edge");
        // Elements are visited in increasing order, so the first one is "+".
        e.minus = k;
        e.minus_local = i;
      }
      mesh.element_edges[k][i] = it->second;
    }
  }

  double h = 0.0;
  for (Edge& e : mesh.edges) {
    const Vec3& a = mesh.vertices[e.vertices[0]];
    const Vec3& b = mesh.vertices[e.vertices[1]];
    e.length = (b - a).norm();
    h = std::max(h, e.length);
    e.conormal_plus = outward_conormal(a, b, mesh.corner(e.plus, e.plus_local), mesh.element_normals[e.plus]);
    if (!e.is_boundary()) {
      e.conormal_minus =
          outward_conormal(a, b, mesh.corner(e.minus, e.minus_local), mesh.element_normals[e.minus]);
    }
  }
  mesh.h = h;
  return mesh;
}

Vec3 conormal(const SurfaceMesh& mesh, int element, int edge) {
  if (edge < 0 || edge >= mesh.num_edges()) throw std::invalid_argument("edge index out of range");
  const Edge& e = mesh.edges[edge];
  if (element == e.plus) return e.conormal_plus;
  if (element == e.minus && !e.is_boundary()) return e.conormal_minus;
  throw std::invalid_argument("edge does not belong to element");
}

SurfaceMesh build_icosphere(int level, double radius) {
  if (level < 0 || level > 8) throw std::invalid_argument("icosphere level must be in [0, 8]");

  const double phi = std::numbers::phi;
  std::vector<Vec3> verts = {
      {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1},
  };
  for (auto& v : verts) v = radius * v.normalized();
  std::vector<Triangle> tris = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
  };

  for (int l = 0; l < level; ++l) {
    std::unordered_map<std::uint64_t, int> midpoint;
    auto mid = [&](int a, int b) {
      auto [it, inserted] = midpoint.try_emplace(edge_key(a, b), static_cast<int>(verts.size()));
      if (inserted) verts.push_back(radius * (0.5 * (verts[a] + verts[b])).normalized());
      return it->second;
    };
    std::vector<Triangle> next;
    next.reserve(4 * tris.size());
    for (const auto& t : tris) {
      const int ab = mid(t[0], t[1]);
      const int bc = mid(t[1], t[2]);
      const int ca = mid(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({t[1], bc, ab});
      next.push_back({t[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    tris = std::move(next);
  }
  return make_surface_mesh(std::move(verts), std::move(tris));
}

SurfaceMesh build_torus_mesh(int n_major, int n_minor, const Torus& torus) {
  if (n_major < 8 || n_minor < 4) throw std::invalid_argument("torus resolution too coarse (need n_major >= 8, n_minor >= 4)");

  const double R = torus.major_radius();
  const double r = torus.minor_radius();
  std::vector<Vec3> verts;
  verts.reserve(static_cast<std::size_t>(n_major) * n_minor);
  for (int i = 0; i < n_major; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / n_major;
    for (int j = 0; j < n_minor; ++j) {
      const double psi = 2.0 * std::numbers::pi * j / n_minor;
      const double rho = R + r * std::cos(psi);
      verts.emplace_back(rho * std::cos(phi), rho * std::sin(phi), r * std::sin(psi));
    }
  }
  auto id = [&](int i, int j) { return ((i % n_major) * n_minor) + (j % n_minor); };
  auto oriented = [&](Triangle t) {
    const Vec3 c = (verts[t[0]] + verts[t[1]] + verts[t[2]]) / 3.0;
    const Vec3 n = (verts[t[1]] - verts[t[0]]).cross(verts[t[2]] - verts[t[0]]);
    if (n.dot(torus.gradient(c)) < 0.0) std::swap(t[1], t[2]);
    return t;
  };

  std::vector<Triangle> tris;
  tris.reserve(2 * verts.size());
  for (int i = 0; i < n_major; ++i) {
    for (int j = 0; j < n_minor; ++j) {
      const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      if ((verts[a] - verts[c]).norm() <= (verts[b] - verts[d]).norm()) {
        tris.push_back(oriented({a, b, c}));
        tris.push_back(oriented({a, c, d}));
      } else {
        tris.push_back(oriented({a, b, d}));
        tris.push_back(oriented({b, c, d}));
      }
    }
  }
  return make_surface_mesh(std::move(verts), std::move(tris));
}

SurfaceMesh refine(const SurfaceMesh& mesh, const ImplicitSurface& surface) {
  std::vector<Vec3> verts = mesh.vertices;
  const int nv = mesh.num_vertices();
  verts.reserve(static_cast<std::size_t>(nv + mesh.num_edges()));
  for (const Edge& e : mesh.edges) {
    verts.push_back(surface.project(0.5 * (mesh.vertices[e.vertices[0]] + mesh.vertices[e.vertices[1]])));
  }
  std::vector<Triangle> tris;
  tris.reserve(4 * mesh.triangles.size());
  for (int k = 0; k < mesh.num_elements(); ++k) {
    const auto& t = mesh.triangles[k];
    const auto& ed = mesh.element_edges[k];
    // Local edge i is opposite vertex i.
    const int bc = nv + ed[0];
    const int ca = nv + ed[1];
    const int ab = nv + ed[2];
    tris.push_back({t[0], ab, ca});
    tris.push_back({t[1], bc, ab});
    tris.push_back({t[2], ca, bc});
    tris.push_back({ab, bc, ca});
  }
  return make_surface_mesh(std::move(verts), std::move(tris));
}

}  // namespace sdg
