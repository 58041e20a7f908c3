#include "sdg/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace sdg {

namespace {

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

void write_scalars(std::ostream& out, const VtkField& field, std::size_t expected) {
  if (field.values.size() != expected) throw std::invalid_argument("VTK field '" + field.name + "' has wrong length");
  out << "SCALARS " << field.name << " double 1\nLOOKUP_TABLE default\n";
  for (double v : field.values) out << v << '\n';
}

}  // namespace

std::string format_sci(double value) {
  if (std::isnan(value)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5e", value);
  return buf;
}

void write_vtk(std::ostream& out, const SurfaceMesh& mesh, const std::vector<VtkField>& point_data,
               const std::vector<VtkField>& cell_data, const std::string& title) {
  const int nv = mesh.num_vertices();
  const int nt = mesh.num_elements();
  out << std::setprecision(12);
  out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << nv << " double\n";
  for (const Vec3& v : mesh.vertices) out << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  out << "CELLS " << nt << ' ' << 4 * nt << '\n';
  for (const auto& t : mesh.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "CELL_TYPES " << nt << '\n';
  for (int k = 0; k < nt; ++k) out << "5\n";
  if (!cell_data.empty()) {
    out << "CELL_DATA " << nt << '\n';
    for (const auto& f : cell_data) write_scalars(out, f, static_cast<std::size_t>(nt));
  }
  if (!point_data.empty()) {
    out << "POINT_DATA " << nv << '\n';
    for (const auto& f : point_data) write_scalars(out, f, static_cast<std::size_t>(nv));
  }
}

void write_vtk(const std::string& path, const SurfaceMesh& mesh, const std::vector<VtkField>& point_data,
               const std::vector<VtkField>& cell_data, const std::string& title) {
  auto out = open_or_throw(path);
  write_vtk(out, mesh, point_data, cell_data, title);
}

void write_vtk_discontinuous(const std::string& path, const SurfaceMesh& mesh,
                             const std::vector<std::pair<std::string, const DGFunction*>>& fields,
                             const std::string& title) {
  std::vector<Vec3> points;
  std::vector<Triangle> tris;
  points.reserve(3 * mesh.triangles.size());
  for (int k = 0; k < mesh.num_elements(); ++k) {
    for (int i = 0; i < 3; ++i) points.push_back(mesh.corner(k, i));
    tris.push_back({3 * k, 3 * k + 1, 3 * k + 2});
  }
  SurfaceMesh split;
  split.vertices = std::move(points);
  split.triangles = std::move(tris);

  std::vector<VtkField> point_data;
  for (const auto& [name, u] : fields) {
    const VectorX& c = u->coefficients();
    point_data.push_back({name, std::vector<double>(c.data(), c.data() + c.size())});
  }
  auto out = open_or_throw(path);
  write_vtk(out, split, point_data, {}, title);
}

void write_convergence_csv(std::ostream& out, const std::vector<ErrorReport>& rows) {
  out << "level,elements,h,l2_error,l2_eoc,dg_error,dg_eoc,linf_error,solver_iters\n";
  for (const auto& r : rows) {
    out << r.level << ',' << r.n_elements << ',' << format_sci(r.h) << ',' << format_sci(r.l2_error) << ','
        << (r.l2_eoc ? format_sci(*r.l2_eoc) : "") << ',' << format_sci(r.dg_error) << ','
        << (r.dg_eoc ? format_sci(*r.dg_eoc) : "") << ',' << format_sci(r.linf_error) << ','
        << (r.failed ? -1 : r.solver_iterations) << '\n';
  }
}

void write_convergence_csv(const std::string& path, const std::vector<ErrorReport>& rows) {
  auto out = open_or_throw(path);
  write_convergence_csv(out, rows);
}

void print_convergence_table(std::ostream& out, const std::vector<ErrorReport>& rows) {
  char line[200];
  std::snprintf(line, sizeof line, "%5s %9s %10s %12s %7s %12s %7s %12s %6s\n", "level", "elements", "h",
                "L2(D)", "eoc", "DG(D)", "eoc", "Linf(D)", "iters");
  out << line;
  auto eoc_str = [](const std::optional<double>& e) {
    if (!e) return std::string();
    char b[16];
    std::snprintf(b, sizeof b, "%.2f", *e);
    return std::string(b);
  };
  for (const auto& r : rows) {
    if (r.failed) {
      std::snprintf(line, sizeof line, "%5d %9d %10.4f  solver failed\n", r.level, r.n_elements, r.h);
    } else {
      std::snprintf(line, sizeof line, "%5d %9d %10.4f %12.4e %7s %12.4e %7s %12.4e %6d\n", r.level, r.n_elements,
                    r.h, r.l2_error, eoc_str(r.l2_eoc).c_str(), r.dg_error, eoc_str(r.dg_eoc).c_str(), r.linf_error,
                    r.solver_iterations);
    }
    out << line;
  }
}

}  // namespace sdg
