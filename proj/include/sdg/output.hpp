#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sdg/analysis.hpp"

namespace sdg {

struct VtkField {
  std::string name;
  std::vector<double> values;
};

/// Legacy ASCII VTK 3.0 unstructured grid of triangles. point_data has one
/// value per mesh vertex, cell_data one per triangle.
void write_vtk(std::ostream& out, const SurfaceMesh& mesh, const std::vector<VtkField>& point_data,
               const std::vector<VtkField>& cell_data, const std::string& title = "surface mesh");
void write_vtk(const std::string& path, const SurfaceMesh& mesh, const std::vector<VtkField>& point_data,
               const std::vector<VtkField>& cell_data, const std::string& title = "surface mesh");

/// Same, but with three private points per triangle so that discontinuous
/// fields can be stored as POINT_DATA.
void write_vtk_discontinuous(const std::string& path, const SurfaceMesh& mesh,
                             const std::vector<std::pair<std::string, const DGFunction*>>& fields,
                             const std::string& title = "dg field");

/// Convergence rows: level,elements,h,l2_error,l2_eoc,dg_error,dg_eoc,linf_error,solver_iters.
void write_convergence_csv(std::ostream& out, const std::vector<ErrorReport>& rows);
void write_convergence_csv(const std::string& path, const std::vector<ErrorReport>& rows);
void print_convergence_table(std::ostream& out, const std::vector<ErrorReport>& rows);

/// Scientific notation with six significant digits ("nan" for NaN).
std::string format_sci(double value);

}  // namespace sdg
