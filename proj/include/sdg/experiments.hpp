#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sdg/analysis.hpp"

namespace sdg {

enum class Method { ipup, fem };

Method parse_method(const std::string& name);
std::string to_string(Method method);
DGNormVariant parse_dg_norm(const std::string& name);
std::string to_string(DGNormVariant variant);

struct ExperimentConfig {
  std::string surface = "sphere";
  Method method = Method::ipup;
  VelocityMode velocity = VelocityMode::rt0;
  double epsilon = 1e-6;
  double c = 1.0;
  double alpha = 10.0;
  int level_min = 1;
  int level_max = 5;
  // Unset: 0.3 on the sphere, 0.1 on the torus.
  std::optional<double> subdomain_x3;
  DGNormVariant dg_norm = DGNormVariant::unweighted_h1;
  std::string csv_path;
  std::string vtk_dir;
  // Levels past the desk-scale cap (~100k elements) need this switch.
  bool allow_large = false;

  ProblemCoefficients coefficients() const { return {epsilon, c, alpha}; }
  double band() const;
  void validate() const;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// "A..B" or a single level "A".
std::pair<int, int> parse_levels(const std::string& text);

std::string config_to_json(const ExperimentConfig& config);
/// Applies the keys present in the JSON text on top of `base`.
ExperimentConfig config_from_json(const std::string& text, ExperimentConfig base = {});

/// Mesh for a refinement level: icosphere level L on the sphere; on the torus
/// the (24, 6) grid refined L times.
SurfaceMesh base_mesh(const ImplicitSurface& surface, int level);

/// Solves one level and returns its error row (no EOCs filled in).
ErrorReport solve_level(const ExperimentConfig& config, const SurfaceMesh& mesh, const ImplicitSurface& surface,
                        int level, DGFunction* solution = nullptr);

/// Runs the refinement sequence, fills EOCs and writes the CSV if configured.
std::vector<ErrorReport> run_convergence(const ExperimentConfig& config);

struct TorusDemoRow {
  int level = 0;
  int n_elements = 0;
  double h = 0.0;
  double ipup_linf_off_layer = 0.0;
  double fem_linf_off_layer = 0.0;
  double ipup_linf_on_layer = 0.0;
  double fem_linf_on_layer = 0.0;
};

/// IP/UP vs unstabilised FEM on the torus layer problem; writes VTK files for
/// every level when vtk_dir is set.
std::vector<TorusDemoRow> run_torus_demo(const ExperimentConfig& config);

struct GeometryRow {
  int level = 0;
  int n_elements = 0;
  GeometryReport report;
};

struct GeometryOrders {
  double distance, area_factor, normal, edge_factor, conormal, projector, projector_sym;
  double normal_jump, divergence, velocity_error;
};

std::vector<GeometryRow> run_geomcheck(const ExperimentConfig& config);
/// Least-squares orders over all rows; an order is NaN when its quantity
/// vanishes (the normal jump counts as vanished when s_w is 0 on every row).
GeometryOrders geometry_orders(const std::vector<GeometryRow>& rows);
void write_geometry_csv(const std::string& path, const std::vector<GeometryRow>& rows);

}  // namespace sdg
