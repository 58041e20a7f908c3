#include "sdg/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>

#include <json.hpp>

#include "sdg/output.hpp"

namespace sdg {

namespace {

constexpr long kDeskElementCap = 100000;

ContinuousVelocity velocity_for(const ImplicitSurface& surface) {
  return surface.name() == "torus" ? torus_rotation_field() : sphere_rotation_field();
}

long elements_at_level(const std::string& surface, int level) {
  const long base = surface == "torus" ? 288 : 20;
  return base << (2 * level);
}

}  // namespace

Method parse_method(const std::string& name) {
  if (name == "ipup") return Method::ipup;
  if (name == "fem") return Method::fem;
  throw ConfigError("unknown method '" + name + "'");
}

std::string to_string(Method method) { return method == Method::ipup ? "ipup" : "fem"; }

DGNormVariant parse_dg_norm(const std::string& name) {
  if (name == "unweighted" || name == "unweighted_h1") return DGNormVariant::unweighted_h1;
  if (name == "weighted" || name == "eps_weighted") return DGNormVariant::eps_weighted;
  throw ConfigError("unknown DG norm variant '" + name + "'");
}

std::string to_string(DGNormVariant variant) {
  return variant == DGNormVariant::unweighted_h1 ? "unweighted" : "weighted";
}

double ExperimentConfig::band() const {
  if (subdomain_x3) return *subdomain_x3;
  return surface == "torus" ? 0.1 : 0.3;
}

void ExperimentConfig::validate() const {
  if (surface != "sphere" && surface != "torus") throw ConfigError("surface must be sphere or torus");
  if (!(epsilon >= 0.0)) throw ConfigError("epsilon must be >= 0");
  if (!(c > 0.0)) throw ConfigError("c must be > 0");
  if (!(alpha > 0.0)) throw ConfigError("alpha must be > 0");
  if (level_min < 0 || level_max < level_min) throw ConfigError("levels must be a nonempty range A..B with A >= 0");
  const int hard_cap = surface == "torus" ? 6 : 8;
  if (level_max > hard_cap) throw ConfigError("level above the memory guard");
  if (!allow_large && elements_at_level(surface, level_max) > kDeskElementCap) {
    throw ConfigError("finest level exceeds ~100k elements; pass --large to run it");
  }
}

std::pair<int, int> parse_levels(const std::string& text) {
  try {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
      const int l = std::stoi(text);
      return {l, l};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw ConfigError("levels must look like A..B, got '" + text + "'");
  }
}

std::string config_to_json(const ExperimentConfig& config) {
  nlohmann::ordered_json j;
  j["surface"] = config.surface;
  j["method"] = to_string(config.method);
  j["velocity"] = to_string(config.velocity);
  j["epsilon"] = config.epsilon;
  j["c"] = config.c;
  j["alpha"] = config.alpha;
  j["levels"] = std::to_string(config.level_min) + ".." + std::to_string(config.level_max);
  if (config.subdomain_x3) j["subdomain_x3"] = *config.subdomain_x3;
  j["dg_norm"] = to_string(config.dg_norm);
  if (!config.csv_path.empty()) j["csv"] = config.csv_path;
  if (!config.vtk_dir.empty()) j["vtk"] = config.vtk_dir;
  if (config.allow_large) j["large"] = true;
  return j.dump(2);
}

ExperimentConfig config_from_json(const std::string& text, ExperimentConfig base) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid config JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config JSON must be an object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "surface") base.surface = value.get<std::string>();
      else if (key == "method") base.method = parse_method(value.get<std::string>());
      else if (key == "velocity") base.velocity = parse_velocity_mode(value.get<std::string>());
      else if (key == "epsilon") base.epsilon = value.get<double>();
      else if (key == "c") base.c = value.get<double>();
      else if (key == "alpha") base.alpha = value.get<double>();
      else if (key == "levels") std::tie(base.level_min, base.level_max) = parse_levels(value.get<std::string>());
      else if (key == "subdomain_x3") base.subdomain_x3 = value.get<double>();
      else if (key == "dg_norm") base.dg_norm = parse_dg_norm(value.get<std::string>());
      else if (key == "csv") base.csv_path = value.get<std::string>();
      else if (key == "vtk") base.vtk_dir = value.get<std::string>();
      else if (key == "large") base.allow_large = value.get<bool>();
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return base;
}

SurfaceMesh base_mesh(const ImplicitSurface& surface, int level) {
  if (const auto* torus = dynamic_cast<const Torus*>(&surface)) {
    SurfaceMesh mesh = build_torus_mesh(24, 6, *torus);
    for (int l = 0; l < level; ++l) mesh = refine(mesh, surface);
    return mesh;
  }
  if (const auto* sphere = dynamic_cast<const Sphere*>(&surface)) return build_icosphere(level, sphere->radius());
  throw std::invalid_argument("no mesh generator for surface " + surface.name());
}

ErrorReport solve_level(const ExperimentConfig& config, const SurfaceMesh& mesh, const ImplicitSurface& surface,
                        int level, DGFunction* solution) {
  const ProblemCoefficients coeffs = config.coefficients();
  const ManufacturedSolution u = layer_solution(config.epsilon > 0.0 ? config.epsilon : 1e-6);
  const ContinuousVelocity w = velocity_for(surface);
  const ScalarField f = manufactured_rhs(u, w, config.epsilon, config.c, surface);
  const Subdomain region = outside_band(config.band());

  ErrorReport row;
  row.level = level;
  row.n_elements = mesh.num_elements();
  row.h = mesh.h;

  try {
    DGFunction u_h;
    std::optional<DiscreteVelocity> velocity;
    if (config.method == Method::ipup) {
      velocity.emplace(make_discrete_velocity(config.velocity, w, mesh, surface));
      const LinearSystem sys = assemble_ipup(mesh, *velocity, coeffs, f, surface);
      const SolveResult sol = solve(sys.matrix, sys.rhs);
      row.solver_iterations = sol.report.iterations;
      u_h = DGFunction(sol.x);
    } else {
      const LinearSystem sys = assemble_cg_fem(mesh, w, coeffs, f, surface);
      const SolveResult sol = solve(sys.matrix, sys.rhs);
      row.solver_iterations = sol.report.iterations;
      u_h = from_vertex_values(mesh, sol.x);
    }
    row.l2_error = l2_error(u_h, u.value, mesh, surface, region);
    row.linf_error = linf_error(u_h, u.value, mesh, surface, region);
    row.dg_error = dg_error(u_h, u, mesh, surface, velocity ? &*velocity : nullptr, coeffs, region, config.dg_norm);
    if (solution) *solution = std::move(u_h);
  } catch (const SolverError& e) {
    std::cerr << "level " << level << ": " << e.what() << " (best residual " << e.best_residual() << ")\n";
    row.failed = true;
    row.l2_error = row.dg_error = row.linf_error = std::numeric_limits<double>::quiet_NaN();
  }
  return row;
}

std::vector<ErrorReport> run_convergence(const ExperimentConfig& config) {
  config.validate();
  const auto surface = make_surface(config.surface);
  std::vector<ErrorReport> rows;
  SurfaceMesh mesh = base_mesh(*surface, config.level_min);
  for (int level = config.level_min; level <= config.level_max; ++level) {
    if (level > config.level_min) mesh = refine(mesh, *surface);
    ErrorReport row = solve_level(config, mesh, *surface, level);
    if (!rows.empty() && !rows.back().failed && !row.failed) {
      const ErrorReport& prev = rows.back();
      const double log_h = std::log(prev.h / row.h);
      row.l2_eoc = std::log(prev.l2_error / row.l2_error) / log_h;
      row.dg_eoc = std::log(prev.dg_error / row.dg_error) / log_h;
    }
    rows.push_back(row);
  }
  if (!config.csv_path.empty()) write_convergence_csv(config.csv_path, rows);
  return rows;
}

std::vector<TorusDemoRow> run_torus_demo(const ExperimentConfig& config) {
  config.validate();
  if (config.surface != "torus") throw ConfigError("torus-demo requires --surface torus");
  const Torus torus(1.0, 0.25);
  const ManufacturedSolution u = layer_solution(config.epsilon > 0.0 ? config.epsilon : 1e-6);
  const Subdomain off_layer = outside_band(config.band());
  const Subdomain on_layer = [band = config.band()](const Vec3& x) { return std::abs(x.z()) <= band; };

  ExperimentConfig ipup = config;
  ipup.method = Method::ipup;
  ExperimentConfig fem = config;
  fem.method = Method::fem;

  if (!config.vtk_dir.empty()) std::filesystem::create_directories(config.vtk_dir);

  std::vector<TorusDemoRow> rows;
  SurfaceMesh mesh = base_mesh(torus, config.level_min);
  for (int level = config.level_min; level <= config.level_max; ++level) {
    if (level > config.level_min) mesh = refine(mesh, torus);
    DGFunction dg, cg;
    const ErrorReport dg_row = solve_level(ipup, mesh, torus, level, &dg);
    const ErrorReport cg_row = solve_level(fem, mesh, torus, level, &cg);
    if (dg_row.failed || cg_row.failed) throw SolverError("torus demo: solver failed at level " + std::to_string(level), 1.0);

    TorusDemoRow row;
    row.level = level;
    row.n_elements = mesh.num_elements();
    row.h = mesh.h;
    row.ipup_linf_off_layer = linf_error(dg, u.value, mesh, torus, off_layer);
    row.fem_linf_off_layer = linf_error(cg, u.value, mesh, torus, off_layer);
    row.ipup_linf_on_layer = linf_error(dg, u.value, mesh, torus, on_layer);
    row.fem_linf_on_layer = linf_error(cg, u.value, mesh, torus, on_layer);
    rows.push_back(row);

    if (!config.vtk_dir.empty()) {
      const std::string stem = config.vtk_dir + "/torus_level" + std::to_string(level);
      std::vector<double> exact_pt, fem_pt(mesh.num_vertices(), 0.0), fem_err_pt;
      for (int v = 0; v < mesh.num_vertices(); ++v) exact_pt.push_back(u.value(torus.project(mesh.vertices[v])));
      for (int k = 0; k < mesh.num_elements(); ++k)
        for (int i = 0; i < 3; ++i) fem_pt[mesh.triangles[k][i]] = cg.local(k)[i];
      for (int v = 0; v < mesh.num_vertices(); ++v) fem_err_pt.push_back(std::abs(fem_pt[v] - exact_pt[v]));

      std::vector<double> exact_c, ipup_c, fem_c, ipup_err_c, fem_err_c;
      const Vec3 centre = Vec3::Constant(1.0 / 3.0);
      for (int k = 0; k < mesh.num_elements(); ++k) {
        const double ue = u.value(torus.project(mesh.centroid(k)));
        exact_c.push_back(ue);
        ipup_c.push_back(dg.local(k).dot(centre));
        fem_c.push_back(cg.local(k).dot(centre));
        ipup_err_c.push_back(std::abs(ipup_c.back() - ue));
        fem_err_c.push_back(std::abs(fem_c.back() - ue));
      }
      write_vtk(stem + ".vtk", mesh,
                {{"exact", exact_pt}, {"fem", fem_pt}, {"fem_error", fem_err_pt}},
                {{"exact", exact_c}, {"ipup", ipup_c}, {"fem", fem_c}, {"ipup_error", ipup_err_c}, {"fem_error", fem_err_c}},
                "torus layer problem level " + std::to_string(level));

      DGFunction exact_dg(mesh.num_elements()), err_dg(mesh.num_elements());
      for (int k = 0; k < mesh.num_elements(); ++k) {
        for (int i = 0; i < 3; ++i) {
          exact_dg.local(k)[i] = exact_pt[mesh.triangles[k][i]];
          err_dg.local(k)[i] = std::abs(dg.local(k)[i] - exact_dg.local(k)[i]);
        }
      }
      write_vtk_discontinuous(stem + "_ipup.vtk", mesh, {{"ipup", &dg}, {"exact", &exact_dg}, {"ipup_error", &err_dg}},
                              "torus IP/UP solution level " + std::to_string(level));
    }
  }
  return rows;
}

std::vector<GeometryRow> run_geomcheck(const ExperimentConfig& config) {
  config.validate();
  const auto surface = make_surface(config.surface);
  const ContinuousVelocity w = velocity_for(*surface);
  std::vector<GeometryRow> rows;
  SurfaceMesh mesh = base_mesh(*surface, config.level_min);
  for (int level = config.level_min; level <= config.level_max; ++level) {
    if (level > config.level_min) mesh = refine(mesh, *surface);
    const DiscreteVelocity v = make_discrete_velocity(config.velocity, w, mesh, *surface);
    rows.push_back({level, mesh.num_elements(), geometry_diagnostics(mesh, *surface, &v, &w)});
  }
  if (!config.csv_path.empty()) write_geometry_csv(config.csv_path, rows);
  return rows;
}

GeometryOrders geometry_orders(const std::vector<GeometryRow>& rows) {
  std::vector<double> hs;
  for (const auto& r : rows) hs.push_back(r.report.h);
  auto order = [&](auto member) {
    std::vector<double> e;
    for (const auto& r : rows) e.push_back(r.report.*member);
    for (double v : e)
      if (!(v > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return fitted_order(e, hs);
  };
  GeometryOrders out{order(&GeometryReport::distance),    order(&GeometryReport::area_factor),
          order(&GeometryReport::normal),      order(&GeometryReport::edge_factor),
          order(&GeometryReport::conormal),    order(&GeometryReport::projector),
          order(&GeometryReport::projector_sym), order(&GeometryReport::normal_jump),
          order(&GeometryReport::divergence),  order(&GeometryReport::velocity_error)};
  bool continuous = true;
  for (const auto& r : rows) continuous = continuous && r.report.s_w == 0;
  if (continuous) out.normal_jump = std::numeric_limits<double>::quiet_NaN();
  return out;
}

void write_geometry_csv(const std::string& path, const std::vector<GeometryRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "level,elements,h,distance,area_factor,normal,edge_factor,conormal,projector,projector_sym,"
         "normal_jump,divergence,velocity_error,s_w\n";
  for (const auto& r : rows) {
    const auto& g = r.report;
    out << r.level << ',' << r.n_elements << ',' << format_sci(g.h) << ',' << format_sci(g.distance) << ','
        << format_sci(g.area_factor) << ',' << format_sci(g.normal) << ',' << format_sci(g.edge_factor) << ','
        << format_sci(g.conormal) << ',' << format_sci(g.projector) << ',' << format_sci(g.projector_sym) << ','
        << format_sci(g.normal_jump) << ',' << format_sci(g.divergence) << ',' << format_sci(g.velocity_error) << ','
        << g.s_w << '\n';
  }
}

}  // namespace sdg
