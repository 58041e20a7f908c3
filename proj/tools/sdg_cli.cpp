#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sdg/experiments.hpp"
#include "sdg/output.hpp"

namespace {

struct Flags {
  std::string config_path;
  std::optional<std::string> surface, method, velocity, levels, dg_norm, csv, vtk;
  std::optional<double> epsilon, alpha, c, subdomain_x3;
  bool large = false;
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file; flags override its values");
  cmd->add_option("--surface", f.surface, "sphere | torus");
  cmd->add_option("--method", f.method, "ipup | fem");
  cmd->add_option("--velocity", f.velocity, "lifted | lagrange | rt0");
  cmd->add_option("--epsilon", f.epsilon, "diffusion coefficient (>= 0)");
  cmd->add_option("--alpha", f.alpha, "interior penalty parameter");
  cmd->add_option("--c", f.c, "reaction coefficient (> 0)");
  cmd->add_option("--levels", f.levels, "refinement levels A..B");
  cmd->add_option("--subdomain-x3", f.subdomain_x3, "error subdomain |x3| > value");
  cmd->add_option("--dg-norm", f.dg_norm, "unweighted | weighted");
  cmd->add_option("--csv", f.csv, "write results to this CSV file");
  cmd->add_option("--vtk", f.vtk, "write VTK files into this directory");
  cmd->add_flag("--large", f.large, "allow levels beyond ~100k elements");
}

sdg::ExperimentConfig resolve(const Flags& f, sdg::ExperimentConfig config) {
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw sdg::ConfigError("cannot read config file " + f.config_path);
    std::stringstream text;
    text << in.rdbuf();
    config = sdg::config_from_json(text.str(), config);
  }
  try {
    if (f.surface) config.surface = *f.surface;
    if (f.method) config.method = sdg::parse_method(*f.method);
    if (f.velocity) config.velocity = sdg::parse_velocity_mode(*f.velocity);
    if (f.epsilon) config.epsilon = *f.epsilon;
    if (f.alpha) config.alpha = *f.alpha;
    if (f.c) config.c = *f.c;
    if (f.levels) std::tie(config.level_min, config.level_max) = sdg::parse_levels(*f.levels);
    if (f.subdomain_x3) config.subdomain_x3 = *f.subdomain_x3;
    if (f.dg_norm) config.dg_norm = sdg::parse_dg_norm(*f.dg_norm);
    if (f.csv) config.csv_path = *f.csv;
    if (f.vtk) config.vtk_dir = *f.vtk;
    if (f.large) config.allow_large = true;
  } catch (const std::invalid_argument& e) {
    throw sdg::ConfigError(e.what());
  }
  config.validate();
  return config;
}

int converge(const sdg::ExperimentConfig& config) {
  const auto rows = sdg::run_convergence(config);
  std::cout << config.surface << " " << sdg::to_string(config.method);
  if (config.method == sdg::Method::ipup) std::cout << " velocity=" << sdg::to_string(config.velocity);
  std::cout << " epsilon=" << config.epsilon << " D={|x3|>" << config.band() << "}\n";
  sdg::print_convergence_table(std::cout, rows);
  for (const auto& r : rows)
    if (r.failed) return 3;
  return 0;
}

int torus_demo(const sdg::ExperimentConfig& config) {
  const auto rows = sdg::run_torus_demo(config);
  const double band = config.band();
  std::printf("%5s %9s %11s   %-25s   %-25s\n", "level", "elements", "h", "Linf |x3|>band  ipup / fem",
              "Linf |x3|<=band ipup / fem");
  for (const auto& r : rows) {
    std::printf("%5d %9d %11s   %11s / %11s   %11s / %11s\n", r.level, r.n_elements, sdg::format_sci(r.h).c_str(),
                sdg::format_sci(r.ipup_linf_off_layer).c_str(), sdg::format_sci(r.fem_linf_off_layer).c_str(),
                sdg::format_sci(r.ipup_linf_on_layer).c_str(), sdg::format_sci(r.fem_linf_on_layer).c_str());
  }
  std::printf("band = %g\n", band);
  return 0;
}

int geomcheck(const sdg::ExperimentConfig& config) {
  const auto rows = sdg::run_geomcheck(config);
  std::printf("%5s %9s %11s %11s %11s %11s %11s %11s %11s %11s %11s %11s\n", "level", "elements", "h", "|d|",
              "|1-dh|", "|nu-nuh|", "|1-de|", "|n-Pnh|", "|P-PPh|", "|P-PPhP|", "jump", "|div|");
  for (const auto& r : rows) {
    const auto& g = r.report;
    std::printf("%5d %9d", r.level, r.n_elements);
    for (double v : {g.h, g.distance, g.area_factor, g.normal, g.edge_factor, g.conormal, g.projector,
                     g.projector_sym, g.normal_jump, g.divergence})
      std::printf(" %11s", sdg::format_sci(v).c_str());
    std::printf("\n");
  }
  if (rows.size() >= 2) {
    const auto o = sdg::geometry_orders(rows);
    std::printf("orders %27s", "");
    for (double v : {o.distance, o.area_factor, o.normal, o.edge_factor, o.conormal, o.projector, o.projector_sym,
                     o.normal_jump, o.divergence})
      std::printf(" %11.3f", v);
    std::printf("\nvelocity error order: %.3f\n", o.velocity_error);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Surface DG for advection-dominated problems on sphere and torus"};
  app.require_subcommand(1);

  Flags converge_flags, torus_flags, geom_flags;
  auto* converge_cmd = app.add_subcommand("converge", "convergence study over refinement levels");
  auto* torus_cmd = app.add_subcommand("torus-demo", "torus layer problem, IP/UP vs FEM, VTK output");
  auto* geom_cmd = app.add_subcommand("geomcheck", "geometric approximation diagnostics");
  add_flags(converge_cmd, converge_flags);
  add_flags(torus_cmd, torus_flags);
  add_flags(geom_cmd, geom_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*converge_cmd) return converge(resolve(converge_flags, {}));
    if (*torus_cmd) {
      sdg::ExperimentConfig defaults;
      defaults.surface = "torus";
      defaults.level_min = 0;
      defaults.level_max = 3;
      return torus_demo(resolve(torus_flags, defaults));
    }
    if (*geom_cmd) {
      sdg::ExperimentConfig defaults;
      defaults.level_max = 4;
      return geomcheck(resolve(geom_flags, defaults));
    }
  } catch (const sdg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const sdg::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
