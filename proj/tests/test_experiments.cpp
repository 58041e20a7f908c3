#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sdg/experiments.hpp"
#include "sdg/output.hpp"

using namespace sdg;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// Minimal legacy-VTK reader: checks section headers and counts.
void check_vtk_structure(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# vtk DataFile Version 3.0");
  std::getline(in, line);
  std::getline(in, line);
  CHECK(line == "ASCII");
  std::getline(in, line);
  CHECK(line == "DATASET UNSTRUCTURED_GRID");
  std::string word, type;
  long n_points = 0, n_cells = 0, size = 0;
  in >> word >> n_points >> type;
  CHECK(word == "POINTS");
  for (long i = 0; i < 3 * n_points; ++i) {
    double v;
    REQUIRE(static_cast<bool>(in >> v));
  }
  in >> word >> n_cells >> size;
  CHECK(word == "CELLS");
  CHECK(size == 4 * n_cells);
  for (long i = 0; i < n_cells; ++i) {
    long k, a, b, c;
    REQUIRE(static_cast<bool>(in >> k >> a >> b >> c));
    CHECK(k == 3);
    for (long id : {a, b, c}) CHECK((id >= 0 && id < n_points));
  }
  long n_types = 0;
  in >> word >> n_types;
  CHECK(word == "CELL_TYPES");
  CHECK(n_types == n_cells);
  for (long i = 0; i < n_cells; ++i) {
    int t;
    REQUIRE(static_cast<bool>(in >> t));
    CHECK(t == 5);
  }
  while (in >> word) {
    long n = 0;
    REQUIRE((word == "CELL_DATA" || word == "POINT_DATA"));
    in >> n;
    CHECK(n == (word == "CELL_DATA" ? n_cells : n_points));
    std::streampos mark = in.tellg();
    while (in >> word && word == "SCALARS") {
      std::string name, dtype, lookup, table;
      in >> name >> dtype >> word;
      in >> lookup >> table;
      CHECK(lookup == "LOOKUP_TABLE");
      for (long i = 0; i < n; ++i) {
        double v;
        REQUIRE(static_cast<bool>(in >> v));
      }
      mark = in.tellg();
    }
    in.clear();
    in.seekg(mark);
  }
}

}  // namespace

TEST_CASE("level ranges") {
  CHECK(parse_levels("1..5") == std::pair{1, 5});
  CHECK(parse_levels("3") == std::pair{3, 3});
  CHECK_THROWS_AS(parse_levels("a..b"), ConfigError);
}

TEST_CASE("config validation") {
  ExperimentConfig c;
  CHECK_NOTHROW(c.validate());
  c.epsilon = -1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.level_min = 3;
  c.level_max = 2;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.level_max = 7;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.allow_large = true;
  CHECK_NOTHROW(c.validate());
  c = {};
  c.surface = "cube";
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK(ExperimentConfig{}.band() == 0.3);
  c = {};
  c.surface = "torus";
  CHECK(c.band() == 0.1);
}

TEST_CASE("config JSON round trip") {
  ExperimentConfig c;
  c.surface = "torus";
  c.method = Method::fem;
  c.velocity = VelocityMode::lagrange;
  c.epsilon = 1e-4;
  c.c = 2.0;
  c.alpha = 20.0;
  c.level_min = 0;
  c.level_max = 2;
  c.subdomain_x3 = 0.15;
  c.dg_norm = DGNormVariant::eps_weighted;
  c.csv_path = "out.csv";
  c.vtk_dir = "vtk";
  const ExperimentConfig back = config_from_json(config_to_json(c));
  CHECK(config_to_json(back) == config_to_json(c));
  CHECK(back.subdomain_x3.value() == 0.15);
  CHECK(back.method == Method::fem);

  const ExperimentConfig partial = config_from_json(R"({"epsilon": 0.5})", c);
  CHECK(partial.epsilon == 0.5);
  CHECK(partial.surface == "torus");
  CHECK_THROWS_AS(config_from_json("{\"colour\": 1}"), ConfigError);
  CHECK_THROWS_AS(config_from_json("[1, 2]"), ConfigError);
  CHECK_THROWS_AS(config_from_json("{\"method\": \"magic\"}"), ConfigError);
  CHECK_THROWS_AS(config_from_json("not json"), ConfigError);
}

TEST_CASE("convergence CSV is reproducible") {
  ExperimentConfig c;
  c.level_min = 1;
  c.level_max = 3;
  c.csv_path = "conv_a.csv";
  const auto rows = run_convergence(c);
  c.csv_path = "conv_b.csv";
  run_convergence(c);
  const std::string a = slurp("conv_a.csv"), b = slurp("conv_b.csv");
  CHECK(a == b);
  CHECK(a.rfind("level,elements,h,l2_error,l2_eoc,dg_error,dg_eoc,linf_error,solver_iters\n", 0) == 0);
  CHECK(rows.size() == 3);
  CHECK_FALSE(rows[0].l2_eoc.has_value());
  CHECK(rows[2].l2_eoc.has_value());
  std::istringstream lines(a);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  CHECK(line.find(",,") != std::string::npos);
  std::filesystem::remove("conv_a.csv");
  std::filesystem::remove("conv_b.csv");
}

TEST_CASE("failed rows are written with -1 iterations") {
  ErrorReport ok;
  ok.level = 1;
  ok.n_elements = 80;
  ok.h = 0.5;
  ok.l2_error = ok.dg_error = ok.linf_error = 0.1;
  ErrorReport bad = ok;
  bad.level = 2;
  bad.failed = true;
  bad.l2_error = bad.dg_error = bad.linf_error = std::nan("");
  std::ostringstream out;
  write_convergence_csv(out, {ok, bad});
  CHECK(out.str() ==
        "level,elements,h,l2_error,l2_eoc,dg_error,dg_eoc,linf_error,solver_iters\n"
        "1,80,5.00000e-01,1.00000e-01,,1.00000e-01,,1.00000e-01,0\n"
        "2,80,5.00000e-01,nan,,nan,,nan,-1\n");
  CHECK(format_sci(1234.5) == "1.23450e+03");
}

TEST_CASE("torus demo writes readable VTK files") {
  ExperimentConfig c;
  c.surface = "torus";
  c.level_min = 0;
  c.level_max = 1;
  c.vtk_dir = "torus_vtk_test";
  const auto rows = run_torus_demo(c);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].ipup_linf_off_layer < rows[0].ipup_linf_off_layer);
  CHECK(rows[1].ipup_linf_off_layer < rows[1].fem_linf_off_layer);
  check_vtk_structure("torus_vtk_test/torus_level0.vtk");
  check_vtk_structure("torus_vtk_test/torus_level1_ipup.vtk");
  std::filesystem::remove_all("torus_vtk_test");

  ExperimentConfig sphere;
  CHECK_THROWS_AS(run_torus_demo(sphere), ConfigError);
}

TEST_CASE("geometry check rows") {
  ExperimentConfig c;
  c.level_min = 1;
  c.level_max = 3;
  const auto rows = run_geomcheck(c);
  REQUIRE(rows.size() == 3);
  const GeometryOrders o = geometry_orders(rows);
  CHECK(o.distance > 1.7);
  CHECK(o.normal < 1.3);
  CHECK(std::isnan(o.normal_jump));
  for (const auto& r : rows) CHECK(r.report.s_w == 0);
}

TEST_CASE("level meshes") {
  Torus torus;
  Sphere sphere;
  CHECK(base_mesh(torus, 0).num_elements() == 288);
  CHECK(base_mesh(torus, 1).num_elements() == 1152);
  CHECK(base_mesh(sphere, 2).num_elements() == 320);
}
