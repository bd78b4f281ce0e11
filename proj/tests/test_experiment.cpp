#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ucem/experiment.hpp"
#include "ucem/json_io.hpp"

using namespace ucem;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() /
             ("ucem_test_" + tag + "_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

ExperimentConfig small_config(const TempDir& dir) {
  ExperimentConfig config;
  config.n = 10;
  config.seed = 4;
  config.uc_values = {40.0};
  config.slots = 20000;
  config.out_dir = dir.path.string();
  return config;
}

}  // namespace

TEST_CASE("generate writes a loadable scenario") {
  TempDir dir("generate");
  const auto config = small_config(dir);
  const std::string path = run_generate(config);
  const Scenario s = load_scenario(path);
  CHECK(s.size() == 10);
  CHECK(s.seed == 4);
  CHECK(fs::exists(dir.path / "generate_config.json"));
}

TEST_CASE("solve writes solution json and per-node csv") {
  TempDir dir("solve");
  const auto config = small_config(dir);
  const auto artifacts = run_solve(config);
  CHECK(artifacts.solution.status == SolveStatus::optimal);

  const auto solution = load_json_file(artifacts.solution_path);
  CHECK(solution.at("policy") == "optimal");
  CHECK(solution.at("q").size() == 10);
  CHECK(solution.at("status") == "optimal");

  const std::string csv = slurp(artifacts.nodes_csv_path);
  CHECK(first_line(csv) == "node_id,d_m,group,P_ij_watts,q,S_analytic,x_bits_per_s");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 11);  // header + 10 rows

  // same config, same bytes
  const auto again = run_solve(config);
  CHECK(slurp(again.nodes_csv_path) == csv);
}

TEST_CASE("solve honors the uniform flag") {
  TempDir dir("uniform");
  auto config = small_config(dir);
  config.uniform_policy = true;
  const auto artifacts = run_solve(config);
  CHECK(artifacts.uniform_q > 0.0);
  for (double q : artifacts.solution.q) CHECK(q == artifacts.uniform_q);
  const auto solution = load_json_file(artifacts.solution_path);
  CHECK(solution.at("policy") == "uniform");
}

TEST_CASE("infeasible constraints exit with the ceiling in the message") {
  TempDir dir("infeasible");
  auto config = small_config(dir);
  config.uc_values = {2000.0};
  try {
    run_solve(config);
    FAIL("expected infeasible_error");
  } catch (const infeasible_error& e) {
    CHECK(std::string(e.what()).find("infeasible, U_max = ") !=
          std::string::npos);
  }
}

TEST_CASE("u-prime flag bypasses the rate-term conversion") {
  TempDir dir("uprime");
  auto config = small_config(dir);
  config.uc_is_u_prime = true;
  config.uc_values = {-85.0};
  const auto artifacts = run_solve(config);
  CHECK(artifacts.solution.u_prime_achieved ==
        doctest::Approx(-85.0).epsilon(1e-8));
}

TEST_CASE("energy sweep: monotone, dominated, and tolerant of infeasible points") {
  TempDir dir("sweep_energy");
  auto config = small_config(dir);
  config.uc_values = {30.0, 35.0, 40.0, 45.0, 2000.0};
  const auto rows = run_sweep_energy(config);
  REQUIRE(rows.size() == 5);

  double prev = 0.0;
  for (int i = 0; i < 4; ++i) {
    REQUIRE(rows[i].optimal_power_watts.has_value());
    REQUIRE(rows[i].uniform_power_watts.has_value());
    REQUIRE(rows[i].reduction_pct.has_value());
    CHECK(*rows[i].optimal_power_watts >= prev);
    CHECK(*rows[i].optimal_power_watts <=
          *rows[i].uniform_power_watts * (1.0 + 1e-9));
    CHECK(*rows[i].reduction_pct >= -1e-9);
    prev = *rows[i].optimal_power_watts;
  }
  CHECK(!rows[4].optimal_power_watts.has_value());
  CHECK(!rows[4].uniform_power_watts.has_value());

  const std::string csv = slurp((dir.path / "sweep_energy.csv").string());
  CHECK(first_line(csv) ==
        "u_c,optimal_power_watts,uniform_power_watts,reduction_pct");
  CHECK(csv.find("2000,,,") != std::string::npos);  // empty cells, run continued
  CHECK(fs::exists(dir.path / "sweep_energy_config.json"));

  run_sweep_energy(config);
  CHECK(slurp((dir.path / "sweep_energy.csv").string()) == csv);
}

TEST_CASE("lifetime sweep shrinks as the constraint tightens") {
  TempDir dir("sweep_lifetime");
  auto config = small_config(dir);
  config.e_b_joules = 10.0;  // short horizons keep the sweep quick
  config.uc_values = {30.0, 36.0, 42.0};
  const auto rows = run_sweep_lifetime(config);
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) {
    REQUIRE(row.lifetime_optimal_s.has_value());
    REQUIRE(row.lifetime_uniform_s.has_value());
    CHECK(*row.lifetime_optimal_s > 0.0);
  }
  CHECK(*rows[0].lifetime_optimal_s >= *rows[1].lifetime_optimal_s);
  CHECK(*rows[1].lifetime_optimal_s >= *rows[2].lifetime_optimal_s);
  const std::string csv = slurp((dir.path / "sweep_lifetime.csv").string());
  CHECK(first_line(csv) == "u_c,lifetime_optimal_s,lifetime_uniform_s");
}

TEST_CASE("rates come out sorted by distance with sane magnitudes") {
  TempDir dir("rates");
  auto config = small_config(dir);
  config.slots = 200000;
  const auto rows = run_rates(config);
  REQUIRE(rows.size() == 10);
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i - 1].d_m <= rows[i].d_m);
  int close = 0;
  for (const auto& row : rows) {
    CHECK(row.x_analytic_capture > 0.0);
    CHECK(row.x_uniform > 0.0);
    if (std::abs(row.x_mc_capture - row.x_analytic_capture) <=
        0.25 * row.x_analytic_capture + 1e-9)
      ++close;
  }
  CHECK(close >= 7);  // loose agreement; the acceptance suite is exact
  const std::string csv = slurp((dir.path / "rates.csv").string());
  CHECK(first_line(csv) ==
        "node_id,d_m,x_analytic_capture,x_mc_capture,x_mc_sinr,x_uniform");
}

TEST_CASE("simulate writes one report pair per model") {
  TempDir dir("simulate");
  auto config = small_config(dir);
  config.slots = 5000;
  const auto reports = run_simulate(config);
  CHECK(reports.size() == 2);
  for (const char* name : {"sim_capture.csv", "sim_capture.json",
                           "sim_sinr.csv", "sim_sinr.json"})
    CHECK(fs::exists(dir.path / name));

  config.model = ExperimentConfig::Model::capture;
  CHECK(run_simulate(config).size() == 1);
}

TEST_CASE("sweeps demand at least two constraint points") {
  TempDir dir("sweep_guard");
  auto config = small_config(dir);
  CHECK_THROWS_AS(run_sweep_energy(config), std::invalid_argument);
  CHECK_THROWS_AS(run_sweep_lifetime(config), std::invalid_argument);
}
