#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ucem/model.hpp"
#include "ucem/sim.hpp"
#include "ucem/solver.hpp"

namespace ucem {

// Resolved run parameters. Defaults reproduce the reference setup: 50
// nodes on a 20 m disk, 0.2 W base power, 6 dB threshold, 5 ms slots,
// 1000-bit packets, 1000 J batteries, utility constraint 219.
struct ExperimentConfig {
  std::string scenario_file;  // empty -> generate from the fields below
  int n = 50;
  double radius_m = 20.0;
  double d_min_m = 1.0;
  std::uint64_t seed = 1;

  double p_watts = 0.2;
  double beta_db = 6.0;
  double t_seconds = 0.005;
  int l_bits = 1000;
  double e_b_joules = 1000.0;

  std::vector<double> uc_values{219.0};
  bool uc_is_u_prime = false;  // interpret uc values as U' directly

  enum class Model { capture, sinr, both };
  Model model = Model::both;
  std::uint64_t slots = 200000;
  bool uniform_policy = false;
  double death_fraction = 0.7;
  std::string out_dir = "out";
};

Scenario resolve_scenario(const ExperimentConfig& config);
double target_u_prime(const ExperimentConfig& config, const Scenario& scenario,
                      double uc);

struct SolveArtifacts {
  Solution solution;          // for the uniform policy, q is the expanded vector
  double uniform_q = 0.0;     // scalar, only when uniform_policy
  std::string solution_path;
  std::string nodes_csv_path;
};

struct EnergySweepRow {
  double uc = 0.0;
  std::optional<double> optimal_power_watts;
  std::optional<double> uniform_power_watts;
  std::optional<double> reduction_pct;
};

struct LifetimeSweepRow {
  double uc = 0.0;
  std::optional<double> lifetime_optimal_s;
  std::optional<double> lifetime_uniform_s;
};

struct RatesRow {
  int node_id = 0;
  double d_m = 0.0;
  double x_analytic_capture = 0.0;
  double x_mc_capture = 0.0;
  double x_mc_sinr = 0.0;
  double x_uniform = 0.0;
};

std::string run_generate(const ExperimentConfig& config);
SolveArtifacts run_solve(const ExperimentConfig& config);
std::vector<EnergySweepRow> run_sweep_energy(const ExperimentConfig& config);
std::vector<LifetimeSweepRow> run_sweep_lifetime(const ExperimentConfig& config);
std::vector<RatesRow> run_rates(const ExperimentConfig& config);
std::vector<SimReport> run_simulate(const ExperimentConfig& config);

}  // namespace ucem
