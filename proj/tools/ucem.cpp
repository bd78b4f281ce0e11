#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ucem/experiment.hpp"
#include "ucem/json_io.hpp"

namespace {

// lo:hi:steps -> linearly spaced values, endpoints included
std::vector<double> parse_range(const std::string& spec) {
  double lo = 0.0, hi = 0.0;
  int steps = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &lo, &hi, &steps) != 3 ||
      steps < 2 || !(hi >= lo))
    throw CLI::ValidationError("--uc-range expects lo:hi:steps with steps >= 2");
  std::vector<double> values(steps);
  for (int i = 0; i < steps; ++i)
    values[i] = lo + (hi - lo) * i / (steps - 1);
  return values;
}

void add_common_flags(CLI::App* cmd, ucem::ExperimentConfig& config,
                      std::string& uc_range) {
  cmd->add_option("--scenario", config.scenario_file,
                  "Scenario JSON file (overrides generator flags)");
  cmd->add_option("--n", config.n, "Node count for generated scenarios");
  cmd->add_option("--radius", config.radius_m, "Disk radius in meters");
  cmd->add_option("--d-min", config.d_min_m, "Minimum node distance in meters");
  cmd->add_option("--seed", config.seed, "Seed for placement and simulation");
  cmd->add_option("--power", config.p_watts, "Base transmit power in watts");
  cmd->add_option("--beta-db", config.beta_db, "SINR threshold in dB");
  cmd->add_option("--slot", config.t_seconds, "Slot duration in seconds");
  cmd->add_option("--bits", config.l_bits, "Packet length in bits");
  cmd->add_option("--battery", config.e_b_joules, "Battery energy in joules");
  cmd->add_option("--uc", config.uc_values,
                  "Utility constraint(s); repeat for several values");
  cmd->add_option("--uc-range", uc_range, "Utility constraint range lo:hi:steps");
  cmd->add_flag("--u-prime", config.uc_is_u_prime,
                "Treat --uc values as U' (skip the rate-term conversion)");
  cmd->add_option("--slots", config.slots, "Monte Carlo slot count");
  cmd->add_flag("--uniform", config.uniform_policy,
                "Use the single-probability baseline policy");
  cmd->add_option("--death-fraction", config.death_fraction,
                  "Fraction of dead nodes that ends the network lifetime");
  cmd->add_option("--out", config.out_dir, "Output directory");
  std::map<std::string, ucem::ExperimentConfig::Model> models{
      {"capture", ucem::ExperimentConfig::Model::capture},
      {"sinr", ucem::ExperimentConfig::Model::sinr},
      {"both", ucem::ExperimentConfig::Model::both}};
  cmd->add_option("--model", config.model, "Reception model to simulate")
      ->transform(CLI::CheckedTransformer(models, CLI::ignore_case));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-optimal transmission probabilities for slotted Aloha "
               "with capture-oriented power control"};
  app.require_subcommand(1);

  ucem::ExperimentConfig config;
  std::string uc_range;

  auto* generate = app.add_subcommand("generate", "Write a scenario file");
  auto* solve = app.add_subcommand("solve", "Solve one utility constraint");
  auto* sweep_energy =
      app.add_subcommand("sweep-energy", "Energy vs utility constraint");
  auto* sweep_lifetime =
      app.add_subcommand("sweep-lifetime", "Lifetime vs utility constraint");
  auto* rates =
      app.add_subcommand("rates", "Per-node effective rates, all evaluations");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo slot simulation");
  for (auto* cmd : {generate, solve, sweep_energy, sweep_lifetime, rates, simulate})
    add_common_flags(cmd, config, uc_range);

  CLI11_PARSE(app, argc, argv);

  try {
    if (!uc_range.empty()) config.uc_values = parse_range(uc_range);

    if (generate->parsed()) {
      std::cout << "wrote " << ucem::run_generate(config) << "\n";
    } else if (solve->parsed()) {
      const auto artifacts = ucem::run_solve(config);
      std::cout << "status " << ucem::to_string(artifacts.solution.status)
                << ", avg power " << artifacts.solution.avg_power_watts
                << " W\nwrote " << artifacts.solution_path << "\nwrote "
                << artifacts.nodes_csv_path << "\n";
    } else if (sweep_energy->parsed()) {
      const auto rows = ucem::run_sweep_energy(config);
      std::cout << "swept " << rows.size() << " utility constraints -> "
                << config.out_dir << "/sweep_energy.csv\n";
    } else if (sweep_lifetime->parsed()) {
      const auto rows = ucem::run_sweep_lifetime(config);
      std::cout << "swept " << rows.size() << " utility constraints -> "
                << config.out_dir << "/sweep_lifetime.csv\n";
    } else if (rates->parsed()) {
      const auto rows = ucem::run_rates(config);
      std::cout << "wrote rates for " << rows.size() << " nodes -> "
                << config.out_dir << "/rates.csv\n";
    } else if (simulate->parsed()) {
      const auto reports = ucem::run_simulate(config);
      std::cout << "simulated " << reports.size() << " model(s), "
                << config.slots << " slots -> " << config.out_dir << "\n";
    }
  } catch (const ucem::infeasible_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const ucem::numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
