#include "ucem/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "ucem/analytics.hpp"
#include "ucem/json_io.hpp"

namespace ucem {

namespace {

// Seed salts keep the placement, throughput and lifetime streams apart.
constexpr std::uint64_t kMcSeedSalt = 0x6d635f73616c7431ULL;
constexpr std::uint64_t kLifetimeSeedSalt = 0x6c6966655f736474ULL;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::filesystem::path prepare_out_dir(const ExperimentConfig& config) {
  std::filesystem::path dir(config.out_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

const char* model_name(ExperimentConfig::Model m) {
  switch (m) {
    case ExperimentConfig::Model::capture: return "capture";
    case ExperimentConfig::Model::sinr: return "sinr";
    case ExperimentConfig::Model::both: return "both";
  }
  return "unknown";
}

nlohmann::json config_to_json(const ExperimentConfig& config,
                              const std::string& command) {
  return nlohmann::json{{"command", command},
                        {"scenario_file", config.scenario_file},
                        {"n", config.n},
                        {"radius_m", config.radius_m},
                        {"d_min_m", config.d_min_m},
                        {"seed", config.seed},
                        {"P_watts", config.p_watts},
                        {"beta_db", config.beta_db},
                        {"T_seconds", config.t_seconds},
                        {"L_bits", config.l_bits},
                        {"E_B_joules", config.e_b_joules},
                        {"uc_values", config.uc_values},
                        {"uc_is_u_prime", config.uc_is_u_prime},
                        {"model", model_name(config.model)},
                        {"slots", config.slots},
                        {"uniform_policy", config.uniform_policy},
                        {"death_fraction", config.death_fraction},
                        {"out_dir", config.out_dir}};
}

void write_sidecar(const ExperimentConfig& config, const std::string& command,
                   const std::filesystem::path& dir) {
  save_json_file(config_to_json(config, command),
                 (dir / (command + "_config.json")).string());
}

double uc_in_input_space(const ExperimentConfig& config, int n,
                         double u_prime) {
  return config.uc_is_u_prime
             ? u_prime
             : u_prime + n * std::log(config.l_bits / config.t_seconds);
}

[[noreturn]] void throw_infeasible(const ExperimentConfig& config, int n,
                                   double u_prime_max, const char* policy) {
  std::ostringstream msg;
  msg << "infeasible, U_max = " << g17(uc_in_input_space(config, n, u_prime_max))
      << " (" << policy << " policy)";
  throw infeasible_error(msg.str(), u_prime_max);
}

// Optimal-policy solve that converts infeasibility into an exception.
Solution solve_or_throw(const ExperimentConfig& config, const Scenario& scenario,
                        const GroupingPlan& plan, double u_prime_c) {
  Solution sol = solve_ucem(plan, plan.tx_power_watts, u_prime_c);
  if (sol.status == SolveStatus::infeasible)
    throw_infeasible(config, scenario.size(), sol.u_prime_max, "optimal");
  return sol;
}

}  // namespace

Scenario resolve_scenario(const ExperimentConfig& config) {
  if (!config.scenario_file.empty()) return load_scenario(config.scenario_file);
  const RadioParams radio =
      make_radio(config.p_watts, config.beta_db, config.t_seconds,
                 config.l_bits, config.e_b_joules);
  return generate_disk_scenario(config.n, config.radius_m, config.d_min_m,
                                radio, config.seed);
}

double target_u_prime(const ExperimentConfig& config, const Scenario& scenario,
                      double uc) {
  if (config.uc_is_u_prime) return uc;
  return convert_utility(uc, scenario.size(), scenario.radio.l_bits,
                         scenario.radio.t_seconds);
}

std::string run_generate(const ExperimentConfig& config) {
  const auto dir = prepare_out_dir(config);
  const Scenario scenario = resolve_scenario(config);
  const std::string path = (dir / "scenario.json").string();
  save_scenario(scenario, path);
  write_sidecar(config, "generate", dir);
  return path;
}

SolveArtifacts run_solve(const ExperimentConfig& config) {
  if (config.uc_values.empty())
    throw std::invalid_argument("solve: need a utility constraint");
  const auto dir = prepare_out_dir(config);
  const Scenario scenario = resolve_scenario(config);
  const GroupingPlan plan = build_plan(scenario);
  const double u_prime_c =
      target_u_prime(config, scenario, config.uc_values.front());

  SolveArtifacts artifacts;
  nlohmann::json solution_json;
  if (config.uniform_policy) {
    double q_u = 0.0;
    try {
      q_u = solve_uniform(plan, u_prime_c);
    } catch (const uniform_infeasible_error& e) {
      throw_infeasible(config, scenario.size(), e.u_prime_max(), "uniform");
    }
    artifacts.uniform_q = q_u;
    Solution& sol = artifacts.solution;
    sol.q.assign(scenario.size(), q_u);
    sol.status = SolveStatus::optimal;
    sol.u_prime_achieved =
        utility_prime(sol.q, plan, scenario.radio).u_prime;
    sol.avg_power_watts = average_power(sol.q, plan.tx_power_watts);
    sol.u_prime_max = utility_ceiling(plan).u_prime_max;
    solution_json = solution_to_json(sol);
    solution_json["policy"] = "uniform";
    solution_json["q_uniform"] = q_u;
    solution_json.erase("lambda");
    solution_json.erase("kkt_residual");
  } else {
    artifacts.solution = solve_or_throw(config, scenario, plan, u_prime_c);
    solution_json = solution_to_json(artifacts.solution);
    solution_json["policy"] = "optimal";
  }
  solution_json["u_prime_c"] = u_prime_c;
  solution_json["u_c"] = config.uc_values.front();

  artifacts.solution_path = (dir / "solution.json").string();
  save_json_file(solution_json, artifacts.solution_path);

  const auto s = per_node_throughput(artifacts.solution.q, plan);
  const auto x =
      effective_rates(s, scenario.radio.l_bits, scenario.radio.t_seconds);
  std::ostringstream csv;
  csv << "node_id,d_m,group,P_ij_watts,q,S_analytic,x_bits_per_s\n";
  for (int j = 0; j < scenario.size(); ++j)
    csv << scenario.nodes[j].id << ',' << g17(scenario.nodes[j].d_m) << ','
        << plan.group_of[j] + 1 << ',' << g17(plan.tx_power_watts[j]) << ','
        << g17(artifacts.solution.q[j]) << ',' << g17(s[j]) << ',' << g17(x[j])
        << '\n';
  artifacts.nodes_csv_path = (dir / "solution_nodes.csv").string();
  write_text_file(artifacts.nodes_csv_path, csv.str());

  write_sidecar(config, "solve", dir);
  return artifacts;
}

std::vector<EnergySweepRow> run_sweep_energy(const ExperimentConfig& config) {
  if (config.uc_values.size() < 2)
    throw std::invalid_argument("sweep: need at least two utility constraints");
  const auto dir = prepare_out_dir(config);
  const Scenario scenario = resolve_scenario(config);
  const GroupingPlan plan = build_plan(scenario);

  std::vector<double> ucs(config.uc_values);
  std::sort(ucs.begin(), ucs.end());

  std::vector<EnergySweepRow> rows;
  for (double uc : ucs) {
    EnergySweepRow row;
    row.uc = uc;
    const double u_prime_c = target_u_prime(config, scenario, uc);
    const Solution sol = solve_ucem(plan, plan.tx_power_watts, u_prime_c);
    if (sol.status != SolveStatus::infeasible)
      row.optimal_power_watts = sol.avg_power_watts;
    try {
      const double q_u = solve_uniform(plan, u_prime_c);
      std::vector<double> q(scenario.size(), q_u);
      row.uniform_power_watts = average_power(q, plan.tx_power_watts);
    } catch (const uniform_infeasible_error&) {
      // recorded as an empty cell; the sweep continues
    }
    if (row.optimal_power_watts && row.uniform_power_watts &&
        *row.uniform_power_watts > 0.0)
      row.reduction_pct = 100.0 *
                          (*row.uniform_power_watts - *row.optimal_power_watts) /
                          *row.uniform_power_watts;
    rows.push_back(row);
  }

  std::ostringstream csv;
  csv << "u_c,optimal_power_watts,uniform_power_watts,reduction_pct\n";
  for (const auto& row : rows) {
    csv << g17(row.uc) << ',';
    if (row.optimal_power_watts) csv << g17(*row.optimal_power_watts);
    csv << ',';
    if (row.uniform_power_watts) csv << g17(*row.uniform_power_watts);
    csv << ',';
    if (row.reduction_pct) csv << g17(*row.reduction_pct);
    csv << '\n';
  }
  write_text_file((dir / "sweep_energy.csv").string(), csv.str());
  write_sidecar(config, "sweep_energy", dir);
  return rows;
}

std::vector<LifetimeSweepRow> run_sweep_lifetime(const ExperimentConfig& config) {
  if (config.uc_values.size() < 2)
    throw std::invalid_argument("sweep: need at least two utility constraints");
  const auto dir = prepare_out_dir(config);
  const Scenario scenario = resolve_scenario(config);
  const GroupingPlan plan = build_plan(scenario);
  // One shared lifetime seed: sweep points differ only through q, which
  // keeps the U_c comparison paired draw-for-draw.
  const std::uint64_t life_seed = config.seed ^ kLifetimeSeedSalt;

  std::vector<double> ucs(config.uc_values);
  std::sort(ucs.begin(), ucs.end());

  std::vector<LifetimeSweepRow> rows;
  for (double uc : ucs) {
    LifetimeSweepRow row;
    row.uc = uc;
    const double u_prime_c = target_u_prime(config, scenario, uc);
    const Solution sol = solve_ucem(plan, plan.tx_power_watts, u_prime_c);
    if (sol.status != SolveStatus::infeasible) {
      const LifetimeReport r = simulate_lifetime(
          scenario, plan, sol.q, config.death_fraction, life_seed);
      if (r.lifetime_reached) row.lifetime_optimal_s = r.network_lifetime_seconds;
    }
    try {
      const double q_u = solve_uniform(plan, u_prime_c);
      std::vector<double> q(scenario.size(), q_u);
      const LifetimeReport r = simulate_lifetime(scenario, plan, q,
                                                 config.death_fraction, life_seed);
      if (r.lifetime_reached) row.lifetime_uniform_s = r.network_lifetime_seconds;
    } catch (const uniform_infeasible_error&) {
    }
    rows.push_back(row);
  }

  std::ostringstream csv;
  csv << "u_c,lifetime_optimal_s,lifetime_uniform_s\n";
  for (const auto& row : rows) {
    csv << g17(row.uc) << ',';
    if (row.lifetime_optimal_s) csv << g17(*row.lifetime_optimal_s);
    csv << ',';
    if (row.lifetime_uniform_s) csv << g17(*row.lifetime_uniform_s);
    csv << '\n';
  }
  write_text_file((dir / "sweep_lifetime.csv").string(), csv.str());
  write_sidecar(config, "sweep_lifetime", dir);
  return rows;
}

std::vector<RatesRow> run_rates(const ExperimentConfig& config) {
  if (config.uc_values.empty())
    throw std::invalid_argument("rates: need a utility constraint");
  const auto dir = prepare_out_dir(config);
  const Scenario scenario = resolve_scenario(config);
  const GroupingPlan plan = build_plan(scenario);
  const double u_prime_c =
      target_u_prime(config, scenario, config.uc_values.front());

  const Solution sol = solve_or_throw(config, scenario, plan, u_prime_c);
  double q_u = 0.0;
  try {
    q_u = solve_uniform(plan, u_prime_c);
  } catch (const uniform_infeasible_error& e) {
    throw_infeasible(config, scenario.size(), e.u_prime_max(), "uniform");
  }

  const int l = scenario.radio.l_bits;
  const double t = scenario.radio.t_seconds;
  const auto x_analytic =
      effective_rates(per_node_throughput(sol.q, plan), l, t);
  std::vector<double> q_uniform_vec(scenario.size(), q_u);
  const auto x_uniform =
      effective_rates(per_node_throughput(q_uniform_vec, plan), l, t);

  // Same seed for both models: identical transmission pattern, only the
  // reception rule differs.
  const std::uint64_t mc_seed = config.seed ^ kMcSeedSalt;
  const SimReport capture = estimate_throughput(
      scenario, plan, sol.q, {ReceptionKind::perfect_capture, 0.0},
      config.slots, mc_seed);
  const SimReport sinr = estimate_throughput(
      scenario, plan, sol.q, {ReceptionKind::sinr_threshold, scenario.radio.beta},
      config.slots, mc_seed);
  const auto x_mc_capture = effective_rates(capture.empirical_s, l, t);
  const auto x_mc_sinr = effective_rates(sinr.empirical_s, l, t);

  std::vector<RatesRow> rows(scenario.size());
  for (int j = 0; j < scenario.size(); ++j)
    rows[j] = RatesRow{scenario.nodes[j].id, scenario.nodes[j].d_m,
                       x_analytic[j],        x_mc_capture[j],
                       x_mc_sinr[j],         x_uniform[j]};
  std::sort(rows.begin(), rows.end(), [](const RatesRow& a, const RatesRow& b) {
    return a.d_m != b.d_m ? a.d_m < b.d_m : a.node_id < b.node_id;
  });

  std::ostringstream csv;
  csv << "node_id,d_m,x_analytic_capture,x_mc_capture,x_mc_sinr,x_uniform\n";
  for (const auto& row : rows)
    csv << row.node_id << ',' << g17(row.d_m) << ','
        << g17(row.x_analytic_capture) << ',' << g17(row.x_mc_capture) << ','
        << g17(row.x_mc_sinr) << ',' << g17(row.x_uniform) << '\n';
  write_text_file((dir / "rates.csv").string(), csv.str());
  write_sidecar(config, "rates", dir);
  return rows;
}

std::vector<SimReport> run_simulate(const ExperimentConfig& config) {
  if (config.uc_values.empty())
    throw std::invalid_argument("simulate: need a utility constraint");
  const auto dir = prepare_out_dir(config);
  const Scenario scenario = resolve_scenario(config);
  const GroupingPlan plan = build_plan(scenario);
  const double u_prime_c =
      target_u_prime(config, scenario, config.uc_values.front());

  std::vector<double> q;
  if (config.uniform_policy) {
    double q_u = 0.0;
    try {
      q_u = solve_uniform(plan, u_prime_c);
    } catch (const uniform_infeasible_error& e) {
      throw_infeasible(config, scenario.size(), e.u_prime_max(), "uniform");
    }
    q.assign(scenario.size(), q_u);
  } else {
    q = solve_or_throw(config, scenario, plan, u_prime_c).q;
  }

  const std::uint64_t mc_seed = config.seed ^ kMcSeedSalt;
  std::vector<SimReport> reports;
  auto run_one = [&](ReceptionKind kind, const char* name) {
    const ReceptionModel model{kind, kind == ReceptionKind::sinr_threshold
                                         ? scenario.radio.beta
                                         : 0.0};
    const SimReport report =
        estimate_throughput(scenario, plan, q, model, config.slots, mc_seed);
    write_text_file((dir / (std::string("sim_") + name + ".csv")).string(),
                    sim_report_to_csv(report));
    save_json_file(sim_report_to_json(report),
                   (dir / (std::string("sim_") + name + ".json")).string());
    reports.push_back(report);
  };
  if (config.model != ExperimentConfig::Model::sinr)
    run_one(ReceptionKind::perfect_capture, "capture");
  if (config.model != ExperimentConfig::Model::capture)
    run_one(ReceptionKind::sinr_threshold, "sinr");

  write_sidecar(config, "simulate", dir);
  return reports;
}

}  // namespace ucem
