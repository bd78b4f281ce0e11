#include "ucem/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ucem {

namespace {

std::string csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

nlohmann::json scenario_to_json(const Scenario& scenario) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const Node& node : scenario.nodes) {
    nlohmann::json entry{{"id", node.id}, {"d_m", node.d_m}};
    // keep measured gains that deviate from the pathgain law
    if (node.gain != pathgain(node.d_m)) entry["gain"] = node.gain;
    nodes.push_back(std::move(entry));
  }
  return nlohmann::json{
      {"radio",
       {{"P_watts", scenario.radio.p_watts},
        {"beta_db", scenario.radio.beta_db},
        {"T_seconds", scenario.radio.t_seconds},
        {"L_bits", scenario.radio.l_bits},
        {"E_B_joules", scenario.radio.e_b_joules}}},
      {"radius_m", scenario.radius_m},
      {"d_min_m", scenario.d_min_m},
      {"seed", scenario.seed},
      {"nodes", std::move(nodes)}};
}

Scenario scenario_from_json(const nlohmann::json& j) {
  Scenario s;
  const auto& radio = j.at("radio");
  s.radio = make_radio(radio.at("P_watts").get<double>(),
                       radio.at("beta_db").get<double>(),
                       radio.at("T_seconds").get<double>(),
                       radio.at("L_bits").get<int>(),
                       radio.at("E_B_joules").get<double>());
  s.radius_m = j.at("radius_m").get<double>();
  s.d_min_m = j.at("d_min_m").get<double>();
  s.seed = j.value("seed", std::uint64_t{0});
  for (const auto& entry : j.at("nodes")) {
    Node node;
    node.id = entry.at("id").get<int>();
    node.d_m = entry.at("d_m").get<double>();
    node.gain = entry.contains("gain") ? entry.at("gain").get<double>()
                                       : pathgain(node.d_m);
    if (!(node.gain > 0.0))
      throw std::domain_error("scenario: node gain must be positive");
    s.nodes.push_back(node);
  }
  if (s.nodes.empty()) throw std::domain_error("scenario: no nodes");
  return s;
}

Scenario load_scenario(const std::string& path) {
  return scenario_from_json(load_json_file(path));
}

void save_scenario(const Scenario& scenario, const std::string& path) {
  save_json_file(scenario_to_json(scenario), path);
}

nlohmann::json plan_to_json(const GroupingPlan& plan) {
  nlohmann::json groups = nlohmann::json::array();
  for (int j = 0; j < plan.node_count(); ++j)
    groups.push_back({{"node_id", j},
                      {"group", plan.group_of[j] + 1},
                      {"P_ij_watts", plan.tx_power_watts.empty()
                                         ? nlohmann::json()
                                         : nlohmann::json(plan.tx_power_watts[j])}});
  return nlohmann::json{{"thresholds", plan.thresholds},
                        {"groups", std::move(groups)}};
}

nlohmann::json solution_to_json(const Solution& solution) {
  return nlohmann::json{{"lambda", solution.lambda},
                        {"status", to_string(solution.status)},
                        {"U_prime", solution.u_prime_achieved},
                        {"U_prime_max", solution.u_prime_max},
                        {"avg_power_watts", solution.avg_power_watts},
                        {"kkt_residual", solution.kkt_residual},
                        {"q", solution.q}};
}

nlohmann::json setup_to_json(const SetupMessage& setup) {
  return nlohmann::json{{"thresholds", setup.thresholds},
                        {"P", setup.base_power_watts},
                        {"beta", setup.beta}};
}

SetupMessage setup_from_json(const nlohmann::json& j) {
  SetupMessage setup;
  setup.thresholds = j.at("thresholds").get<std::vector<double>>();
  setup.base_power_watts = j.at("P").get<double>();
  setup.beta = j.at("beta").get<double>();
  return setup;
}

nlohmann::json assign_to_json(const AssignMessage& assign) {
  return nlohmann::json{{"counts", assign.group_counts},
                        {"lambda", assign.lambda},
                        {"at_ceiling", assign.at_ceiling}};
}

AssignMessage assign_from_json(const nlohmann::json& j) {
  AssignMessage assign;
  assign.group_counts = j.at("counts").get<std::vector<int>>();
  assign.lambda = j.at("lambda").get<double>();
  assign.at_ceiling = j.at("at_ceiling").get<bool>();
  return assign;
}

nlohmann::json sim_report_to_json(const SimReport& report) {
  return nlohmann::json{{"slots", report.slots},
                        {"seed", report.seed},
                        {"success_counts", report.success_counts},
                        {"empirical_S", report.empirical_s},
                        {"std_err", report.std_err}};
}

std::string sim_report_to_csv(const SimReport& report) {
  std::ostringstream out;
  out << "node_id,successes,empirical_S,std_err\n";
  for (std::size_t j = 0; j < report.empirical_s.size(); ++j)
    out << j << ',' << report.success_counts[j] << ','
        << csv_double(report.empirical_s[j]) << ','
        << csv_double(report.std_err[j]) << '\n';
  return out.str();
}

nlohmann::json lifetime_report_to_json(const LifetimeReport& report) {
  nlohmann::json deaths = nlohmann::json::array();
  for (std::uint64_t d : report.death_slot)
    deaths.push_back(d == kAliveForever ? nlohmann::json()
                                        : nlohmann::json(d));
  nlohmann::json j{{"death_slot", std::move(deaths)},
                   {"analytic_death_slot", report.analytic_death_slot},
                   {"death_fraction", report.death_fraction},
                   {"seed", report.seed},
                   {"lifetime_reached", report.lifetime_reached}};
  if (report.lifetime_reached) {
    j["network_lifetime_slots"] = report.network_lifetime_slots;
    j["network_lifetime_seconds"] = report.network_lifetime_seconds;
  }
  return j;
}

std::string lifetime_report_to_csv(const LifetimeReport& report) {
  std::ostringstream out;
  out << "node_id,death_slot,analytic_death_slot\n";
  for (std::size_t j = 0; j < report.death_slot.size(); ++j) {
    out << j << ',';
    if (report.death_slot[j] != kAliveForever) out << report.death_slot[j];
    out << ',' << csv_double(report.analytic_death_slot[j]) << '\n';
  }
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

void save_json_file(const nlohmann::json& j, const std::string& path) {
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace ucem
