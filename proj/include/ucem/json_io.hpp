#pragma once

#include <string>

#include <json.hpp>

#include "ucem/grouping.hpp"
#include "ucem/model.hpp"
#include "ucem/protocol.hpp"
#include "ucem/sim.hpp"
#include "ucem/solver.hpp"

namespace ucem {

// Scenario file schema:
//   {radio:{P_watts, beta_db, T_seconds, L_bits, E_B_joules},
//    radius_m, d_min_m, seed, nodes:[{id, d_m[, gain]}]}
// Gains are recomputed from distance on load unless a node carries an
// explicit gain field (measured-gain escape hatch).
nlohmann::json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& scenario, const std::string& path);

// {thresholds:[], groups:[{node_id, group, P_ij_watts}]}; groups 1-based.
nlohmann::json plan_to_json(const GroupingPlan& plan);

// {lambda, status, U_prime, avg_power_watts, q:[...]}
nlohmann::json solution_to_json(const Solution& solution);

// Compact wire forms for the two broadcasts.
nlohmann::json setup_to_json(const SetupMessage& setup);
SetupMessage setup_from_json(const nlohmann::json& j);
nlohmann::json assign_to_json(const AssignMessage& assign);
AssignMessage assign_from_json(const nlohmann::json& j);

nlohmann::json sim_report_to_json(const SimReport& report);
std::string sim_report_to_csv(const SimReport& report);

nlohmann::json lifetime_report_to_json(const LifetimeReport& report);
std::string lifetime_report_to_csv(const LifetimeReport& report);

void write_text_file(const std::string& path, const std::string& content);
nlohmann::json load_json_file(const std::string& path);
void save_json_file(const nlohmann::json& j, const std::string& path);

}  // namespace ucem
