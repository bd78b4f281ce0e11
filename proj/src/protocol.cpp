#include "ucem/protocol.hpp"

#include <stdexcept>

namespace ucem {

std::pair<SetupMessage, AssignMessage> bs_emit(const GroupingPlan& plan,
                                               const Solution& solution,
                                               const RadioParams& radio) {
  if (solution.status == SolveStatus::infeasible)
    throw std::invalid_argument("bs_emit: nothing to broadcast for an unsolved plan");

  SetupMessage setup;
  setup.thresholds = plan.thresholds;
  setup.base_power_watts = radio.p_watts;
  setup.beta = radio.beta;

  AssignMessage assign;
  assign.group_counts = plan.group_sizes;
  assign.lambda = solution.lambda;
  assign.at_ceiling = solution.status == SolveStatus::at_ceiling;
  return {setup, assign};
}

std::optional<NodeState> node_apply(const SetupMessage& setup,
                                    const AssignMessage& assign,
                                    double own_gain) {
  const int group = classify_gain(setup.thresholds, own_gain);
  if (group < 0) return std::nullopt;

  int suffix = 0;
  for (int g = group; g < static_cast<int>(assign.group_counts.size()); ++g)
    suffix += assign.group_counts[g];
  if (suffix < 1) return std::nullopt;  // counts inconsistent with the ladder

  NodeState state;
  state.gain = own_gain;
  state.group = group;
  state.tx_power_watts =
      control_power(setup.base_power_watts, setup.thresholds[group], own_gain);
  state.q = assign.at_ceiling
                ? 1.0 / suffix
                : stationary_prob(state.tx_power_watts, suffix, assign.lambda);
  return state;
}

int broadcast_scalar_count(const SetupMessage& setup,
                           const AssignMessage& assign) {
  return static_cast<int>(setup.thresholds.size()) + 2 +
         static_cast<int>(assign.group_counts.size()) + 2;
}

}  // namespace ucem
