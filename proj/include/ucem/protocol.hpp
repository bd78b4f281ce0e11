#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ucem/grouping.hpp"
#include "ucem/model.hpp"
#include "ucem/solver.hpp"

namespace ucem {

// Startup broadcast: the threshold ladder plus the two radio scalars a
// node needs to classify itself and set its power.
struct SetupMessage {
  std::vector<double> thresholds;
  double base_power_watts = 0.0;
  double beta = 0.0;
};

// Per-topology broadcast: group populations and the multiplier. O(M)
// scalars, never per-node data. at_ceiling marks targets on the utility
// ceiling, where q = 1/S_i is the only exact representation (finite
// lambda cannot express it).
struct AssignMessage {
  std::vector<int> group_counts;
  double lambda = 0.0;
  bool at_ceiling = false;
};

// What a node reconstructs for itself from the two broadcasts.
struct NodeState {
  double gain = 0.0;
  int group = 0;  // 0-based
  double tx_power_watts = 0.0;
  double q = 0.0;
};

// BS side of steps 1-4: package a solved plan into the two broadcasts.
// Requires an optimal or at_ceiling solution.
std::pair<SetupMessage, AssignMessage> bs_emit(const GroupingPlan& plan,
                                               const Solution& solution,
                                               const RadioParams& radio);

// Node side of steps 2, 3 and 5: classify own gain, set power, and solve
// the local quadratic for q. A gain outside the ladder returns nullopt,
// signalling that the node needs a fresh setup broadcast.
std::optional<NodeState> node_apply(const SetupMessage& setup,
                                    const AssignMessage& assign,
                                    double own_gain);

// Scalars carried by the two broadcasts together; grows with M only.
int broadcast_scalar_count(const SetupMessage& setup,
                           const AssignMessage& assign);

}  // namespace ucem
