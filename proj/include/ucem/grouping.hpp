#pragma once

#include <span>
#include <vector>

#include "ucem/model.hpp"

namespace ucem {

// Capture-oriented grouping. Groups are 0-based in code: group g covers
// gains in (thresholds[g+1], thresholds[g]], so group 0 is the strongest.
// External JSON reports 1-based group numbers.
struct GroupingPlan {
  std::vector<double> thresholds;      // G_1 > G_2 > ... > G_{M+1}
  std::vector<int> group_of;           // per node, in [0, M)
  std::vector<double> tx_power_watts;  // per node, P * G_i / G_ij
  std::vector<int> group_sizes;        // n_i, length M
  std::vector<int> suffix_counts;      // S_i = n_i + ... + n_{M-1}, length M

  int num_groups() const { return static_cast<int>(group_sizes.size()); }
  int node_count() const { return static_cast<int>(group_of.size()); }
  int suffix_count_of(int node) const { return suffix_counts[group_of[node]]; }
};

// Threshold ladder: starts at max(gains), each next value is the previous
// divided by beta, extended until it drops strictly below min(gains).
std::vector<double> compute_thresholds(std::span<const double> gains,
                                       double beta);

// Group index for a gain, or -1 if the gain lies outside (G_{M+1}, G_1].
// Intervals are closed on top: a gain equal to G_i belongs to group i.
int classify_gain(std::span<const double> thresholds, double gain);

// Transmit power that equalizes received power across a group.
inline double control_power(double base_p_watts, double group_threshold,
                            double gain) {
  return base_p_watts * (group_threshold / gain);
}

GroupingPlan assign_groups(const Scenario& scenario,
                           std::vector<double> thresholds);

std::vector<double> assign_powers(const GroupingPlan& plan,
                                  std::span<const double> gains,
                                  double base_p_watts);

// compute_thresholds + assign_groups + assign_powers in one step.
GroupingPlan build_plan(const Scenario& scenario);

}  // namespace ucem
