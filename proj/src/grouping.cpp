#include "ucem/grouping.hpp"

#include <algorithm>
#include <stdexcept>

namespace ucem {

std::vector<double> compute_thresholds(std::span<const double> gains,
                                       double beta) {
  if (gains.empty())
    throw std::domain_error("thresholds: need at least one gain");
  if (!(beta > 1.0)) throw std::domain_error("thresholds: beta must exceed 1");
  for (double g : gains)
    if (!(g > 0.0)) throw std::domain_error("thresholds: gains must be positive");

  const auto [min_it, max_it] = std::minmax_element(gains.begin(), gains.end());
  std::vector<double> thresholds{*max_it};
  while (thresholds.back() >= *min_it)
    thresholds.push_back(thresholds.back() / beta);
  return thresholds;
}

int classify_gain(std::span<const double> thresholds, double gain) {
  for (std::size_t i = 0; i + 1 < thresholds.size(); ++i)
    if (gain > thresholds[i + 1] && gain <= thresholds[i])
      return static_cast<int>(i);
  return -1;
}

GroupingPlan assign_groups(const Scenario& scenario,
                           std::vector<double> thresholds) {
  if (thresholds.size() < 2)
    throw std::invalid_argument("grouping: threshold ladder needs M >= 1");

  GroupingPlan plan;
  plan.thresholds = std::move(thresholds);
  const int m = static_cast<int>(plan.thresholds.size()) - 1;
  plan.group_sizes.assign(m, 0);
  plan.group_of.reserve(scenario.nodes.size());

  for (const Node& node : scenario.nodes) {
    const int g = classify_gain(plan.thresholds, node.gain);
    if (g < 0)
      throw std::logic_error("grouping: gain outside the threshold ladder");
    plan.group_of.push_back(g);
    ++plan.group_sizes[g];
  }

  plan.suffix_counts.assign(m, 0);
  int running = 0;
  for (int g = m - 1; g >= 0; --g) {
    running += plan.group_sizes[g];
    plan.suffix_counts[g] = running;
  }
  return plan;
}

std::vector<double> assign_powers(const GroupingPlan& plan,
                                  std::span<const double> gains,
                                  double base_p_watts) {
  if (gains.size() != plan.group_of.size())
    throw std::invalid_argument("powers: gain count does not match plan");
  std::vector<double> powers(gains.size());
  for (std::size_t j = 0; j < gains.size(); ++j)
    powers[j] =
        control_power(base_p_watts, plan.thresholds[plan.group_of[j]], gains[j]);
  return powers;
}

GroupingPlan build_plan(const Scenario& scenario) {
  const std::vector<double> gains = scenario.gains();
  GroupingPlan plan =
      assign_groups(scenario, compute_thresholds(gains, scenario.radio.beta));
  plan.tx_power_watts = assign_powers(plan, gains, scenario.radio.p_watts);
  return plan;
}

}  // namespace ucem
