#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ucem/grouping.hpp"
#include "ucem/model.hpp"

namespace ucem {

enum class ReceptionKind { perfect_capture, sinr_threshold };

struct ReceptionModel {
  ReceptionKind kind = ReceptionKind::perfect_capture;
  double beta = 0.0;  // linear, used by sinr_threshold
};

struct Transmission {
  int node = 0;
  double received_power_watts = 0.0;
};

// Winner of one slot, if any. Perfect capture: the unique strict maximum
// of received power; equal maxima collide. SINR: own power must exceed
// beta times the interference sum strictly, with a tiny relative margin so
// ratios within rounding of beta count as ties (adjacent groups sit at
// exactly beta by construction). At most one node can win either way.
std::optional<int> slot_outcome(std::span<const Transmission> transmitters,
                                const ReceptionModel& model);

struct SimReport {
  std::uint64_t slots = 0;
  std::vector<std::uint64_t> success_counts;
  std::vector<double> empirical_s;
  std::vector<double> std_err;  // sqrt(p (1-p) / slots), p empirical
  std::uint64_t seed = 0;
};

// Monte Carlo slot simulation over [0, slots). Draws are keyed by
// (slot, node), so two models run with the same seed see the same
// transmission pattern, and batch runs merge into the serial result.
SimReport estimate_throughput(const Scenario& scenario,
                              const GroupingPlan& plan,
                              std::span<const double> q,
                              const ReceptionModel& model, std::uint64_t slots,
                              std::uint64_t seed);

SimReport estimate_throughput_range(const Scenario& scenario,
                                    const GroupingPlan& plan,
                                    std::span<const double> q,
                                    const ReceptionModel& model,
                                    std::uint64_t slot_begin,
                                    std::uint64_t slot_end, std::uint64_t seed);

SimReport merge_reports(const SimReport& a, const SimReport& b);

constexpr std::uint64_t kAliveForever = ~std::uint64_t{0};

struct LifetimeReport {
  std::vector<std::uint64_t> death_slot;  // kAliveForever if never depleted
  std::vector<double> analytic_death_slot;  // E_B / (P_ij q_ij T)
  std::uint64_t network_lifetime_slots = kAliveForever;
  double network_lifetime_seconds = 0.0;
  bool lifetime_reached = false;
  double death_fraction = 0.7;
  std::uint64_t seed = 0;
};

// Recomputes transmission probabilities when nodes die; receives the alive
// mask, returns the new per-node q (entries for dead nodes are ignored).
using ResolvePolicy =
    std::function<std::vector<double>(const std::vector<bool>& alive)>;

// Battery depletion: every transmission costs P_ij * T joules out of E_B;
// a node too poor for one more packet is dead and silent. Death slots are
// sampled from the exact law of the process (sum of geometric gaps per
// packet, keyed per node and transmission). Passing a resolve policy
// switches to a slot-resolution loop that re-solves on each death; that
// path walks every slot and only suits short horizons.
LifetimeReport simulate_lifetime(const Scenario& scenario,
                                 const GroupingPlan& plan,
                                 std::span<const double> q,
                                 double death_fraction, std::uint64_t seed,
                                 const ResolvePolicy& resolve = {});

}  // namespace ucem
