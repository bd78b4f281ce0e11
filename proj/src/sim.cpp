#include "ucem/sim.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ucem/rng.hpp"

namespace ucem {

namespace {

constexpr double kSinrTieMargin = 1e-9;
constexpr std::uint64_t kLifetimeSalt = 0x4c49464554494d45ULL;  // "LIFETIME"
constexpr std::uint64_t kResolveSalt = 0x5245534f4c564553ULL;   // "RESOLVES"

void check_q(std::span<const double> q, const GroupingPlan& plan) {
  if (static_cast<int>(q.size()) != plan.node_count())
    throw std::invalid_argument("sim: q length does not match plan");
  for (double v : q)
    if (!(v >= 0.0) || !(v <= 1.0))
      throw std::domain_error("sim: q outside [0,1]");
}

SimReport finalize(std::uint64_t slots, std::vector<std::uint64_t> counts,
                   std::uint64_t seed) {
  SimReport report;
  report.slots = slots;
  report.seed = seed;
  report.empirical_s.reserve(counts.size());
  report.std_err.reserve(counts.size());
  for (std::uint64_t c : counts) {
    const double p = static_cast<double>(c) / static_cast<double>(slots);
    report.empirical_s.push_back(p);
    report.std_err.push_back(
        std::sqrt(p * (1.0 - p) / static_cast<double>(slots)));
  }
  report.success_counts = std::move(counts);
  return report;
}

// Geometric gap (support 1, 2, ...) between consecutive transmissions,
// by inversion of the CDF. Assumes 0 < q < 1.
std::uint64_t geometric_gap(double u, double log1m_q) {
  const double g = std::ceil(std::log1p(-u) / log1m_q);
  return g < 1.0 ? 1 : static_cast<std::uint64_t>(g);
}

}  // namespace

std::optional<int> slot_outcome(std::span<const Transmission> transmitters,
                                const ReceptionModel& model) {
  if (transmitters.empty()) return std::nullopt;
  for (const Transmission& t : transmitters)
    if (!(t.received_power_watts > 0.0))
      throw std::domain_error("slot_outcome: received powers must be positive");

  if (model.kind == ReceptionKind::perfect_capture) {
    int winner = transmitters[0].node;
    double best = transmitters[0].received_power_watts;
    int ties = 1;
    for (std::size_t i = 1; i < transmitters.size(); ++i) {
      const double p = transmitters[i].received_power_watts;
      if (p > best) {
        best = p;
        winner = transmitters[i].node;
        ties = 1;
      } else if (p == best) {
        ++ties;
      }
    }
    if (ties > 1) return std::nullopt;
    return winner;
  }

  if (!(model.beta > 1.0))
    throw std::domain_error("slot_outcome: sinr model needs beta > 1");
  if (transmitters.size() == 1) return transmitters[0].node;

  double total = 0.0;
  for (const Transmission& t : transmitters) total += t.received_power_watts;

  std::optional<int> winner;
  for (const Transmission& t : transmitters) {
    const double interference = total - t.received_power_watts;
    if (t.received_power_watts >
        model.beta * interference * (1.0 + kSinrTieMargin)) {
      assert(!winner && "beta > 1 admits at most one winner");
      winner = t.node;
    }
  }
  return winner;
}

SimReport estimate_throughput_range(const Scenario& scenario,
                                    const GroupingPlan& plan,
                                    std::span<const double> q,
                                    const ReceptionModel& model,
                                    std::uint64_t slot_begin,
                                    std::uint64_t slot_end,
                                    std::uint64_t seed) {
  check_q(q, plan);
  if (slot_end <= slot_begin)
    throw std::invalid_argument("sim: need at least one slot");

  const int n = plan.node_count();
  // One received power per group keeps within-group ties exact.
  std::vector<double> received(plan.num_groups());
  for (int g = 0; g < plan.num_groups(); ++g)
    received[g] = scenario.radio.p_watts * plan.thresholds[g];

  std::vector<std::uint64_t> counts(n, 0);
  std::vector<Transmission> active;
  active.reserve(n);

  for (std::uint64_t slot = slot_begin; slot < slot_end; ++slot) {
    active.clear();
    for (int j = 0; j < n; ++j)
      if (counter_uniform01(seed, slot, static_cast<std::uint64_t>(j)) < q[j])
        active.push_back(Transmission{j, received[plan.group_of[j]]});
    if (const auto winner = slot_outcome(active, model)) ++counts[*winner];
  }
  return finalize(slot_end - slot_begin, std::move(counts), seed);
}

SimReport estimate_throughput(const Scenario& scenario,
                              const GroupingPlan& plan,
                              std::span<const double> q,
                              const ReceptionModel& model, std::uint64_t slots,
                              std::uint64_t seed) {
  return estimate_throughput_range(scenario, plan, q, model, 0, slots, seed);
}

SimReport merge_reports(const SimReport& a, const SimReport& b) {
  if (a.success_counts.size() != b.success_counts.size())
    throw std::invalid_argument("merge: node counts differ");
  std::vector<std::uint64_t> counts(a.success_counts);
  for (std::size_t j = 0; j < counts.size(); ++j)
    counts[j] += b.success_counts[j];
  return finalize(a.slots + b.slots, std::move(counts), a.seed);
}

LifetimeReport simulate_lifetime(const Scenario& scenario,
                                 const GroupingPlan& plan,
                                 std::span<const double> q,
                                 double death_fraction, std::uint64_t seed,
                                 const ResolvePolicy& resolve) {
  check_q(q, plan);
  if (!(death_fraction > 0.0) || !(death_fraction <= 1.0))
    throw std::domain_error("lifetime: death fraction must lie in (0,1]");

  const int n = plan.node_count();
  const double t = scenario.radio.t_seconds;
  const double e_b = scenario.radio.e_b_joules;

  LifetimeReport report;
  report.death_fraction = death_fraction;
  report.seed = seed;
  report.death_slot.assign(n, kAliveForever);
  report.analytic_death_slot.resize(n);

  std::vector<std::uint64_t> budget_packets(n);
  for (int j = 0; j < n; ++j) {
    const double cost = plan.tx_power_watts[j] * t;
    budget_packets[j] = static_cast<std::uint64_t>(std::floor(e_b / cost));
    report.analytic_death_slot[j] =
        q[j] > 0.0 ? e_b / (plan.tx_power_watts[j] * q[j] * t)
                   : std::numeric_limits<double>::infinity();
  }

  const auto dead_quota = static_cast<std::uint64_t>(
      std::ceil(death_fraction * static_cast<double>(n)));

  if (!resolve) {
    for (int j = 0; j < n; ++j) {
      if (q[j] == 0.0 && budget_packets[j] > 0) continue;  // never depletes
      if (q[j] == 1.0) {
        report.death_slot[j] = budget_packets[j];
        continue;
      }
      const double log1m_q = std::log1p(-q[j]);
      std::uint64_t slot = 0;
      for (std::uint64_t k = 0; k < budget_packets[j]; ++k)
        slot += geometric_gap(
            counter_uniform01(seed ^ kLifetimeSalt,
                              static_cast<std::uint64_t>(j), k),
            log1m_q);
      report.death_slot[j] = slot;
    }
  } else {
    // Slot-resolution walk with re-solving on each death event.
    std::vector<double> energy(n, e_b);
    std::vector<double> q_now(q.begin(), q.end());
    std::vector<bool> alive(n, true);
    std::uint64_t dead = 0;

    for (std::uint64_t slot = 0; dead < dead_quota; ++slot) {
      bool any_death = false;
      for (int j = 0; j < n; ++j) {
        if (alive[j] && energy[j] < plan.tx_power_watts[j] * t) {
          alive[j] = false;
          report.death_slot[j] = slot;
          ++dead;
          any_death = true;
        }
      }
      if (any_death && dead < dead_quota) q_now = resolve(alive);
      if (dead >= dead_quota) break;
      bool draining = false;
      for (int j = 0; j < n; ++j)
        if (alive[j] && q_now[j] > 0.0) draining = true;
      if (!draining) break;  // survivors never transmit again
      for (int j = 0; j < n; ++j) {
        if (!alive[j]) continue;
        if (counter_uniform01(seed ^ kResolveSalt, slot,
                              static_cast<std::uint64_t>(j)) < q_now[j])
          energy[j] -= plan.tx_power_watts[j] * t;
      }
    }
  }

  // First slot at which the dead count reaches the quota: the quota-th
  // smallest death slot.
  std::vector<std::uint64_t> sorted(report.death_slot);
  std::sort(sorted.begin(), sorted.end());
  const std::uint64_t kth = sorted[dead_quota - 1];
  if (kth != kAliveForever) {
    report.network_lifetime_slots = kth;
    report.network_lifetime_seconds = static_cast<double>(kth) * t;
    report.lifetime_reached = true;
  }
  return report;
}

}  // namespace ucem
