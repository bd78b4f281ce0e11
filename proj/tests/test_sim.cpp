#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ucem/analytics.hpp"
#include "ucem/rng.hpp"
#include "ucem/sim.hpp"
#include "ucem/solver.hpp"

using namespace ucem;

namespace {

constexpr double kBeta = 3.9810717055349722;

Scenario scenario_from_gains(const std::vector<double>& gains) {
  Scenario s;
  for (std::size_t j = 0; j < gains.size(); ++j)
    s.nodes.push_back(Node{static_cast<int>(j), 1.0, gains[j]});
  return s;
}

Scenario with_plan(const std::vector<double>& gains, GroupingPlan& plan) {
  Scenario s = scenario_from_gains(gains);
  plan = assign_groups(s, compute_thresholds(gains, s.radio.beta));
  plan.tx_power_watts = assign_powers(plan, s.gains(), s.radio.p_watts);
  return s;
}

}  // namespace

TEST_CASE("slot outcomes: lone transmitter always wins") {
  const std::vector<Transmission> one{{3, 0.7}};
  CHECK(slot_outcome(one, {ReceptionKind::perfect_capture, 0.0}) == 3);
  CHECK(slot_outcome(one, {ReceptionKind::sinr_threshold, kBeta}) == 3);
  CHECK(!slot_outcome({}, {ReceptionKind::perfect_capture, 0.0}).has_value());
}

TEST_CASE("slot outcomes: equal powers collide under both models") {
  const std::vector<Transmission> pair{{0, 0.5}, {1, 0.5}};
  CHECK(!slot_outcome(pair, {ReceptionKind::perfect_capture, 0.0}).has_value());
  CHECK(!slot_outcome(pair, {ReceptionKind::sinr_threshold, kBeta}).has_value());
}

TEST_CASE("adjacent-group boundary: capture wins, sinr ties out") {
  // received powers exactly beta apart, as power control arranges them
  const std::vector<Transmission> pair{{0, kBeta}, {1, 1.0}};
  CHECK(slot_outcome(pair, {ReceptionKind::perfect_capture, 0.0}) == 0);
  CHECK(!slot_outcome(pair, {ReceptionKind::sinr_threshold, kBeta}).has_value());
  // a clear margin over the threshold does capture the channel
  const std::vector<Transmission> clear{{0, 10.0}, {1, 1.0}};
  CHECK(slot_outcome(clear, {ReceptionKind::sinr_threshold, kBeta}) == 0);
}

TEST_CASE("sinr model admits at most one winner") {
  SplitMix64 rng(44);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform01() * 5);
    std::vector<Transmission> tx(n);
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
      tx[j] = {j, 1e-3 * std::exp(std::log(1e5) * rng.uniform01())};
      total += tx[j].received_power_watts;
    }
    int winners = 0;
    std::optional<int> expect;
    for (const auto& t : tx)
      if (t.received_power_watts >
          kBeta * (total - t.received_power_watts) * (1.0 + 1e-9)) {
        ++winners;
        expect = t.node;
      }
    CHECK(winners <= 1);
    CHECK(slot_outcome(tx, {ReceptionKind::sinr_threshold, kBeta}) == expect);
  }
}

TEST_CASE("monte carlo throughput concentrates on the analytic value") {
  GroupingPlan plan;
  {
    const Scenario s = with_plan({5.0}, plan);
    const auto report =
        estimate_throughput(s, plan, std::vector<double>{0.3},
                            {ReceptionKind::perfect_capture, 0.0}, 200000, 9);
    CHECK(std::abs(report.empirical_s[0] - 0.3) <= 3.0 * report.std_err[0]);
    CHECK(report.std_err[0] ==
          doctest::Approx(std::sqrt(report.empirical_s[0] *
                                    (1 - report.empirical_s[0]) / 200000.0)));
  }
  {
    const Scenario s = with_plan({5.0, 5.0}, plan);
    const auto report = estimate_throughput(
        s, plan, std::vector<double>{0.5, 0.5},
        {ReceptionKind::perfect_capture, 0.0}, 200000, 10);
    CHECK(std::abs(report.empirical_s[0] - 0.25) <= 3.0 * report.std_err[0]);
    CHECK(std::abs(report.empirical_s[1] - 0.25) <= 3.0 * report.std_err[1]);
  }
}

TEST_CASE("same seed reproduces, batches merge to the serial run") {
  GroupingPlan plan;
  const Scenario s = with_plan({18.0, 5.0, 4.0, 0.9, 0.8}, plan);
  const std::vector<double> q{0.2, 0.1, 0.15, 0.3, 0.25};
  const ReceptionModel model{ReceptionKind::perfect_capture, 0.0};

  const auto a = estimate_throughput(s, plan, q, model, 40000, 77);
  const auto b = estimate_throughput(s, plan, q, model, 40000, 77);
  CHECK(a.success_counts == b.success_counts);

  const auto first = estimate_throughput_range(s, plan, q, model, 0, 15000, 77);
  const auto second =
      estimate_throughput_range(s, plan, q, model, 15000, 40000, 77);
  const auto merged = merge_reports(first, second);
  CHECK(merged.success_counts == a.success_counts);
  CHECK(merged.slots == a.slots);

  const auto other = estimate_throughput(s, plan, q, model, 40000, 78);
  CHECK(other.success_counts != a.success_counts);
}

TEST_CASE("sinr successes are a subset of capture successes per node") {
  GroupingPlan plan;
  const Scenario s = with_plan({18.0, 5.0, 4.0, 0.9, 0.8}, plan);
  const std::vector<double> q{0.2, 0.1, 0.15, 0.3, 0.25};
  const auto capture = estimate_throughput(
      s, plan, q, {ReceptionKind::perfect_capture, 0.0}, 50000, 5);
  const auto sinr = estimate_throughput(
      s, plan, q, {ReceptionKind::sinr_threshold, s.radio.beta}, 50000, 5);
  for (std::size_t j = 0; j < q.size(); ++j)
    CHECK(sinr.success_counts[j] <= capture.success_counts[j]);
}

TEST_CASE("deterministic battery depletion at q = 1") {
  GroupingPlan plan;
  const Scenario s = with_plan({5.0}, plan);
  const auto expected = static_cast<std::uint64_t>(std::floor(
      s.radio.e_b_joules / (plan.tx_power_watts[0] * s.radio.t_seconds)));
  const auto report =
      simulate_lifetime(s, plan, std::vector<double>{1.0}, 1.0, 3);
  CHECK(report.death_slot[0] == expected);
  CHECK(report.network_lifetime_slots == expected);
  CHECK(report.lifetime_reached);
}

TEST_CASE("single-node lifetime tracks the analytic mean within 1%") {
  GroupingPlan plan;
  const Scenario s = with_plan({5.0}, plan);
  const auto report =
      simulate_lifetime(s, plan, std::vector<double>{0.5}, 1.0, 11);
  const double analytic = report.analytic_death_slot[0];
  CHECK(analytic == doctest::Approx(s.radio.e_b_joules /
                                    (plan.tx_power_watts[0] * 0.5 *
                                     s.radio.t_seconds)));
  CHECK(std::abs(static_cast<double>(report.death_slot[0]) - analytic) <
        0.01 * analytic);
  CHECK(report.network_lifetime_seconds ==
        doctest::Approx(static_cast<double>(report.network_lifetime_slots) *
                        s.radio.t_seconds));
}

TEST_CASE("silent nodes never deplete") {
  GroupingPlan plan;
  const Scenario s = with_plan({5.0, 4.0}, plan);
  const auto report =
      simulate_lifetime(s, plan, std::vector<double>{0.0, 1.0}, 1.0, 3);
  CHECK(report.death_slot[0] == kAliveForever);
  CHECK(report.death_slot[1] != kAliveForever);
  CHECK(!report.lifetime_reached);  // the full-death quota is unreachable

  const auto half =
      simulate_lifetime(s, plan, std::vector<double>{0.0, 1.0}, 0.5, 3);
  CHECK(half.lifetime_reached);
  CHECK(half.network_lifetime_slots == half.death_slot[1]);
}

TEST_CASE("death slots shrink monotonically as q grows") {
  GroupingPlan plan;
  const Scenario s = with_plan({18.0, 5.0, 0.9}, plan);
  const std::vector<double> lo{0.05, 0.1, 0.2};
  const std::vector<double> hi{0.1, 0.2, 0.4};
  const auto r_lo = simulate_lifetime(s, plan, lo, 1.0, 19);
  const auto r_hi = simulate_lifetime(s, plan, hi, 1.0, 19);
  for (int j = 0; j < 3; ++j) {
    CHECK(r_hi.death_slot[j] <= r_lo.death_slot[j]);
    CHECK(r_hi.analytic_death_slot[j] < r_lo.analytic_death_slot[j]);
  }
  CHECK(r_hi.network_lifetime_slots <= r_lo.network_lifetime_slots);
}

TEST_CASE("resolve hook re-plans survivors on each death") {
  GroupingPlan plan;
  Scenario s = with_plan({5.0, 5.0}, plan);
  s.radio.e_b_joules = plan.tx_power_watts[0] * s.radio.t_seconds * 5.5;

  int calls = 0;
  const auto resolve = [&](const std::vector<bool>& alive) {
    ++calls;
    std::vector<double> q(alive.size(), 0.0);
    for (std::size_t j = 0; j < alive.size(); ++j)
      if (alive[j]) q[j] = 1.0;  // survivors drain flat out
    return q;
  };
  const auto report = simulate_lifetime(
      s, plan, std::vector<double>{1.0, 0.25}, 1.0, 23, resolve);
  CHECK(calls >= 1);
  CHECK(report.lifetime_reached);
  CHECK(report.death_slot[0] == 5);  // five packets at q = 1
  CHECK(report.death_slot[1] > report.death_slot[0]);
  // after the first death the survivor transmits every slot
  CHECK(report.death_slot[1] <= report.death_slot[0] + 6);
}

TEST_CASE("lifetime input validation") {
  GroupingPlan plan;
  const Scenario s = with_plan({5.0}, plan);
  CHECK_THROWS_AS(
      simulate_lifetime(s, plan, std::vector<double>{0.5}, 0.0, 1),
      std::domain_error);
  CHECK_THROWS_AS(
      simulate_lifetime(s, plan, std::vector<double>{0.5}, 1.5, 1),
      std::domain_error);
  CHECK_THROWS_AS(
      simulate_lifetime(s, plan, std::vector<double>{0.5, 0.5}, 0.7, 1),
      std::invalid_argument);
}
