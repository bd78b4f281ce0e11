#include "ucem/analytics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ucem {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_probabilities(std::span<const double> q, const GroupingPlan& plan) {
  if (static_cast<int>(q.size()) != plan.node_count())
    throw std::invalid_argument("analytics: q length does not match plan");
  for (double v : q)
    if (!(v >= 0.0) || !(v <= 1.0))
      throw std::domain_error("analytics: q outside [0,1]");
}

}  // namespace

std::vector<double> per_node_throughput(std::span<const double> q,
                                        const GroupingPlan& plan) {
  check_probabilities(q, plan);
  const std::size_t n = q.size();
  std::vector<double> s(n);
  for (std::size_t j = 0; j < n; ++j) {
    double prod = q[j];
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      if (plan.group_of[k] <= plan.group_of[j]) prod *= 1.0 - q[k];
    }
    s[j] = prod;
  }
  return s;
}

double phi(double q, int suffix_count) {
  if (suffix_count < 1)
    throw std::invalid_argument("phi: suffix count must be at least 1");
  if (!(q >= 0.0) || !(q <= 1.0)) throw std::domain_error("phi: q outside [0,1]");
  if (q == 0.0) return kNegInf;
  if (q == 1.0) return suffix_count == 1 ? 0.0 : kNegInf;
  return std::log(q) + (suffix_count - 1) * std::log1p(-q);
}

UtilityReport utility_prime(std::span<const double> q,
                            const GroupingPlan& plan,
                            const RadioParams& radio) {
  check_probabilities(q, plan);
  UtilityReport report;
  report.phi.reserve(q.size());
  for (std::size_t j = 0; j < q.size(); ++j) {
    report.phi.push_back(phi(q[j], plan.suffix_count_of(static_cast<int>(j))));
    report.u_prime += report.phi.back();
  }
  report.u = report.u_prime +
             static_cast<double>(q.size()) *
                 std::log(radio.l_bits / radio.t_seconds);
  return report;
}

std::vector<double> effective_rates(std::span<const double> s, int l_bits,
                                    double t_seconds) {
  if (!(t_seconds > 0.0))
    throw std::domain_error("rates: slot duration must be positive");
  const double bits_per_second = l_bits / t_seconds;
  std::vector<double> x;
  x.reserve(s.size());
  for (double v : s) {
    if (!(v >= 0.0)) throw std::domain_error("rates: throughput must be >= 0");
    x.push_back(bits_per_second * v);
  }
  return x;
}

double convert_utility(double u_c, int n, int l_bits, double t_seconds) {
  if (!(t_seconds > 0.0))
    throw std::domain_error("utility: slot duration must be positive");
  if (l_bits < 1) throw std::domain_error("utility: packet must carry bits");
  return u_c - n * std::log(l_bits / t_seconds);
}

CeilingResult utility_ceiling(const GroupingPlan& plan) {
  CeilingResult result;
  result.q_star.reserve(plan.group_of.size());
  for (int j = 0; j < plan.node_count(); ++j) {
    const int s = plan.suffix_count_of(j);
    result.q_star.push_back(1.0 / s);
    result.u_prime_max += phi(1.0 / s, s);
  }
  return result;
}

double average_power(std::span<const double> q,
                     std::span<const double> tx_power_watts) {
  if (q.size() != tx_power_watts.size())
    throw std::invalid_argument("power: dimension mismatch");
  double total = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) total += tx_power_watts[j] * q[j];
  return total;
}

}  // namespace ucem
