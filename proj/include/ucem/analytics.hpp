#pragma once

#include <span>
#include <vector>

#include "ucem/grouping.hpp"
#include "ucem/model.hpp"

namespace ucem {

// Log-utility report. u = u_prime + N*log(L/T); phi holds the per-node
// terms of u_prime. Natural logarithm throughout.
struct UtilityReport {
  double u_prime = 0.0;
  double u = 0.0;
  std::vector<double> phi;
};

struct CeilingResult {
  std::vector<double> q_star;  // 1/S_i per node
  double u_prime_max = 0.0;
};

// Per-slot success probability under perfect capture: a node in group i
// succeeds iff it transmits and nobody in groups 1..i does.
std::vector<double> per_node_throughput(std::span<const double> q,
                                        const GroupingPlan& plan);

// phi(q) = log q + (S-1) log(1-q). Boundaries follow the log-barrier
// convention: -inf at q=0, and at q=1 unless S=1 (where phi(1)=0).
double phi(double q, int suffix_count);

UtilityReport utility_prime(std::span<const double> q,
                            const GroupingPlan& plan,
                            const RadioParams& radio);

// x = L * (1/T) * S, in bits/second.
std::vector<double> effective_rates(std::span<const double> s, int l_bits,
                                    double t_seconds);

// U'_c = U_c - N*log(L/T): strips the constant rate term from a
// utility threshold expressed on effective rates.
double convert_utility(double u_c, int n, int l_bits, double t_seconds);

// Unconstrained maximizer of u_prime: q* = 1/S_i per node.
CeilingResult utility_ceiling(const GroupingPlan& plan);

// Sum of P_ij * q_ij, in watts. Multiply by T for joules per slot.
double average_power(std::span<const double> q,
                     std::span<const double> tx_power_watts);

}  // namespace ucem
