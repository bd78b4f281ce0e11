#include "ucem/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ucem {

namespace {

constexpr int kMaxBisectIterations = 200;
constexpr int kMaxDoublings = 2000;

double utility_tolerance(double target) {
  return 1e-9 * std::abs(target) + 1e-12;
}

// q(lambda) per node, and u_prime at that point.
std::vector<double> dual_point(const GroupingPlan& plan,
                               std::span<const double> tx_power,
                               double lambda) {
  std::vector<double> q(tx_power.size());
  for (std::size_t j = 0; j < tx_power.size(); ++j)
    q[j] = stationary_prob(tx_power[j], plan.suffix_count_of(static_cast<int>(j)),
                           lambda);
  return q;
}

double dual_utility(const GroupingPlan& plan, std::span<const double> tx_power,
                    double lambda) {
  double total = 0.0;
  for (std::size_t j = 0; j < tx_power.size(); ++j) {
    const int s = plan.suffix_count_of(static_cast<int>(j));
    total += phi(stationary_prob(tx_power[j], s, lambda), s);
  }
  return total;
}

}  // namespace

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::at_ceiling: return "at_ceiling";
  }
  return "unknown";
}

double stationary_prob(double p_watts, int suffix_count, double lambda) {
  if (!(p_watts > 0.0))
    throw std::domain_error("stationary_prob: power must be positive");
  if (suffix_count < 1)
    throw std::domain_error("stationary_prob: suffix count must be >= 1");
  if (lambda < 0.0)
    throw std::domain_error("stationary_prob: lambda must be nonnegative");
  if (lambda == 0.0) return 0.0;
  if (suffix_count == 1 && lambda >= p_watts) return 1.0;

  const double b = p_watts + lambda * suffix_count;
  // b^2 - 4 P lambda rewritten without cancellation
  const double disc = (p_watts - lambda * suffix_count) *
                          (p_watts - lambda * suffix_count) +
                      4.0 * p_watts * lambda * (suffix_count - 1);
  const double q = 2.0 * lambda / (b + std::sqrt(std::max(disc, 0.0)));
  return std::clamp(q, 0.0, 1.0);
}

Solution solve_ucem(const GroupingPlan& plan,
                    std::span<const double> tx_power, double u_prime_c) {
  if (tx_power.size() != plan.group_of.size())
    throw std::invalid_argument("solve_ucem: power vector does not match plan");
  if (!std::isfinite(u_prime_c))
    throw std::invalid_argument("solve_ucem: utility target must be finite");

  const CeilingResult ceiling = utility_ceiling(plan);
  const double tol_ceiling = utility_tolerance(ceiling.u_prime_max);

  Solution sol;
  sol.u_prime_max = ceiling.u_prime_max;

  if (u_prime_c > ceiling.u_prime_max + tol_ceiling) {
    sol.status = SolveStatus::infeasible;
    return sol;
  }

  const double base_power =
      *std::min_element(tx_power.begin(), tx_power.end());
  double lambda = 1e-12 * base_power;

  if (std::abs(u_prime_c - ceiling.u_prime_max) <= tol_ceiling) {
    // Constraint sits on the ceiling; q* = 1/S is the lambda -> inf limit,
    // so report the first lambda whose dual utility is within tolerance.
    for (int i = 0; i < kMaxDoublings &&
                    dual_utility(plan, tx_power, lambda) <
                        ceiling.u_prime_max - tol_ceiling;
         ++i)
      lambda *= 2.0;
    sol.q = ceiling.q_star;
    sol.lambda = lambda;
    sol.status = SolveStatus::at_ceiling;
    sol.u_prime_achieved = ceiling.u_prime_max;
    sol.avg_power_watts = average_power(sol.q, tx_power);
    sol.kkt_residual = std::abs(sol.u_prime_achieved - u_prime_c);
    return sol;
  }

  const double tol = utility_tolerance(u_prime_c);

  // Bracket: dual utility grows monotonically with lambda toward the
  // ceiling, which strictly exceeds the target here.
  double lo = 0.0;
  int doublings = 0;
  while (dual_utility(plan, tx_power, lambda) < u_prime_c) {
    lo = lambda;
    lambda *= 2.0;
    if (++doublings > kMaxDoublings)
      throw numerical_error("solve_ucem: bracket search did not terminate");
  }

  double hi = lambda;
  double mid = hi;
  double u_mid = dual_utility(plan, tx_power, mid);
  bool converged = std::abs(u_mid - u_prime_c) <= tol;
  for (int i = 0; i < kMaxBisectIterations && !converged; ++i) {
    mid = 0.5 * (lo + hi);
    u_mid = dual_utility(plan, tx_power, mid);
    if (std::abs(u_mid - u_prime_c) <= tol) {
      converged = true;
      break;
    }
    (u_mid < u_prime_c ? lo : hi) = mid;
  }
  if (!converged)
    throw numerical_error(
        "solve_ucem: bisection stalled, residual " +
        std::to_string(std::abs(u_mid - u_prime_c)) + " at lambda " +
        std::to_string(mid));

  sol.q = dual_point(plan, tx_power, mid);
  sol.lambda = mid;
  sol.status = SolveStatus::optimal;
  sol.u_prime_achieved = u_mid;
  sol.avg_power_watts = average_power(sol.q, tx_power);
  sol.kkt_residual = kkt_residuals(sol, plan, tx_power, u_prime_c);
  return sol;
}

double kkt_residuals(const Solution& sol, const GroupingPlan& plan,
                     std::span<const double> tx_power, double u_prime_c) {
  double stationarity = 0.0;
  for (std::size_t j = 0; j < tx_power.size(); ++j) {
    const double p = tx_power[j];
    const double s = plan.suffix_count_of(static_cast<int>(j));
    const double q = sol.q[j];
    const double value = q * q * p - q * (p + sol.lambda * s) + sol.lambda;
    stationarity = std::max(stationarity, std::abs(value) / p);
  }
  double u = 0.0;
  for (std::size_t j = 0; j < tx_power.size(); ++j)
    u += phi(sol.q[j], plan.suffix_count_of(static_cast<int>(j)));
  return std::max(stationarity, std::abs(u - u_prime_c));
}

double solve_uniform(const GroupingPlan& plan, double u_prime_c) {
  if (!std::isfinite(u_prime_c))
    throw std::invalid_argument("solve_uniform: utility target must be finite");

  const int n = plan.node_count();
  auto uniform_utility = [&](double q) {
    double total = 0.0;
    for (int g = 0; g < plan.num_groups(); ++g)
      if (plan.group_sizes[g] > 0)
        total += plan.group_sizes[g] * phi(q, plan.suffix_counts[g]);
    return total;
  };

  // Peak of the concave uniform curve: N/q = sum (S_i - 1)/(1-q).
  int excess = 0;
  for (int g = 0; g < plan.num_groups(); ++g)
    excess += plan.group_sizes[g] * (plan.suffix_counts[g] - 1);
  const double q_peak = static_cast<double>(n) / (n + excess);
  const double peak_utility = uniform_utility(q_peak);
  const double tol = utility_tolerance(u_prime_c);

  if (u_prime_c > peak_utility + utility_tolerance(peak_utility))
    throw uniform_infeasible_error(
        "solve_uniform: target exceeds the uniform-policy ceiling",
        peak_utility);
  if (std::abs(u_prime_c - peak_utility) <= utility_tolerance(peak_utility))
    return q_peak;

  // Smaller of the two roots: the curve rises from -inf to the peak, and
  // energy grows with q, so bisect on the rising side.
  double lo = 0.0;
  double hi = q_peak;
  for (int i = 0; i < kMaxBisectIterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double u = uniform_utility(mid);
    if (std::abs(u - u_prime_c) <= tol) return mid;
    (u < u_prime_c ? lo : hi) = mid;
  }
  throw numerical_error("solve_uniform: bisection stalled");
}

GridPoint grid_oracle(const GroupingPlan& plan,
                      std::span<const double> tx_power, double u_prime_c,
                      double step) {
  const int n = plan.node_count();
  if (n > 4)
    throw std::invalid_argument("grid_oracle: exhaustive search capped at 4 nodes");
  if (tx_power.size() != plan.group_of.size())
    throw std::invalid_argument("grid_oracle: power vector does not match plan");
  if (!(step > 0.0) || !(step < 0.5))
    throw std::invalid_argument("grid_oracle: step must lie in (0, 0.5)");

  const int k_max = static_cast<int>(std::floor((1.0 - step) / step + 1e-9));

  // Per-node interference counts derived from scratch by pairwise group
  // comparison; the oracle does not reuse the plan's suffix counts.
  std::vector<int> blocked(n, 0);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (k != j && plan.group_of[j] <= plan.group_of[k]) ++blocked[j];

  // Tabulated per-dimension contributions to log-throughput and energy.
  std::vector<std::vector<double>> util(n), energy(n);
  for (int j = 0; j < n; ++j) {
    util[j].resize(k_max + 1);
    energy[j].resize(k_max + 1);
    for (int k = 1; k <= k_max; ++k) {
      const double q = k * step;
      util[j][k] = std::log(q) + blocked[j] * std::log1p(-q);
      energy[j][k] = tx_power[j] * q;
    }
  }

  std::vector<int> index(n, 0), best_index;
  double best_energy = std::numeric_limits<double>::infinity();

  auto search = [&](auto&& self, int dim, double u_acc, double e_acc) -> void {
    if (dim == n - 1) {
      // Energy grows with the innermost coordinate, so the first feasible
      // value is the cheapest for this prefix.
      for (int k = 1; k <= k_max; ++k) {
        if (u_acc + util[dim][k] >= u_prime_c) {
          const double e = e_acc + energy[dim][k];
          if (e < best_energy) {
            best_energy = e;
            index[dim] = k;
            best_index = index;
          }
          break;
        }
      }
      return;
    }
    for (int k = 1; k <= k_max; ++k) {
      index[dim] = k;
      self(self, dim + 1, u_acc + util[dim][k], e_acc + energy[dim][k]);
    }
  };
  search(search, 0, 0.0, 0.0);

  if (best_index.empty())
    throw infeasible_error("grid_oracle: no feasible grid point",
                           utility_ceiling(plan).u_prime_max);

  GridPoint point;
  point.q.resize(n);
  for (int j = 0; j < n; ++j) {
    point.q[j] = best_index[j] * step;
    point.u_prime += util[j][best_index[j]];
  }
  point.avg_power_watts = best_energy;
  return point;
}

}  // namespace ucem
