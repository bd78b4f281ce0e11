#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ucem/analytics.hpp"
#include "ucem/grouping.hpp"

namespace ucem {

enum class SolveStatus { optimal, infeasible, at_ceiling };

const char* to_string(SolveStatus status);

struct Solution {
  std::vector<double> q;
  double lambda = 0.0;
  double u_prime_achieved = 0.0;
  double avg_power_watts = 0.0;
  double kkt_residual = 0.0;
  SolveStatus status = SolveStatus::infeasible;
  double u_prime_max = 0.0;  // ceiling, always filled for diagnostics
};

// Utility constraint cannot be met: carries the achievable ceiling so the
// caller can lower the target.
class infeasible_error : public std::runtime_error {
 public:
  infeasible_error(const std::string& what, double u_prime_max)
      : std::runtime_error(what), u_prime_max_(u_prime_max) {}
  double u_prime_max() const { return u_prime_max_; }

 private:
  double u_prime_max_;
};

// Same, but for the single-probability baseline; its ceiling is lower than
// the per-node one, so the two infeasibilities are distinct conditions.
class uniform_infeasible_error : public infeasible_error {
 public:
  using infeasible_error::infeasible_error;
};

class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Smaller root of q^2 P - q (P + lambda S) + lambda = 0, evaluated in the
// cancellation-safe form 2 lambda / (b + sqrt(b^2 - 4 P lambda)). Always
// lands in [0, 1]; the S=1, lambda >= P case clamps to 1.
double stationary_prob(double p_watts, int suffix_count, double lambda);

// Exact dual solve: scalar bisection on lambda around the per-node
// quadratic, driving u_prime(q(lambda)) to the target.
Solution solve_ucem(const GroupingPlan& plan,
                    std::span<const double> tx_power_watts, double u_prime_c);

// Max over nodes of the normalized quadratic residual, combined with the
// utility residual |u_prime(q) - u_prime_c|.
double kkt_residuals(const Solution& sol, const GroupingPlan& plan,
                     std::span<const double> tx_power_watts, double u_prime_c);

// Smallest common q meeting the utility target when every node transmits
// with the same probability. Throws uniform_infeasible_error when even the
// peak of the uniform utility curve is below the target.
double solve_uniform(const GroupingPlan& plan, double u_prime_c);

struct GridPoint {
  std::vector<double> q;
  double u_prime = 0.0;
  double avg_power_watts = 0.0;
};

// Exhaustive search oracle over q in {step, 2 step, ...}^N, N <= 4.
// Returns the feasible grid point of least energy. Test use only.
GridPoint grid_oracle(const GroupingPlan& plan,
                      std::span<const double> tx_power_watts, double u_prime_c,
                      double step);

}  // namespace ucem
