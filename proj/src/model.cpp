#include "ucem/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ucem/rng.hpp"

namespace ucem {

std::vector<double> Scenario::gains() const {
  std::vector<double> g;
  g.reserve(nodes.size());
  for (const Node& node : nodes) g.push_back(node.gain);
  return g;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

RadioParams make_radio(double p_watts, double beta_db, double t_seconds,
                       int l_bits, double e_b_joules) {
  if (!(p_watts > 0.0)) throw std::domain_error("radio: P must be positive");
  if (!(t_seconds > 0.0)) throw std::domain_error("radio: T must be positive");
  if (l_bits < 1) throw std::domain_error("radio: L must be at least 1 bit");
  if (!(e_b_joules > 0.0))
    throw std::domain_error("radio: battery energy must be positive");
  RadioParams r;
  r.p_watts = p_watts;
  r.beta_db = beta_db;
  r.beta = db_to_linear(beta_db);
  if (!(r.beta > 1.0))
    throw std::domain_error("radio: beta must exceed 1 (0 dB)");
  r.t_seconds = t_seconds;
  r.l_bits = l_bits;
  r.e_b_joules = e_b_joules;
  return r;
}

double pathgain(double d_m) {
  if (!(d_m > 0.0)) throw std::domain_error("pathgain: distance must be positive");
  const double d2 = d_m * d_m;
  return 20.0 / (d2 * d2);
}

Scenario generate_disk_scenario(int n, double radius_m, double d_min_m,
                                const RadioParams& radio, std::uint64_t seed) {
  if (n < 1) throw std::domain_error("scenario: need at least one node");
  if (!(d_min_m > 0.0) || !(d_min_m < radius_m))
    throw std::domain_error("scenario: require 0 < d_min < radius");

  Scenario s;
  s.radio = radio;
  s.radius_m = radius_m;
  s.d_min_m = d_min_m;
  s.seed = seed;
  s.nodes.reserve(static_cast<std::size_t>(n));

  SplitMix64 rng(seed);
  for (int i = 0; i < n; ++i) {
    // radius sampled as R*sqrt(u) -> uniform over the disk area
    const double d_raw = radius_m * std::sqrt(rng.uniform01());
    const double d = std::clamp(d_raw, d_min_m, radius_m);
    s.nodes.push_back(Node{i, d, pathgain(d)});
  }
  return s;
}

}  // namespace ucem
