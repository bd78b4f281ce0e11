#pragma once

#include <cstdint>
#include <vector>

namespace ucem {

// Global radio and protocol parameters. beta is kept linear internally;
// dB appears only on external interfaces (files, CLI) as beta_db.
struct RadioParams {
  double p_watts = 0.2;       // base transmit power, no power control
  double beta_db = 6.0;       // SINR threshold as given externally
  double beta = 3.9810717055349722;  // db_to_linear(beta_db)
  double t_seconds = 0.005;   // slot duration
  int l_bits = 1000;          // packet length
  double e_b_joules = 1000.0; // battery budget per node
};

struct Node {
  int id = 0;
  double d_m = 0.0;
  double gain = 0.0;  // dimensionless pathgain to the BS
};

struct Scenario {
  std::vector<Node> nodes;
  RadioParams radio;
  double radius_m = 20.0;
  double d_min_m = 1.0;
  std::uint64_t seed = 1;

  int size() const { return static_cast<int>(nodes.size()); }
  std::vector<double> gains() const;
};

double db_to_linear(double db);
double linear_to_db(double linear);

RadioParams make_radio(double p_watts, double beta_db, double t_seconds,
                       int l_bits, double e_b_joules);

// 20 * d^-4. Throws std::domain_error for d <= 0.
double pathgain(double d_m);

// Area-uniform placement on a disk of the given radius, distances clamped
// to [d_min, radius]. Deterministic and bit-identical for a given seed.
Scenario generate_disk_scenario(int n, double radius_m, double d_min_m,
                                const RadioParams& radio, std::uint64_t seed);

}  // namespace ucem
