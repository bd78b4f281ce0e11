#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ucem/json_io.hpp"
#include "ucem/model.hpp"
#include "ucem/rng.hpp"

using namespace ucem;

TEST_CASE("pathgain follows 20/d^4") {
  CHECK(pathgain(1.0) == 20.0);
  CHECK(pathgain(20.0) == doctest::Approx(1.25e-4).epsilon(1e-15));
  CHECK(pathgain(2.0) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK_THROWS_AS(pathgain(0.0), std::domain_error);
  CHECK_THROWS_AS(pathgain(-3.0), std::domain_error);
}

TEST_CASE("pathgain is strictly decreasing") {
  SplitMix64 rng(99);
  for (int i = 0; i < 200; ++i) {
    const double a = 0.5 + 30.0 * rng.uniform01();
    const double b = a + 1e-6 + 10.0 * rng.uniform01();
    CHECK(pathgain(a) > pathgain(b));
  }
}

TEST_CASE("disk scenario respects geometry and determinism") {
  const RadioParams radio;
  const Scenario s = generate_disk_scenario(50, 20.0, 1.0, radio, 7);
  REQUIRE(s.size() == 50);
  const double gain_cap = pathgain(s.d_min_m);
  for (const Node& node : s.nodes) {
    CHECK(node.d_m >= 1.0);
    CHECK(node.d_m <= 20.0);
    CHECK(node.gain == pathgain(node.d_m));
    CHECK(node.gain <= gain_cap);
  }

  const Scenario again = generate_disk_scenario(50, 20.0, 1.0, radio, 7);
  for (int j = 0; j < 50; ++j) {
    CHECK(s.nodes[j].d_m == again.nodes[j].d_m);  // bit-identical
    CHECK(s.nodes[j].gain == again.nodes[j].gain);
  }

  const Scenario other = generate_disk_scenario(50, 20.0, 1.0, radio, 8);
  bool any_diff = false;
  for (int j = 0; j < 50; ++j) any_diff |= other.nodes[j].d_m != s.nodes[j].d_m;
  CHECK(any_diff);

  CHECK(generate_disk_scenario(1, 20.0, 1.0, radio, 1).size() == 1);
  CHECK_THROWS_AS(generate_disk_scenario(0, 20.0, 1.0, radio, 1),
                  std::domain_error);
  CHECK_THROWS_AS(generate_disk_scenario(5, 20.0, 25.0, radio, 1),
                  std::domain_error);
}

TEST_CASE("placement is area-uniform: mean d^2 near R^2/2") {
  const RadioParams radio;
  const int n = 20000;
  const Scenario s = generate_disk_scenario(n, 20.0, 0.01, radio, 11);
  double mean = 0.0, mean_sq = 0.0;
  for (const Node& node : s.nodes) {
    mean += node.d_m * node.d_m;
    mean_sq += std::pow(node.d_m, 4);
  }
  mean /= n;
  mean_sq /= n;
  const double se = std::sqrt((mean_sq - mean * mean) / n);
  CHECK(std::abs(mean - 200.0) < 3.0 * se);
}

TEST_CASE("radio parameter validation") {
  CHECK(make_radio(0.2, 6.0, 0.005, 1000, 1000.0).beta ==
        doctest::Approx(3.9810717055349722).epsilon(1e-15));
  CHECK_THROWS_AS(make_radio(0.0, 6.0, 0.005, 1000, 1000.0), std::domain_error);
  CHECK_THROWS_AS(make_radio(0.2, -1.0, 0.005, 1000, 1000.0), std::domain_error);
  CHECK_THROWS_AS(make_radio(0.2, 6.0, 0.0, 1000, 1000.0), std::domain_error);
  CHECK_THROWS_AS(make_radio(0.2, 6.0, 0.005, 0, 1000.0), std::domain_error);
  CHECK_THROWS_AS(make_radio(0.2, 6.0, 0.005, 1000, 0.0), std::domain_error);
}

TEST_CASE("scenario json round trip recomputes gains unless given") {
  const RadioParams radio;
  const Scenario s = generate_disk_scenario(10, 20.0, 1.0, radio, 5);
  const Scenario back = scenario_from_json(scenario_to_json(s));
  REQUIRE(back.size() == 10);
  for (int j = 0; j < 10; ++j) {
    CHECK(back.nodes[j].d_m == s.nodes[j].d_m);
    CHECK(back.nodes[j].gain == s.nodes[j].gain);
  }

  // measured-gain escape hatch: explicit gains survive the round trip
  Scenario measured = s;
  measured.nodes[3].gain = 0.123;
  const Scenario back2 = scenario_from_json(scenario_to_json(measured));
  CHECK(back2.nodes[3].gain == 0.123);
  CHECK(back2.nodes[4].gain == pathgain(back2.nodes[4].d_m));
}
