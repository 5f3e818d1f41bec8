#pragma once

// Shared fixtures: seeded generators for property tests and a small,
// fast scenario for end-to-end checks.

#include "rabisig/simulation.hpp"

#include <random>

namespace testsupport {

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
};

inline constexpr int property_cases = 200;

// Baseline two-level medium on a short domain: 0.2 m sample, 1 mm cells.
inline rabisig::Scenario small_scenario(double t_end = 2e-9) {
  using namespace rabisig;
  Scenario sc;
  sc.name = "small";
  sc.medium = {hz_to_angular(660e12), 8.5e-30, 0.0, 8.5e-30, hz_to_angular(3.4e6), hz_to_angular(65e3),
               6.7e18, 0.0, 0.2};
  sc.grid = GridSpec::from_courant(-0.1, 0.4, 1e-3, 1.0, t_end);
  sc.drive = {DriveShape::ArctanRamp, 1550e2, 1.9, -5.3, 0.0};
  sc.probes = {0.2};
  return sc;
}

}  // namespace testsupport
