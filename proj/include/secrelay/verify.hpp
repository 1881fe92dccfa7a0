#pragma once
// Self-check suites behind `secrelay verify`: each suite draws random
// parameters, compares two independent computations and reports the worst
// residual against its tolerance.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "secrelay/channel_model.hpp"
#include "secrelay/fading_sim.hpp"
#include "secrelay/fractional_solver.hpp"

namespace secrelay {

struct VerifyOptions {
  std::size_t draws = 1000;
  std::uint64_t seed = kDefaultSeed;
  std::size_t grid_points = kDefaultGridPoints;
  bool inject_fault = false;  // negative control: perturbs one comparison
};

struct SuiteReport {
  std::string name;
  bool passed = true;
  double worst = 0.0;      // largest residual seen
  double tolerance = 0.0;
  std::size_t checks = 0;
};

/// One random scenario: second-hop gains with random phases, mu and P_r.
struct ScenarioDraw {
  ChannelRealization channel;
  DerivedParams params;
  PowerBudget budget;
};

/// alpha, beta log-uniform on [1e-2, 1e2]; mu uniform on [1, 20];
/// P_r uniform on [0, 50]. h_r is chosen so that mu = 1 + P_s |h_r|^2 with P_s = 1.
ScenarioDraw draw_scenario(std::mt19937_64& rng);

std::vector<SuiteReport> run_verification(const VerifyOptions& opts);

}  // namespace secrelay
