#pragma once
// Monte Carlo ergodic averages over Rayleigh fading.
//
// Reproducibility contract: sample i of a run with seed s draws from its own
// std::mt19937_64 seeded by std::seed_seq{lo32(s), hi32(s), lo32(i), hi32(i)}.
// The gains h_r, h_d, h_e are drawn in that order, each as
// (re, im) = sqrt(var / 2) * (N(0,1), N(0,1)) with one
// std::normal_distribution<double> per sample. Results are therefore
// bit-reproducible for a given standard library, independent of how the
// samples are scheduled. Unit-variance draws are scaled by sqrt(var), so two
// configurations that differ only in their variances see the same underlying
// random numbers.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "secrelay/channel_model.hpp"

namespace secrelay {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

struct EnsembleConfig {
  double var_hr = 1.0;
  double var_hd = 1.0;
  double var_he = 1.0;
  double p_s_dbw = 10.0;
  std::vector<double> p_r_grid;  // watts, strictly increasing
  std::size_t n_samples = 100'000;
  std::uint64_t seed = kDefaultSeed;
  std::vector<Strategy> strategies{Strategy::AF, Strategy::DF};
};

/// ConfigError on empty/unsorted grid, zero samples, nonpositive variances.
void validate(const EnsembleConfig& cfg);

struct SweepRecord {
  Strategy strategy = Strategy::AF;
  double p_r = 0.0;
  double mean_capacity = 0.0;
  double stderr_capacity = 0.0;
  double mean_consumed_power = 0.0;
  double stderr_consumed_power = 0.0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Generator state for one Monte Carlo sample.
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t index);

  /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
  Complex complex_gaussian(double variance);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

ChannelRealization sample_channel(const EnsembleConfig& cfg, SampleStream& stream);

/// Per (strategy, P_r): mean and standard error of capacity and consumed
/// relay power over n_samples realizations. One set of realizations is
/// shared by every grid point and strategy. Records are ordered by strategy
/// (as listed in the config), then ascending P_r.
std::vector<SweepRecord> ergodic_sweep(const EnsembleConfig& cfg);

/// Same ensemble and records as ergodic_sweep; exists so callers interested
/// in relay power (rather than capacity) have a named entry point.
std::vector<SweepRecord> consumed_power_sweep(const EnsembleConfig& cfg);

/// `points` evenly spaced values from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, std::size_t points);

struct MeanStderr {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n)
};

/// Two-pass estimate with pairwise summation (fixed reduction tree).
MeanStderr mean_stderr(std::span<const double> values);

}  // namespace secrelay
