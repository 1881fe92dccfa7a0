#include "secrelay/fading_sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "secrelay/errors.hpp"
#include "secrelay/kernels/kernels.hpp"

namespace secrelay {

namespace {

constexpr std::size_t kPairwiseBlock = 16;

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= kPairwiseBlock) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

std::seed_seq sample_seed(std::uint64_t seed, std::uint64_t index) {
  return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
}

struct Ensemble {
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<double> mu;
};

Ensemble draw_ensemble(const EnsembleConfig& cfg) {
  const PowerBudget pb{db_to_linear(cfg.p_s_dbw), 0.0};
  Ensemble e;
  e.alpha.resize(cfg.n_samples);
  e.beta.resize(cfg.n_samples);
  e.mu.resize(cfg.n_samples);
  for (std::size_t i = 0; i < cfg.n_samples; ++i) {
    SampleStream stream(cfg.seed, i);
    const DerivedParams p = derive_params(sample_channel(cfg, stream), pb);
    e.alpha[i] = p.alpha;
    e.beta[i] = p.beta;
    e.mu[i] = p.mu;
  }
  return e;
}

}  // namespace

void validate(const EnsembleConfig& cfg) {
  const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(cfg.var_hr) || !positive(cfg.var_hd) || !positive(cfg.var_he)) {
    throw ConfigError("fading variances must be positive and finite");
  }
  if (!std::isfinite(cfg.p_s_dbw)) throw ConfigError("p_s_dbw must be finite");
  if (cfg.p_r_grid.empty()) throw ConfigError("relay power grid is empty");
  for (std::size_t i = 0; i < cfg.p_r_grid.size(); ++i) {
    const double p = cfg.p_r_grid[i];
    if (!std::isfinite(p) || p < 0.0) throw ConfigError("relay powers must be finite and >= 0");
    if (i > 0 && !(p > cfg.p_r_grid[i - 1])) throw ConfigError("relay power grid must be strictly increasing");
  }
  if (cfg.n_samples < 1) throw ConfigError("n_samples must be >= 1");
  if (cfg.strategies.empty()) throw ConfigError("no strategy selected");
  for (std::size_t i = 0; i < cfg.strategies.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (cfg.strategies[i] == cfg.strategies[j]) throw ConfigError("strategy listed twice");
    }
  }
}

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t index) {
  auto seq = sample_seed(seed, index);
  engine_.seed(seq);
}

Complex SampleStream::complex_gaussian(double variance) {
  const double scale = std::sqrt(variance / 2.0);
  const double re = normal_(engine_);
  const double im = normal_(engine_);
  return {scale * re, scale * im};
}

ChannelRealization sample_channel(const EnsembleConfig& cfg, SampleStream& stream) {
  ChannelRealization ch;
  ch.h_r = stream.complex_gaussian(cfg.var_hr);
  ch.h_d = stream.complex_gaussian(cfg.var_hd);
  ch.h_e = stream.complex_gaussian(cfg.var_he);
  return ch;
}

std::vector<SweepRecord> ergodic_sweep(const EnsembleConfig& cfg) {
  validate(cfg);
  const Ensemble e = draw_ensemble(cfg);
  const kernels::BatchIn in{e.alpha, e.beta, e.mu};
  std::vector<double> ratio(cfg.n_samples);
  std::vector<double> power(cfg.n_samples);
  std::vector<double> capacity(cfg.n_samples);

  std::vector<SweepRecord> records;
  records.reserve(cfg.strategies.size() * cfg.p_r_grid.size());
  for (const Strategy s : cfg.strategies) {
    for (const double p_r : cfg.p_r_grid) {
      const kernels::BatchOut out{ratio, power};
      if (s == Strategy::AF) {
        kernels::af_batch(in, p_r, out);
      } else {
        kernels::df_batch(in, p_r, out);
      }
      std::transform(ratio.begin(), ratio.end(), capacity.begin(),
                     [](double r) { return 0.5 * std::max(0.0, std::log2(r)); });
      const MeanStderr c = mean_stderr(capacity);
      const MeanStderr w = mean_stderr(power);
      records.push_back({s, p_r, c.mean, c.std_error, w.mean, w.std_error, cfg.n_samples, cfg.seed});
    }
  }
  return records;
}

std::vector<SweepRecord> consumed_power_sweep(const EnsembleConfig& cfg) { return ergodic_sweep(cfg); }

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
  if (points == 0) throw ConfigError("grid needs at least one point");
  if (points == 1) return {lo};
  if (!(hi > lo)) throw ConfigError("grid upper bound must exceed lower bound");
  std::vector<double> g(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) g[i] = lo + static_cast<double>(i) * step;
  g.back() = hi;
  return g;
}

MeanStderr mean_stderr(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) return {};
  const double mean = pairwise_sum(values) / static_cast<double>(n);
  if (n == 1) return {mean, 0.0};
  std::vector<double> sq(n);
  std::transform(values.begin(), values.end(), sq.begin(), [mean](double v) { return (v - mean) * (v - mean); });
  const double var = pairwise_sum(sq) / static_cast<double>(n - 1);
  return {mean, std::sqrt(var / static_cast<double>(n))};
}

}  // namespace secrelay
