#include "secrelay/converse_bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "secrelay/errors.hpp"

namespace secrelay {

namespace {

constexpr double kPsdSlack = 8.0 * std::numeric_limits<double>::epsilon();

void require_gain(double x) {
  if (!std::isfinite(x) || x < 0.0) throw DomainError("relay gain x must be finite and >= 0");
}

// 1 - |phi|^2, with rounding overshoot past the unit circle clamped to 0.
double decorrelation(const NoiseCorrelation& corr) {
  validate(corr);
  return std::max(0.0, 1.0 - std::norm(corr.phi));
}

// |h_d - conj(phi) h_e|^2, factored through the stronger of the two gains.
double residual_gain(const ChannelRealization& ch, const NoiseCorrelation& corr) {
  const Complex pc = std::conj(corr.phi);
  const double a = std::norm(ch.h_d);
  const double b = std::norm(ch.h_e);
  if (b >= a && b > 0.0) return b * std::norm(ch.h_d / ch.h_e - pc);
  if (a > 0.0) return a * std::norm(1.0 - pc * (ch.h_e / ch.h_d));
  return 0.0;
}

// ratio - 1 = (mu - 1) R x / ((1 + beta mu x)(A + (A beta + R) x)), the
// lmmse / conditional-variance ratio with the common terms cancelled.
kernels::RatioExcess bound_excess(double A, double R, double beta, double mu) {
  kernels::RatioExcess e;
  e.e1 = (mu - 1.0) * R;
  const double slope = A * beta + R;
  e.d2 = beta * mu * slope;
  e.d1 = slope + beta * mu * A;
  e.d0 = A;
  return e;
}

double excess_to_bits(double excess) { return 0.5 * std::log1p(excess) / std::numbers::ln2; }

}  // namespace

void validate(const NoiseCorrelation& corr) {
  if (!std::isfinite(corr.phi.real()) || !std::isfinite(corr.phi.imag())) {
    throw PsdViolation("noise correlation must be finite");
  }
  if (std::norm(corr.phi) > 1.0 + kPsdSlack) throw PsdViolation("noise correlation |phi| exceeds 1");
}

double lmmse_error_variance(const ChannelRealization& ch, const DerivedParams& params, double x,
                            const NoiseCorrelation& corr) {
  require_gain(x);
  const double A = decorrelation(corr);
  const double R = residual_gain(ch, corr);
  const double mux = params.mu * x;
  return A + mux * R / (1.0 + std::norm(ch.h_e) * mux);
}

double noise_covariance_det(const ChannelRealization& ch, double x, const NoiseCorrelation& corr) {
  require_gain(x);
  const double A = decorrelation(corr);
  const double R = residual_gain(ch, corr);
  return A * (1.0 + std::norm(ch.h_e) * x) + R * x;
}

double conditional_noise_entropy(const ChannelRealization& ch, const DerivedParams& params, double x,
                                 const NoiseCorrelation& corr) {
  (void)params;
  const double det = noise_covariance_det(ch, x, corr);
  if (!(det > 0.0)) throw DegenerateDistribution("noise covariance K_z is singular");
  const double var_e = 1.0 + std::norm(ch.h_e) * x;
  return std::log2(std::numbers::pi * std::numbers::e * det / var_e);
}

NoiseCorrelation select_phi(const ChannelRealization& ch, const DerivedParams& params) {
  (void)params;
  const double a = std::norm(ch.h_d);
  const double b = std::norm(ch.h_e);
  if (a <= b) {
    if (b == 0.0) return {};
    return {std::conj(ch.h_d / ch.h_e)};
  }
  return {ch.h_e / ch.h_d};
}

double bound_objective(const ChannelRealization& ch, const DerivedParams& params, double x,
                       const NoiseCorrelation& corr) {
  require_gain(x);
  const double det = noise_covariance_det(ch, x, corr);
  if (!(det > 0.0)) throw DegenerateDistribution("noise covariance K_z is singular");
  const double A = decorrelation(corr);
  const double R = residual_gain(ch, corr);
  return excess_to_bits(kernels::eval_excess(bound_excess(A, R, std::norm(ch.h_e), params.mu), x));
}

BoundEvaluation genie_upper_bound(const ChannelRealization& ch, const DerivedParams& params, const PowerBudget& pb,
                                  const NoiseCorrelation& corr, std::size_t n_points) {
  validate(ch);
  validate(params);
  validate(pb);
  const double A = decorrelation(corr);
  const double R = residual_gain(ch, corr);
  if (A == 0.0) {
    // Fully correlated noises. With R == 0 (alpha == beta, phi aligned) the
    // bound is 0/0 in every term and its limit is 0; otherwise the supremum
    // sits at x -> 0+ where the entropy is undefined.
    if (R == 0.0) return {0.0, 0.0, corr};
    throw DegenerateDistribution("|phi| = 1 with unaligned gains: K_z is singular at x = 0");
  }

  const kernels::RatioExcess excess = bound_excess(A, R, std::norm(ch.h_e), params.mu);
  const OracleResult best = maximize_excess(excess, gain_domain(Strategy::AF, params, pb), n_points);
  return {excess_to_bits(best.excess), best.x, corr};
}

BoundEvaluation genie_upper_bound(const ChannelRealization& ch, const DerivedParams& params, const PowerBudget& pb,
                                  std::size_t n_points) {
  return genie_upper_bound(ch, params, pb, select_phi(ch, params), n_points);
}

double gain_ratio_identity_residual(const DerivedParams& params, double x) {
  const double a = params.alpha;
  const double b = params.beta;
  const double mu = params.mu;
  if (a == 0.0) throw DomainError("identity requires alpha > 0");
  if (a == b) throw DomainError("identity requires alpha != beta");
  const double lhs = (1.0 + a * mu * x) / (1.0 + a * x);
  const double gap = a - b;
  const double k = gap / a;  // 1 - beta/alpha
  const double rhs = (k + gap * mu * x) / (k + gap * x);
  return std::abs(lhs - rhs);
}

}  // namespace secrelay
