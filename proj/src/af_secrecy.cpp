#include "secrelay/af_secrecy.hpp"

#include <algorithm>
#include <cmath>

#include "secrelay/errors.hpp"
#include "secrelay/kernels/point.hpp"

namespace secrelay {

namespace {

double gain_ratio_log2(double gain, double mu, double x) {
  return std::log2((1.0 + gain * mu * x) / (1.0 + gain * x));
}

void require_gain(double x) {
  if (!std::isfinite(x) || x < 0.0) throw DomainError("relay gain x must be finite and >= 0");
}

}  // namespace

double mutual_info_destination(const DerivedParams& params, double x) {
  require_gain(x);
  return gain_ratio_log2(params.alpha, params.mu, x);
}

double mutual_info_eavesdropper(const DerivedParams& params, double x) {
  require_gain(x);
  return gain_ratio_log2(params.beta, params.mu, x);
}

double af_optimal_gain(const DerivedParams& params, const PowerBudget& pb) {
  validate(params);
  validate(pb);
  const double a = params.alpha;
  const double b = params.beta;
  const double mu = params.mu;
  if (!(a > b) || mu == 1.0) return 0.0;
  if (pb.p_r <= std::sqrt(mu / (a * b))) return pb.p_r / mu;
  return 1.0 / std::sqrt(a * b * mu);
}

SecrecyResult af_secrecy_capacity(const DerivedParams& params, const PowerBudget& pb, RateConvention convention) {
  validate(params);
  validate(pb);
  const kernels::RatioPower rp = kernels::af_point(params.alpha, params.beta, params.mu, pb.p_r);
  const double per_hop = std::max(0.0, std::log2(rp.ratio));
  SecrecyResult out;
  out.capacity = convention == RateConvention::HalfDuplex ? 0.5 * per_hop : per_hop;
  out.x_hat = af_optimal_gain(params, pb);
  out.consumed_power = rp.power;
  out.strategy = Strategy::AF;
  return out;
}

double af_achievable_rate_at(const DerivedParams& params, const PowerBudget& pb, double x) {
  validate(params);
  validate(pb);
  require_gain(x);
  if (x > gain_domain(Strategy::AF, params, pb)) throw DomainError("relay gain exceeds P_r / mu");
  return 0.5 * (mutual_info_destination(params, x) - mutual_info_eavesdropper(params, x));
}

}  // namespace secrelay
