#include "secrelay/df_secrecy.hpp"

#include <algorithm>
#include <cmath>

#include "secrelay/kernels/point.hpp"

namespace secrelay {

double source_relay_capacity(const DerivedParams& params) {
  validate(params);
  return std::log2(params.mu);
}

double second_hop_secrecy_capacity(const DerivedParams& params, const PowerBudget& pb) {
  validate(params);
  validate(pb);
  const double hop = (1.0 + params.alpha * pb.p_r) / (1.0 + params.beta * pb.p_r);
  return std::max(0.0, std::log2(hop));
}

double df_optimal_gain(const DerivedParams& params, const PowerBudget& pb) {
  validate(params);
  validate(pb);
  return kernels::df_point(params.alpha, params.beta, params.mu, pb.p_r).power;
}

SecrecyResult df_secrecy_capacity(const DerivedParams& params, const PowerBudget& pb, RateConvention convention) {
  validate(params);
  validate(pb);
  const kernels::RatioPower rp = kernels::df_point(params.alpha, params.beta, params.mu, pb.p_r);
  const double per_hop = std::max(0.0, std::log2(rp.ratio));
  SecrecyResult out;
  out.capacity = convention == RateConvention::HalfDuplex ? 0.5 * per_hop : per_hop;
  // E[|x_r|^2] = 1, so the transmitted power is |omega|^2 itself.
  out.x_hat = rp.power;
  out.consumed_power = rp.power;
  out.strategy = Strategy::DF;
  return out;
}

}  // namespace secrelay
