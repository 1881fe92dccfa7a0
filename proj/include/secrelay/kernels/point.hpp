#pragma once
// Single-realization closed forms shared by the scalar kernels and the
// af_secrecy / df_secrecy modules. The AVX2 kernels replicate these
// expressions operation for operation; keep the two in sync.

#include <algorithm>
#include <cmath>

namespace secrelay::kernels {

struct RatioPower {
  double ratio;  // capacity = 0.5 * log2(ratio)
  double power;  // consumed relay power, <= p_r
};

// AF: ratio of the optimized quadratics at x = min(P_r/mu, 1/sqrt(a b mu)).
inline RatioPower af_point(double a, double b, double mu, double p_r) {
  if (!(a > b) || mu == 1.0) return {1.0, 0.0};
  const double ab = a * b;
  const double knee = std::sqrt(mu / ab);  // +inf when b == 0
  if (p_r <= knee) {
    const double q = ab * (p_r * p_r);
    return {(q + (a * mu + b) * p_r + mu) / (q + (a + b * mu) * p_r + mu), p_r};
  }
  const double s2 = 2.0 * std::sqrt(ab * mu);
  return {(s2 + a * mu + b) / (s2 + a + b * mu), knee};
}

// DF: min of the second-hop ratio at full power and the first-hop SNR term mu.
inline RatioPower df_point(double a, double b, double mu, double p_r) {
  if (!(a > b)) return {1.0, 0.0};
  const double hop = (1.0 + a * p_r) / (1.0 + b * p_r);
  if (hop <= mu) return {hop, p_r};
  return {mu, std::min(p_r, (mu - 1.0) / (a - b * mu))};
}

}  // namespace secrelay::kernels
