#pragma once
// Decode-and-forward relaying. The two hops form a cut-set: the rate is the
// smaller of the first-hop capacity and the second-hop secrecy capacity, and
// when the first hop is the bottleneck the relay backs off to the smallest
// power that still matches it.

#include "secrelay/af_secrecy.hpp"
#include "secrelay/channel_model.hpp"

namespace secrelay {

/// log2(mu) = log2(1 + P_s |h_r|^2).
double source_relay_capacity(const DerivedParams& params);

/// {log2((1 + alpha P_r) / (1 + beta P_r))}^+, full relay power.
double second_hop_secrecy_capacity(const DerivedParams& params, const PowerBudget& pb);

double df_optimal_gain(const DerivedParams& params, const PowerBudget& pb);

SecrecyResult df_secrecy_capacity(const DerivedParams& params, const PowerBudget& pb,
                                  RateConvention convention = RateConvention::HalfDuplex);

}  // namespace secrelay
