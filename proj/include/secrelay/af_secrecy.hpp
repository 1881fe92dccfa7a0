#pragma once
// Amplify-and-forward relaying: Gaussian-input mutual informations, the
// optimal relay gain and the closed-form secrecy capacity.

#include "secrelay/channel_model.hpp"

namespace secrelay {

/// Whether reported rates carry the half-duplex factor 1/2 (two slots per
/// source symbol) or are the raw per-hop difference of mutual informations.
enum class RateConvention { HalfDuplex, PerHop };

struct SecrecyResult {
  double capacity = 0.0;        // bits per channel use, >= 0
  double x_hat = 0.0;           // optimal |omega|^2
  double consumed_power = 0.0;  // relay transmit power, <= P_r
  Strategy strategy = Strategy::AF;
};

/// log2((1 + alpha mu x) / (1 + alpha x)).
double mutual_info_destination(const DerivedParams& params, double x);
/// log2((1 + beta mu x) / (1 + beta x)).
double mutual_info_eavesdropper(const DerivedParams& params, double x);

double af_optimal_gain(const DerivedParams& params, const PowerBudget& pb);

SecrecyResult af_secrecy_capacity(const DerivedParams& params, const PowerBudget& pb,
                                  RateConvention convention = RateConvention::HalfDuplex);

/// Unclamped rate 1/2 (I_d - I_e) at a fixed gain x in [0, P_r/mu];
/// DomainError outside that interval. Negative when alpha < beta.
double af_achievable_rate_at(const DerivedParams& params, const PowerBudget& pb, double x);

}  // namespace secrelay
