#pragma once
// Channel realizations, power budgets and the derived real parameters
// (alpha, beta, mu) that every capacity formula is written in.
//
// All noises have unit variance; powers are linear watts; rates are in
// bits per channel use.

#include <complex>
#include <string_view>

namespace secrelay {

using Complex = std::complex<double>;

enum class Strategy { AF, DF };

std::string_view to_string(Strategy s);
// Accepts "af"/"df" (case-insensitive). Throws InvalidInput otherwise.
Strategy parse_strategy(std::string_view text);

/// Complex gains of the three links: source->relay, relay->destination,
/// relay->eavesdropper.
struct ChannelRealization {
  Complex h_r{};
  Complex h_d{};
  Complex h_e{};
};

/// Source power per symbol and relay peak power, in watts.
struct PowerBudget {
  double p_s = 0.0;
  double p_r = 0.0;
};

/// alpha = |h_d|^2, beta = |h_e|^2, mu = 1 + P_s |h_r|^2.
struct DerivedParams {
  double alpha = 0.0;
  double beta = 0.0;
  double mu = 1.0;
};

// Throw InvalidInput unless every field is finite and within its range.
void validate(const ChannelRealization& ch);
void validate(const PowerBudget& pb);
void validate(const DerivedParams& params);

DerivedParams derive_params(const ChannelRealization& ch, const PowerBudget& pb);

/// Upper bound X on the squared relay gain |omega|^2 imposed by the relay's
/// peak power: P_r / mu for AF (the relay forwards signal plus noise of
/// power mu), P_r for DF.
double gain_domain(Strategy strategy, const DerivedParams& params, const PowerBudget& pb);

double db_to_linear(double p_db);

}  // namespace secrelay
