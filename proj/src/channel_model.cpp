#include "secrelay/channel_model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "secrelay/errors.hpp"

namespace secrelay {

namespace {

bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

std::string_view to_string(Strategy s) { return s == Strategy::AF ? "af" : "df"; }

Strategy parse_strategy(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "af") return Strategy::AF;
  if (lower == "df") return Strategy::DF;
  throw InvalidInput("unknown strategy '" + std::string(text) + "' (expected af or df)");
}

void validate(const ChannelRealization& ch) {
  if (!finite(ch.h_r) || !finite(ch.h_d) || !finite(ch.h_e)) {
    throw InvalidInput("channel gains must be finite");
  }
}

void validate(const PowerBudget& pb) {
  if (!std::isfinite(pb.p_s) || !std::isfinite(pb.p_r)) throw InvalidInput("powers must be finite");
  if (pb.p_s < 0.0 || pb.p_r < 0.0) throw InvalidInput("powers must be nonnegative");
}

void validate(const DerivedParams& params) {
  if (!std::isfinite(params.alpha) || !std::isfinite(params.beta) || !std::isfinite(params.mu)) {
    throw InvalidInput("alpha, beta and mu must be finite");
  }
  if (params.alpha < 0.0 || params.beta < 0.0) throw InvalidInput("alpha and beta must be nonnegative");
  if (params.mu < 1.0) throw InvalidInput("mu must be >= 1");
}

DerivedParams derive_params(const ChannelRealization& ch, const PowerBudget& pb) {
  validate(ch);
  validate(pb);
  return DerivedParams{std::norm(ch.h_d), std::norm(ch.h_e), 1.0 + pb.p_s * std::norm(ch.h_r)};
}

double gain_domain(Strategy strategy, const DerivedParams& params, const PowerBudget& pb) {
  return strategy == Strategy::AF ? pb.p_r / params.mu : pb.p_r;
}

double db_to_linear(double p_db) { return std::pow(10.0, p_db / 10.0); }

}  // namespace secrelay
