#pragma once
// Genie-aided converse for AF relaying.
//
// Handing the eavesdropper's observation y_e to the destination bounds the
// secrecy capacity by 1/2 max_x I(x_s; y_d | y_e). The bound holds for any
// joint law of the destination/eavesdropper noises (z_d, z_e) with unit
// variances and cross-correlation phi, |phi| <= 1. For Gaussian input,
//
//   I(x_s; y_d | y_e) = log2(pi e lambda_lmmse) - h(h_d w z_r + z_d | h_e w z_r + z_e)
//
// where lambda_lmmse is the error variance of the linear estimate of y_d from
// y_e. With the right choice of phi the maximized bound meets the achievable
// rate, which is what makes the AF closed form a capacity.
//
// Internally every expression is written through
//   A = 1 - |phi|^2   and   R = |h_d - conj(phi) h_e|^2,
// e.g. |K_z| = A (1 + beta x) + R x; both are sums of nonnegative terms, so
// nothing cancels as |phi| -> 1 or as h_d -> conj(phi) h_e.
//
// Functions taking both a ChannelRealization and DerivedParams read the gains
// h_d, h_e from the realization and only mu from the parameters.

#include <cstddef>

#include "secrelay/channel_model.hpp"
#include "secrelay/fractional_solver.hpp"

namespace secrelay {

struct NoiseCorrelation {
  Complex phi{};
};

/// PsdViolation when |phi| > 1 (beyond a few ulps of rounding).
void validate(const NoiseCorrelation& corr);

struct BoundEvaluation {
  double bound_value = 0.0;  // bits per channel use, half-duplex convention
  double x_arg = 0.0;        // maximizing |omega|^2
  NoiseCorrelation phi_used;
};

/// Var(y_d) - |Cov(y_d, y_e)|^2 / Var(y_e) under the AF observation model.
double lmmse_error_variance(const ChannelRealization& ch, const DerivedParams& params, double x,
                            const NoiseCorrelation& corr);

/// Determinant of the covariance of (h_d w z_r + z_d, h_e w z_r + z_e).
double noise_covariance_det(const ChannelRealization& ch, double x, const NoiseCorrelation& corr);

/// h(h_d w z_r + z_d | h_e w z_r + z_e) in bits, circularly-symmetric
/// complex Gaussian convention log2(pi e sigma^2).
double conditional_noise_entropy(const ChannelRealization& ch, const DerivedParams& params, double x,
                                 const NoiseCorrelation& corr);

/// conj(h_d / h_e) when alpha <= beta, h_e / h_d otherwise; 0 for an all-zero
/// second hop. Always |phi| <= 1.
NoiseCorrelation select_phi(const ChannelRealization& ch, const DerivedParams& params);

/// 1/2 I(x_s; y_d | y_e) at gain x for Gaussian input.
double bound_objective(const ChannelRealization& ch, const DerivedParams& params, double x,
                       const NoiseCorrelation& corr);

/// Maximum of bound_objective over [0, P_r / mu] via the grid oracle.
BoundEvaluation genie_upper_bound(const ChannelRealization& ch, const DerivedParams& params, const PowerBudget& pb,
                                  const NoiseCorrelation& corr, std::size_t n_points = kDefaultGridPoints);
/// Same with phi from select_phi.
BoundEvaluation genie_upper_bound(const ChannelRealization& ch, const DerivedParams& params, const PowerBudget& pb,
                                  std::size_t n_points = kDefaultGridPoints);

/// |lhs - rhs| of
///   (1 + alpha mu x) / (1 + alpha x)
///     = (1 - beta/alpha + (alpha - beta) mu x) / (1 - beta/alpha + (alpha - beta) x),
/// the identity that collapses the bound onto the achievable objective.
/// DomainError for alpha == 0 or alpha == beta.
double gain_ratio_identity_residual(const DerivedParams& params, double x);

}  // namespace secrelay
