#pragma once
// Maximization of the ratio of two quadratics
//
//   f(x) = (c x^2 + a x + 1) / (c x^2 + b x + 1),   0 <= x <= X,
//   c = alpha beta mu,  a = alpha mu + beta,  b = alpha + beta mu,
//
// by the parametric method: the optimal ratio lambda_hat is the unique root of
//
//   pi(lambda) = max_{0<=x<=X} F(x, lambda),   F = numerator - lambda * denominator.
//
// When alpha > beta and mu > 1 the root lies in [1, a/b) and pi is strictly
// decreasing there. Two solver paths are provided (closed-form root selection
// and bisection) plus a brute-force grid/golden-section oracle that knows
// nothing about lambda.

#include <cstddef>

#include "secrelay/channel_model.hpp"
#include "secrelay/kernels/kernels.hpp"

namespace secrelay {

struct RatioQuadraticProblem {
  double alpha = 0.0;
  double beta = 0.0;
  double mu = 1.0;
  double x_max = 0.0;
};

RatioQuadraticProblem make_problem(const DerivedParams& params, double x_max);
void validate(const RatioQuadraticProblem& prob);

enum class SolverBranch {
  Endpoint,  // optimum at x = X
  Interior,  // optimum at the stationary point of F
  Degenerate // alpha <= beta, mu == 1 or X == 0: lambda_hat = 1, x_hat = 0
};

const char* to_string(SolverBranch branch);

struct LambdaSolution {
  double lambda_hat = 1.0;
  double x_hat = 0.0;
  SolverBranch branch = SolverBranch::Degenerate;
};

struct OracleResult {
  double x = 0.0;       // maximizer
  double value = 1.0;   // maximum of the ratio
  double excess = 0.0;  // value - 1 at full relative precision
};

inline constexpr double kBisectionTol = 1e-12;
inline constexpr double kGoldenWidth = 1e-12;
inline constexpr std::size_t kDefaultGridPoints = 1'000'000;

double eval_f(const RatioQuadraticProblem& prob, double x);
double eval_F(const RatioQuadraticProblem& prob, double x, double lambda);

/// (alpha mu + beta) / (alpha + beta mu): supremum of f over x >= 0.
double lambda_upper(const RatioQuadraticProblem& prob);
/// Largest lambda for which F(., lambda) is maximized at the endpoint X.
double branch_threshold(const RatioQuadraticProblem& prob);
/// Discriminant of the quadratic whose smaller root is the interior-branch
/// lambda, in its expanded textbook form.
double discriminant(const RatioQuadraticProblem& prob);

// Both require alpha > beta, mu > 1 and lambda in [1, lambda_upper];
// DomainError otherwise.
double x_of_lambda(const RatioQuadraticProblem& prob, double lambda);
double pi_of_lambda(const RatioQuadraticProblem& prob, double lambda);

// Endpoint-branch root (X <= 1/sqrt(alpha beta mu)).
double lambda_endpoint(const RatioQuadraticProblem& prob);
// Interior-branch root: smaller root of
//   (alpha - beta mu)^2 l^2 + (8 alpha beta mu - 2 (alpha + beta mu)(alpha mu + beta)) l
//     + (alpha mu - beta)^2 = 0.
double lambda_interior(const RatioQuadraticProblem& prob);

LambdaSolution lambda_hat_closed_form(const RatioQuadraticProblem& prob);
LambdaSolution lambda_hat_bisection(const RatioQuadraticProblem& prob, double tol = kBisectionTol);

/// Uniform grid of n_points over [0, x_max] followed by golden-section
/// refinement around the best grid point. Ties go to the smallest x.
OracleResult maximize_excess(const kernels::RatioExcess& excess, double x_max,
                             std::size_t n_points = kDefaultGridPoints, double width = kGoldenWidth);

/// maximize_excess applied to f.
OracleResult grid_oracle(const RatioQuadraticProblem& prob, std::size_t n_points = kDefaultGridPoints);

/// f - 1 = (alpha - beta)(mu - 1) x / ((1 + alpha x)(1 + beta mu x)) as kernel coefficients.
kernels::RatioExcess f_excess(const RatioQuadraticProblem& prob);

}  // namespace secrelay
