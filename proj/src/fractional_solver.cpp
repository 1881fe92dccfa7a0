#include "secrelay/fractional_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "secrelay/errors.hpp"

namespace secrelay {

namespace {

// Polynomial coefficients shared by f and F.
struct Coefficients {
  double quad;  // alpha beta mu
  double num1;  // alpha mu + beta
  double den1;  // alpha + beta mu
};

Coefficients coefficients(const RatioQuadraticProblem& p) {
  return {p.alpha * p.beta * p.mu, p.alpha * p.mu + p.beta, p.alpha + p.beta * p.mu};
}

bool degenerate(const RatioQuadraticProblem& p) { return !(p.alpha > p.beta) || p.mu == 1.0 || p.x_max == 0.0; }

void require_bracket(const RatioQuadraticProblem& prob, double lambda) {
  if (!(prob.alpha > prob.beta) || !(prob.mu > 1.0)) {
    throw DomainError("lambda parametrization requires alpha > beta and mu > 1");
  }
  const double upper = lambda_upper(prob);
  if (!(lambda >= 1.0 && lambda <= upper)) {
    throw DomainError("lambda=" + std::to_string(lambda) + " outside [1, " + std::to_string(upper) + "]");
  }
}

OracleResult pick(double x, double excess) { return {x, 1.0 + excess, excess}; }

}  // namespace

const char* to_string(SolverBranch branch) {
  switch (branch) {
    case SolverBranch::Endpoint:
      return "endpoint";
    case SolverBranch::Interior:
      return "interior";
    case SolverBranch::Degenerate:
      return "degenerate";
  }
  return "?";
}

RatioQuadraticProblem make_problem(const DerivedParams& params, double x_max) {
  RatioQuadraticProblem prob{params.alpha, params.beta, params.mu, x_max};
  validate(prob);
  return prob;
}

void validate(const RatioQuadraticProblem& prob) {
  validate(DerivedParams{prob.alpha, prob.beta, prob.mu});
  if (!std::isfinite(prob.x_max) || prob.x_max < 0.0) throw InvalidInput("x_max must be finite and >= 0");
}

double eval_f(const RatioQuadraticProblem& prob, double x) {
  const Coefficients k = coefficients(prob);
  return (k.quad * x * x + k.num1 * x + 1.0) / (k.quad * x * x + k.den1 * x + 1.0);
}

double eval_F(const RatioQuadraticProblem& prob, double x, double lambda) {
  const Coefficients k = coefficients(prob);
  return k.quad * (1.0 - lambda) * x * x + (k.num1 - lambda * k.den1) * x + (1.0 - lambda);
}

double lambda_upper(const RatioQuadraticProblem& prob) {
  const Coefficients k = coefficients(prob);
  return k.num1 / k.den1;
}

double branch_threshold(const RatioQuadraticProblem& prob) {
  const Coefficients k = coefficients(prob);
  const double t = 2.0 * k.quad * prob.x_max;
  return (t + k.num1) / (t + k.den1);
}

double discriminant(const RatioQuadraticProblem& prob) {
  const Coefficients k = coefficients(prob);
  const double lin = 8.0 * k.quad - 2.0 * k.den1 * k.num1;
  const double d = prob.alpha - prob.beta * prob.mu;
  const double e = prob.alpha * prob.mu - prob.beta;
  return lin * lin - 4.0 * d * d * e * e;
}

double x_of_lambda(const RatioQuadraticProblem& prob, double lambda) {
  require_bracket(prob, lambda);
  if (lambda <= branch_threshold(prob)) return prob.x_max;
  // Stationary point of the concave quadratic F(., lambda).
  const Coefficients k = coefficients(prob);
  const double x = (lambda * k.den1 - k.num1) / (2.0 * k.quad * (1.0 - lambda));
  return std::clamp(x, 0.0, prob.x_max);
}

double pi_of_lambda(const RatioQuadraticProblem& prob, double lambda) {
  require_bracket(prob, lambda);
  const Coefficients k = coefficients(prob);
  const double X = prob.x_max;
  if (lambda <= branch_threshold(prob)) {
    return (-k.quad * X * X - k.den1 * X - 1.0) * lambda + k.quad * X * X + k.num1 * X + 1.0;
  }
  const double g = lambda * k.den1 - k.num1;
  return g * g / (4.0 * k.quad * (lambda - 1.0)) - lambda + 1.0;
}

double lambda_endpoint(const RatioQuadraticProblem& prob) {
  const Coefficients k = coefficients(prob);
  const double X = prob.x_max;
  return (k.quad * X * X + k.num1 * X + 1.0) / (k.quad * X * X + k.den1 * X + 1.0);
}

double lambda_interior(const RatioQuadraticProblem& prob) {
  // The textbook root (-B - sqrt(D)) / (2A) divides by A = (alpha - beta mu)^2,
  // which vanishes at alpha == beta mu, and cancels badly near it. Use the
  // conjugate form 2C / (-B + sqrt(D)) with the factorizations
  //   -B       = 2 (mu (alpha - beta)^2 + alpha beta (mu - 1)^2)
  //   sqrt(D)  = 4 (mu - 1)(alpha - beta) sqrt(alpha beta mu)
  // whose terms are all nonnegative when alpha > beta, mu >= 1.
  const double a = prob.alpha;
  const double b = prob.beta;
  const double mu = prob.mu;
  const double gap = a - b;
  const double minus_lin = 2.0 * (mu * gap * gap + a * b * (mu - 1.0) * (mu - 1.0));
  const double sqrt_disc = 4.0 * (mu - 1.0) * gap * std::sqrt(a * b * mu);
  const double e = a * mu - b;
  return 2.0 * e * e / (minus_lin + sqrt_disc);
}

LambdaSolution lambda_hat_closed_form(const RatioQuadraticProblem& prob) {
  validate(prob);
  if (degenerate(prob)) return {1.0, 0.0, SolverBranch::Degenerate};
  const double quad = prob.alpha * prob.beta * prob.mu;
  const double x_peak = 1.0 / std::sqrt(quad);  // +inf when beta == 0
  if (prob.x_max <= x_peak) return {lambda_endpoint(prob), prob.x_max, SolverBranch::Endpoint};
  return {lambda_interior(prob), x_peak, SolverBranch::Interior};
}

LambdaSolution lambda_hat_bisection(const RatioQuadraticProblem& prob, double tol) {
  validate(prob);
  if (!(tol > 0.0)) throw InvalidInput("bisection tolerance must be positive");
  if (degenerate(prob)) return {1.0, 0.0, SolverBranch::Degenerate};

  double lo = 1.0;
  double hi = lambda_upper(prob);
  if (!(pi_of_lambda(prob, lo) > 0.0) || !(pi_of_lambda(prob, hi) < 0.0)) {
    throw InternalConsistency("pi(lambda) does not change sign over [1, (alpha mu + beta)/(alpha + beta mu)]");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (pi_of_lambda(prob, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double lambda = 0.5 * (lo + hi);
  const SolverBranch branch = lambda <= branch_threshold(prob) ? SolverBranch::Endpoint : SolverBranch::Interior;
  return {lambda, x_of_lambda(prob, lambda), branch};
}

OracleResult maximize_excess(const kernels::RatioExcess& excess, double x_max, std::size_t n_points, double width) {
  if (n_points < 2) throw InvalidInput("grid needs at least 2 points");
  if (!std::isfinite(x_max) || x_max < 0.0) throw InvalidInput("x_max must be finite and >= 0");
  if (x_max == 0.0) return pick(0.0, kernels::eval_excess(excess, 0.0));

  const std::size_t last = n_points - 1;
  const double step = x_max / static_cast<double>(last);
  kernels::GridMax best = kernels::grid_argmax(excess, step, last);
  if (const double v_end = kernels::eval_excess(excess, x_max); v_end > best.value) best = {last, v_end};

  const auto grid_x = [&](std::size_t i) { return i == last ? x_max : static_cast<double>(i) * step; };
  double best_x = grid_x(best.index);
  double best_v = best.value;

  // Golden-section refinement on the two cells adjacent to the grid optimum.
  double lo = best.index == 0 ? 0.0 : grid_x(best.index - 1);
  double hi = best.index == last ? x_max : grid_x(best.index + 1);
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  const auto g = [&](double x) { return kernels::eval_excess(excess, x); };

  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double gc = g(c);
  double gd = g(d);
  for (int iter = 0; iter < 400 && hi - lo > width; ++iter) {
    if (gc >= gd) {
      hi = d;
      d = c;
      gd = gc;
      c = hi - inv_phi * (hi - lo);
      gc = g(c);
    } else {
      lo = c;
      c = d;
      gc = gd;
      d = lo + inv_phi * (hi - lo);
      gd = g(d);
    }
  }
  const auto consider = [&](double x, double v) {
    if (v > best_v || (v == best_v && x < best_x)) {
      best_x = x;
      best_v = v;
    }
  };
  consider(c, gc);
  consider(d, gd);
  return pick(best_x, best_v);
}

kernels::RatioExcess f_excess(const RatioQuadraticProblem& prob) {
  const Coefficients k = coefficients(prob);
  kernels::RatioExcess r;
  r.e1 = (prob.alpha - prob.beta) * (prob.mu - 1.0);
  r.d2 = k.quad;
  r.d1 = k.den1;
  r.d0 = 1.0;
  return r;
}

OracleResult grid_oracle(const RatioQuadraticProblem& prob, std::size_t n_points) {
  validate(prob);
  return maximize_excess(f_excess(prob), prob.x_max, n_points);
}

}  // namespace secrelay
