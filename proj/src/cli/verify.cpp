#include "secrelay/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "secrelay/af_secrecy.hpp"
#include "secrelay/converse_bound.hpp"
#include "secrelay/df_secrecy.hpp"

namespace secrelay {

namespace {

double bits(double excess) { return 0.5 * std::log1p(excess) / std::numbers::ln2; }

class Suite {
 public:
  Suite(std::string name, double tolerance) {
    report_.name = std::move(name);
    report_.tolerance = tolerance;
  }

  void record(double residual) {
    ++report_.checks;
    if (!(residual <= report_.tolerance)) report_.passed = false;
    if (!(residual <= report_.worst)) report_.worst = residual;  // NaN sticks
  }

  const SuiteReport& report() const { return report_; }

 private:
  SuiteReport report_;
};

}  // namespace

ScenarioDraw draw_scenario(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> log_gain(-2.0, 2.0);
  std::uniform_real_distribution<double> mu_dist(1.0, 20.0);
  std::uniform_real_distribution<double> pr_dist(0.0, 50.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

  const double alpha = std::pow(10.0, log_gain(rng));
  const double beta = std::pow(10.0, log_gain(rng));
  const double mu = mu_dist(rng);
  const double p_r = pr_dist(rng);

  ScenarioDraw d;
  d.channel.h_r = Complex(std::sqrt(mu - 1.0), 0.0);
  d.channel.h_d = std::polar(std::sqrt(alpha), phase(rng));
  d.channel.h_e = std::polar(std::sqrt(beta), phase(rng));
  d.budget = PowerBudget{1.0, p_r};
  d.params = derive_params(d.channel, d.budget);
  return d;
}

std::vector<SuiteReport> run_verification(const VerifyOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Suite oracle_value("oracle_capacity", 1e-6);
  Suite oracle_argmax("oracle_argmax", 1e-6);
  Suite solver("solver_consistency", 1e-9);
  Suite tightness("converse_tightness", 1e-9);
  Suite identity("gain_ratio_identity", 1e-12);
  Suite df("df_structure", 1e-12);

  for (std::size_t k = 0; k < opts.draws; ++k) {
    const ScenarioDraw d = draw_scenario(rng);
    const DerivedParams& p = d.params;
    const double X = gain_domain(Strategy::AF, p, d.budget);
    const RatioQuadraticProblem prob = make_problem(p, X);

    // Closed-form capacity against the brute-force maximizer.
    const SecrecyResult af = af_secrecy_capacity(p, d.budget);
    const OracleResult oracle = grid_oracle(prob, opts.grid_points);
    const double injected = opts.inject_fault ? 1e-3 : 0.0;
    oracle_value.record(std::abs(af.capacity + injected - bits(oracle.excess)));
    oracle_argmax.record(std::abs(af.x_hat - oracle.x) / std::max(1.0, X));

    // Both parametric solver paths.
    if (p.alpha > p.beta && p.mu > 1.0 && X > 0.0) {
      for (const LambdaSolution& s : {lambda_hat_closed_form(prob), lambda_hat_bisection(prob)}) {
        const double upper = lambda_upper(prob);
        const bool in_bracket = s.lambda_hat >= 1.0 && s.lambda_hat < upper;
        solver.record(in_bracket ? 0.0 : 1.0);
        solver.record(std::abs(pi_of_lambda(prob, std::min(s.lambda_hat, upper))));
        solver.record(std::abs(eval_f(prob, s.x_hat) - s.lambda_hat));
      }
      solver.record(std::abs(lambda_hat_closed_form(prob).lambda_hat - lambda_hat_bisection(prob).lambda_hat));
      RatioQuadraticProblem knee = prob;
      knee.x_max = 1.0 / std::sqrt(p.alpha * p.beta * p.mu);
      if (std::isfinite(knee.x_max)) solver.record(std::abs(lambda_endpoint(knee) - lambda_interior(knee)));
    }

    // Genie-aided bound meets the achievable rate.
    const BoundEvaluation bound = genie_upper_bound(d.channel, p, d.budget, opts.grid_points);
    tightness.record(std::abs(bound.bound_value - af.capacity));

    // Identity that collapses the bound, on an ordered copy of (alpha, beta).
    if (p.alpha != p.beta) {
      const DerivedParams ordered{std::max(p.alpha, p.beta), std::min(p.alpha, p.beta), p.mu};
      const double x = 10.0 * unit(rng);
      const double lhs = (1.0 + ordered.alpha * ordered.mu * x) / (1.0 + ordered.alpha * x);
      identity.record(gain_ratio_identity_residual(ordered, x) / lhs);
    }

    // DF: cut-set structure, power saving, and dominance over AF.
    const SecrecyResult dfr = df_secrecy_capacity(p, d.budget);
    df.record(std::max(0.0, af.capacity - dfr.capacity));
    const double cut = 0.5 * std::min(source_relay_capacity(p), second_hop_secrecy_capacity(p, d.budget));
    df.record(std::abs(dfr.capacity - cut));
    if (p.alpha > p.beta && dfr.x_hat < d.budget.p_r) {
      const double hop = std::log2((1.0 + p.alpha * dfr.x_hat) / (1.0 + p.beta * dfr.x_hat));
      df.record(std::abs(hop - std::log2(p.mu)));
    }
  }

  return {oracle_value.report(), oracle_argmax.report(), solver.report(),
          tightness.report(),    identity.report(),      df.report()};
}

}  // namespace secrelay
