#include <doctest.h>

#include <cmath>
#include <numbers>

#include "secrelay/af_secrecy.hpp"
#include "secrelay/converse_bound.hpp"
#include "secrelay/errors.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace secrelay;

namespace {

// h_d = 2, h_e = 1, mu = 2 realized with P_s = 1, h_r = 1.
const ChannelRealization kReal{{1.0, 0.0}, {2.0, 0.0}, {1.0, 0.0}};
const DerivedParams kParams{4.0, 1.0, 2.0};

}  // namespace

TEST_CASE("LMMSE error variance") {
  const Complex phi(0.5, 0.3);
  CHECK(lmmse_error_variance(kReal, kParams, 0.0, {phi}) == doctest::Approx(1.0 - std::norm(phi)));
  CHECK(lmmse_error_variance(kReal, kParams, 0.3, {}) == doctest::Approx((1.0 + 5.0 * 2.0 * 0.3) / (1.0 + 2.0 * 0.3)));
  CHECK(lmmse_error_variance(kReal, kParams, 0.25, {0.5}) == doctest::Approx(1.5).epsilon(1e-15));

  const auto est = testing::mc_lmmse_error_variance(kReal, 1.0, 0.25, {0.5, 0.0}, 1'000'000, 21);
  CHECK(std::abs(est.value - 1.5) <= 5.0 * est.std_error);
}

TEST_CASE("conditional noise entropy") {
  const double pie = std::numbers::pi * std::numbers::e;
  CHECK(conditional_noise_entropy(kReal, kParams, 0.0, {0.5}) == doctest::Approx(std::log2(pie * 0.75)));
  CHECK(conditional_noise_entropy(kReal, kParams, 0.0, {}) == doctest::Approx(std::log2(pie)));
  const double det = testing::det_from_entries(kReal.h_d, kReal.h_e, 0.25, 0.5);
  CHECK(noise_covariance_det(kReal, 0.25, {0.5}) == doctest::Approx(det).epsilon(1e-15));
  CHECK(conditional_noise_entropy(kReal, kParams, 0.25, {0.5}) == doctest::Approx(std::log2(pie * det / 1.25)));
  CHECK(conditional_noise_entropy(kReal, kParams, 0.25, {0.5}) == doctest::Approx(std::log2(pie * 1.2)));
}

TEST_CASE("correlation choice") {
  const ChannelRealization weak{{1.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
  CHECK(select_phi(weak, {1.0, 4.0, 2.0}).phi == Complex(0.5, 0.0));
  CHECK(select_phi(kReal, kParams).phi == Complex(0.5, 0.0));
  const ChannelRealization silent{{1.0, 0.0}, {2.0, 0.0}, {0.0, 0.0}};
  CHECK(select_phi(silent, {4.0, 0.0, 2.0}).phi == Complex(0.0, 0.0));
  CHECK(select_phi(ChannelRealization{}, DerivedParams{}).phi == Complex(0.0, 0.0));
}

TEST_CASE("bound objective") {
  const auto phi = select_phi(kReal, kParams);
  CHECK(bound_objective(kReal, kParams, 0.0, {Complex(0.3, -0.4)}) == doctest::Approx(0.0));
  CHECK(bound_objective(kReal, kParams, 0.25, phi) == doctest::Approx(0.5 * std::log2(1.25)).epsilon(1e-15));
  CHECK(bound_objective(kReal, kParams, 0.25, phi) ==
        doctest::Approx(af_achievable_rate_at(kParams, {1.0, 1.0}, 0.25)).epsilon(1e-15));

  const ChannelRealization weak{{1.0, 0.0}, {1.0, 0.0}, {0.0, 2.0}};
  const DerivedParams wp{1.0, 4.0, 2.0};
  for (const double x : {0.0, 0.1, 1.0, 10.0}) CHECK(bound_objective(weak, wp, x, select_phi(weak, wp)) == 0.0);
}

TEST_CASE("genie-aided bound examples") {
  const ChannelRealization weak{{1.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
  CHECK(genie_upper_bound(weak, {1.0, 4.0, 2.0}, {1.0, 5.0}).bound_value == 0.0);

  const auto a = genie_upper_bound(kReal, kParams, {1.0, 0.5});
  CHECK(a.bound_value == doctest::Approx(af_secrecy_capacity(kParams, {1.0, 0.5}).capacity).epsilon(1e-12));
  CHECK(a.bound_value == doctest::Approx(0.160964).epsilon(1e-6));
  CHECK(a.x_arg == doctest::Approx(0.25));
  const auto b = genie_upper_bound(kReal, kParams, {1.0, 10.0});
  CHECK(b.bound_value == doctest::Approx(af_secrecy_capacity(kParams, {1.0, 10.0}).capacity).epsilon(1e-12));
  CHECK(b.bound_value == doctest::Approx(0.16520).epsilon(1e-4));
  CHECK(b.phi_used.phi == Complex(0.5, 0.0));
}

TEST_CASE("identity collapsing the bound") {
  CHECK(gain_ratio_identity_residual({4.0, 1.0, 2.0}, 0.0) == 0.0);
  CHECK(gain_ratio_identity_residual({4.0, 1.0, 2.0}, 0.7) <= 1e-12);
  CHECK(gain_ratio_identity_residual({4.0, 1.0, 1.0}, 3.0) == 0.0);
  CHECK_THROWS_AS(gain_ratio_identity_residual({0.0, 1.0, 2.0}, 0.5), DomainError);
  CHECK_THROWS_AS(gain_ratio_identity_residual({2.0, 2.0, 2.0}, 0.5), DomainError);
}

TEST_CASE("positive semidefiniteness gate") {
  const NoiseCorrelation bad{Complex(0.8, 0.7)};
  CHECK_THROWS_AS(validate(bad), PsdViolation);
  CHECK_THROWS_AS(lmmse_error_variance(kReal, kParams, 0.1, bad), PsdViolation);
  CHECK_THROWS_AS(conditional_noise_entropy(kReal, kParams, 0.1, bad), PsdViolation);
  CHECK_THROWS_AS(bound_objective(kReal, kParams, 0.1, bad), PsdViolation);
  CHECK_NOTHROW(validate(NoiseCorrelation{std::polar(1.0, 0.7)}));
}

TEST_CASE("singular noise covariance") {
  // |phi| = 1 makes z_d a copy of z_e, so with no relay signal K_z is singular.
  CHECK_THROWS_AS(conditional_noise_entropy(kReal, kParams, 0.0, {1.0}), DegenerateDistribution);
}

TEST_CASE("property: the bound dominates the achievable rate at any gain and correlation") {
  testing::Gen g(501);
  for (int i = 0; i < 200; ++i) {
    const DerivedParams p = g.params();
    const ChannelRealization ch = g.channel_for(p);
    const PowerBudget pb{1.0, g.uniform(0.0, 50.0)};
    for (int k = 0; k < 100; ++k) {
      const double x = g.uniform(0.0, pb.p_r / p.mu);
      const NoiseCorrelation corr{g.correlation()};
      double bound = 0.0;
      try {
        bound = bound_objective(ch, p, x, corr);
      } catch (const DegenerateDistribution&) {
        continue;  // perfectly correlated noises and aligned gains
      }
      CHECK(bound >= af_achievable_rate_at(p, pb, x) - 1e-9);
    }
  }
}

TEST_CASE("property: the bound meets the capacity") {
  testing::Gen g(502);
  for (int i = 0; i < 300; ++i) {
    const DerivedParams p = g.params();
    const ChannelRealization ch = g.channel_for(p);
    const PowerBudget pb{1.0, g.uniform(0.0, 50.0)};
    const auto bound = genie_upper_bound(ch, derive_params(ch, pb), pb, 100'000);
    INFO("alpha=" << p.alpha << " beta=" << p.beta << " mu=" << p.mu << " P_r=" << pb.p_r);
    CHECK(std::abs(bound.bound_value - af_secrecy_capacity(derive_params(ch, pb), pb).capacity) <= 1e-9);
    if (p.alpha <= p.beta) CHECK(bound.bound_value == 0.0);
  }
}

TEST_CASE("property: bound objective is the log ratio of its two variances") {
  testing::Gen g(505);
  for (int i = 0; i < 2000; ++i) {
    const DerivedParams p = g.params();
    const ChannelRealization ch = g.channel_for(p);
    const double x = g.uniform(1e-3, 10.0);
    const NoiseCorrelation corr{g.phase_scaled(std::sqrt(g.uniform(0.0, 0.999)))};
    const double lmmse = lmmse_error_variance(ch, p, x, corr);
    const double cond = testing::det_from_entries(ch.h_d, ch.h_e, x, corr.phi) / (1.0 + p.beta * x);
    const double direct = 0.5 * std::log2(lmmse / cond);
    CHECK(std::abs(bound_objective(ch, p, x, corr) - direct) <= 1e-9 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("property: noise covariance determinant and error variance") {
  testing::Gen g(503);
  for (int i = 0; i < 2000; ++i) {
    const DerivedParams p = g.params();
    const ChannelRealization ch = g.channel_for(p);
    const double x = g.uniform(0.0, 10.0);
    const NoiseCorrelation corr{g.correlation()};
    const double det = noise_covariance_det(ch, x, corr);
    CHECK(det >= 0.0);
    const double ref = testing::det_from_entries(ch.h_d, ch.h_e, x, corr.phi);
    const double scale = (p.alpha * x + 1.0) * (p.beta * x + 1.0);
    CHECK(std::abs(det - ref) <= 1e-12 * scale);
    CHECK(lmmse_error_variance(ch, p, x, corr) >= 0.0);
  }
}

TEST_CASE("property: identity holds to relative precision") {
  testing::Gen g(504);
  for (int i = 0; i < 10'000; ++i) {
    DerivedParams p = g.positive_params();
    p.mu = g.uniform(1.0, 20.0);
    const double x = g.uniform(0.0, 10.0);
    const double lhs = (1.0 + p.alpha * p.mu * x) / (1.0 + p.alpha * x);
    CHECK(gain_ratio_identity_residual(p, x) <= 1e-12 * lhs);
  }
}
