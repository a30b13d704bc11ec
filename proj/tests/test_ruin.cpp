#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "igsub/error.hpp"
#include "igsub/ruin.hpp"

using namespace igsub;

namespace {

RiskModelConfig reference(double c = 1.0, double u = 0.0) {
  return {c, u, ClaimDistribution::exponential(1.0),
          ProcessSpec{SubordinatorSpec::ting(0.5, 1.0), 1.0}};
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Claims, ExponentialLaw) {
  const auto F = ClaimDistribution::exponential(2.0);
  EXPECT_EQ(F.cdf(-1.0), 0.0);
  EXPECT_NEAR(F.cdf(2.0), 1.0 - std::exp(-1.0), 1e-15);
  EXPECT_NEAR(F.limited_mean(2.0), 2.0 * (1.0 - std::exp(-1.0)), 1e-15);
  EXPECT_EQ(F.effective_upper(), 100.0);
  EXPECT_THROW(ClaimDistribution::exponential(0.0), DomainError);
}

TEST(Claims, EmpiricalLaw) {
  const auto F = ClaimDistribution::empirical({2.0, 0.5, 1.5});
  EXPECT_EQ(F.values(), (std::vector<double>{0.5, 1.5, 2.0}));
  EXPECT_DOUBLE_EQ(F.mean(), 4.0 / 3.0);
  EXPECT_DOUBLE_EQ(F.cdf(0.49), 0.0);
  EXPECT_DOUBLE_EQ(F.cdf(1.5), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(F.limited_mean(1.0), 2.5 / 3.0);
  RandomSource rng(1, 0);
  for (int i = 0; i < 100; ++i) {
    const double v = F.sample(rng);
    EXPECT_TRUE(v == 0.5 || v == 1.5 || v == 2.0);
  }
  EXPECT_THROW(ClaimDistribution::empirical({}), DomainError);
  EXPECT_THROW(ClaimDistribution::empirical({1.0, -1.0}), DomainError);
}

TEST(RiskModel, Validation) {
  auto cfg = reference();
  cfg.process = ProcessSpec{SubordinatorSpec::ing(0.5), 1.0};
  EXPECT_THROW(cfg.validate(), DomainError);
  EXPECT_THROW(reference(0.0).validate(), DomainError);
  EXPECT_THROW(reference(1.0, -1.0).validate(), DomainError);
}

TEST(PremiumLoading, ReferenceValueAndAffineInC) {
  EXPECT_LT(rel(premium_loading(reference(), 1.0), 4.43656365691809047072057494271), 1e-13);
  // ρ + 1 is proportional to c and independent of t.
  const double r1 = premium_loading(reference(1.0), 1.0);
  const double r3 = premium_loading(reference(3.0), 2.5);
  EXPECT_NEAR(r3 + 1.0, 3.0 * (r1 + 1.0), 1e-12);
}

TEST(Horizon, DefaultRule) {
  const double claim_rate = 0.5 * std::exp(-1.0);
  EXPECT_NEAR(default_horizon(reference()), 50.0 / claim_rate, 1e-9);
  const double drift = 1.0 - claim_rate;
  EXPECT_NEAR(default_horizon(reference(1.0, 10.0)), 50.0 / claim_rate * 10.0 / drift, 1e-8);
  auto cfg = reference();
  cfg.horizon = 7.0;
  EXPECT_EQ(effective_horizon(cfg), 7.0);
}

TEST(ZeroCapital, AnalyticReferenceValues) {
  EXPECT_LT(rel(analytic_psi0(reference()), 0.0990792336601721428553032690281), 1e-13);
  EXPECT_LT(rel(analytic_G0(reference(), 1.0), 0.0626300205495732571373168823279), 1e-13);
  EXPECT_EQ(analytic_G0(reference(), -1.0), 0.0);
}

TEST(ZeroCapital, AnalyticAgreesWithQuadrature) {
  for (double y : {0.1, 1.0, 5.0, 50.0})
    EXPECT_NEAR(analytic_G0(reference(), y), numeric_G0(reference(), y), 1e-10) << y;
  EXPECT_NEAR(analytic_psi0(reference()), numeric_psi0(reference()), 1e-10);
  auto cfg = reference();
  cfg.claims = ClaimDistribution::empirical({0.5, 1.5, 2.0, 0.25});
  for (double y : {0.1, 0.5, 1.0, 3.0})
    EXPECT_NEAR(analytic_G0(cfg, y), numeric_G0(cfg, y), 1e-10) << y;
  EXPECT_NEAR(analytic_psi0(cfg), numeric_psi0(cfg), 1e-10);
}

TEST(ZeroCapital, GRisesTowardPsi) {
  double prev = 0.0;
  for (double y = 0.0; y <= 50.0; y += 0.5) {
    const double g = analytic_G0(reference(), y);
    EXPECT_GE(g, prev);
    prev = g;
  }
  EXPECT_NEAR(analytic_G0(reference(), 50.0), analytic_psi0(reference()), 1e-15);
}

TEST(ZeroCapital, RateConventions) {
  auto cfg = reference();
  const double with_alpha = ruin_exit_rate(cfg);
  cfg.rate_convention = RateConvention::WithoutAlpha;
  EXPECT_NEAR(ruin_exit_rate(cfg), 2.0 * with_alpha, 1e-15);
}

TEST(ZeroCapital, RejectsProbabilitiesAboveOne) {
  EXPECT_THROW(analytic_psi0(reference(0.05)), DomainError);
  EXPECT_THROW(numeric_psi0(reference(0.05)), DomainError);
}

TEST(Surplus, ZeroClaimsNeverRuin) {
  auto cfg = reference();
  cfg.claims = ClaimDistribution::empirical({0.0});
  cfg.horizon = 200.0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    RandomSource rng(3, i);
    EXPECT_FALSE(simulate_surplus(rng, cfg).ruined);
  }
}

TEST(Surplus, RecordsRuinTimeAndDeficit) {
  ClaimHistory h;
  h.times = {1.0, 2.0, 4.0};
  h.cumulative_claims = {0.5, 3.0, 10.0};
  const auto r = h.evaluate(0.5, 1.0);
  ASSERT_TRUE(r.ruined);
  EXPECT_EQ(*r.ruin_time, 2.0);
  EXPECT_DOUBLE_EQ(*r.deficit, 0.5);
  EXPECT_FALSE(h.evaluate(0.0, 3.0).ruined);
}

TEST(Surplus, SameSeedIsReproducible) {
  auto cfg = reference();
  cfg.horizon = 300.0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    RandomSource a(5, i), b(5, i);
    EXPECT_EQ(simulate_surplus(a, cfg), simulate_surplus(b, cfg));
  }
  cfg.n_paths = 500;
  const auto e1 = estimate_ruin_joint(cfg, 1.0);
  const auto e2 = estimate_ruin_joint(cfg, 1.0);
  EXPECT_EQ(e1.estimate, e2.estimate);
  EXPECT_EQ(e1.psi_hat, e2.psi_hat);
}

TEST(Surplus, LongerHorizonExtendsTheSameHistory) {
  auto a = reference();
  a.horizon = 100.0;
  auto b = a;
  b.horizon = 400.0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    RandomSource ra(6, i), rb(6, i);
    const auto ha = simulate_claims(ra, a);
    const auto hb = simulate_claims(rb, b);
    ASSERT_LE(ha.times.size(), hb.times.size());
    for (std::size_t j = 0; j < ha.times.size(); ++j) {
      EXPECT_EQ(ha.times[j], hb.times[j]);
      EXPECT_EQ(ha.cumulative_claims[j], hb.cumulative_claims[j]);
    }
  }
}

TEST(Surplus, CommonRandomNumbersAreMonotoneInPremium) {
  auto cfg = reference();
  cfg.horizon = 300.0;
  for (std::uint64_t i = 0; i < 300; ++i) {
    RandomSource rng(7, i);
    const auto h = simulate_claims(rng, cfg);
    bool prev = true;
    for (double c : {0.5, 1.0, 2.0, 4.0}) {
      const bool ruined = h.evaluate(0.0, c).ruined;
      EXPECT_TRUE(prev || !ruined);
      prev = ruined;
    }
  }
}

TEST(JointEstimate, LargeDeficitBoundGivesRuinProbability) {
  auto cfg = reference();
  cfg.n_paths = 2000;
  cfg.horizon = 200.0;
  const auto e = estimate_ruin_joint(cfg, 1e6);
  EXPECT_EQ(e.estimate, e.psi_hat);
  EXPECT_GT(e.psi_hat, 0.0);
  EXPECT_EQ(e.horizon, 200.0);
  EXPECT_EQ(e.n_paths, 2000u);
  EXPECT_FALSE(e.note.empty());
  const auto small = estimate_ruin_joint(cfg, 0.5);
  EXPECT_LE(small.estimate, e.estimate);
  cfg.n_paths = 50;
  EXPECT_THROW(estimate_ruin_joint(cfg, 1.0), DomainError);
}

TEST(Residual, ZeroClaimsGiveZeroSides) {
  auto cfg = reference();
  cfg.claims = ClaimDistribution::empirical({0.0});
  cfg.horizon = 100.0;
  cfg.n_paths = 200;
  const auto r = ide_residual_at_zero(cfg, 1.0, {0.0, 0.1, 0.2});
  EXPECT_EQ(r.rhs, 0.0);
  EXPECT_EQ(r.lhs_slope, 0.0);
  EXPECT_EQ(r.residual, 0.0);
  EXPECT_EQ(r.g0_analytic, 0.0);
}

TEST(Residual, ReportsBothSides) {
  auto cfg = reference();
  cfg.horizon = 200.0;
  cfg.n_paths = 2000;
  const auto r = ide_residual_at_zero(cfg, 1.0, {0.0, 0.05, 0.1, 0.15, 0.2});
  const double phi_c = analytic_psi0(cfg);  // μ = c = 1
  EXPECT_NEAR(r.rhs, phi_c * (r.g0_analytic + 1.0 - std::exp(-1.0)), 1e-14);
  EXPECT_DOUBLE_EQ(r.residual, r.lhs_slope - r.rhs);
  EXPECT_TRUE(std::isfinite(r.lhs_standard_error));
  EXPECT_GT(r.lhs_standard_error, 0.0);
  ASSERT_EQ(r.g_mc.size(), 5u);
  EXPECT_EQ(r.g_mc[0], r.g0_mc);
  for (double g : r.g_mc) {
    EXPECT_GE(g, 0.0);
    EXPECT_LE(g, 1.0);
  }
  EXPECT_THROW(ide_residual_at_zero(cfg, 1.0, {0.0}), DomainError);
  EXPECT_THROW(ide_residual_at_zero(cfg, 1.0, {0.1, 0.1}), DomainError);
}
