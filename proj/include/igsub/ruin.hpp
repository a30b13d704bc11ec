#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "igsub/analytics.hpp"
#include "igsub/random.hpp"
#include "igsub/samplers.hpp"

namespace igsub {

/// Claim-size law F: exponential with mean μ or the empirical law of a
/// sample (each value equally likely).
class ClaimDistribution {
 public:
  enum class Kind { Exponential, Empirical };

  static ClaimDistribution exponential(double mean);
  static ClaimDistribution empirical(std::vector<double> values);

  Kind kind() const { return kind_; }
  double mean() const { return mean_; }
  /// Sorted sample of an empirical law; empty for the exponential law.
  const std::vector<double>& values() const { return values_; }

  double cdf(double x) const;
  double sample(RandomSource& rng) const;
  /// ∫₀^∞ (F(u+y) − F(u)) du = E min(X, y), in closed form.
  double limited_mean(double y) const;
  /// Point beyond which F(u) = 1 up to ~1e-22.
  double effective_upper() const;

 private:
  ClaimDistribution(Kind kind, double mean, std::vector<double> values);

  Kind kind_;
  double mean_;
  std::vector<double> values_;
};

/// Whether the exit rate in the zero-capital formulas for G and ψ is αf(λ) (the Laplace
/// exponent at λ) or the bare f(λ) = γ(α; λ+θ) − γ(α; θ).
enum class RateConvention { WithAlpha, WithoutAlpha };

struct RiskModelConfig {
  double c;                  // premium rate
  double u;                  // initial capital
  ClaimDistribution claims;
  ProcessSpec process;       // must be PTInG
  double horizon = 0.0;      // 0 selects default_horizon()
  std::size_t n_paths = 10000;
  std::uint64_t seed = 1;
  MetropolisConfig metropolis{};
  RateConvention rate_convention = RateConvention::WithAlpha;

  void validate() const;
};

struct RuinRecord {
  bool ruined = false;
  std::optional<double> ruin_time;
  std::optional<double> deficit;

  friend bool operator==(const RuinRecord&, const RuinRecord&) = default;
};

/// ρ = c t/(μ E N(S(t))) − 1.
double premium_loading(const RiskModelConfig& cfg, double t);

/// 50 mean inter-claim times, stretched by u/drift when the capital exceeds
/// one unit of positive drift c − μ E N(S(1)).
double default_horizon(const RiskModelConfig& cfg);
double effective_horizon(const RiskModelConfig& cfg);

/// Claim arrivals of one PTInG path: the subordinator jump times at which at
/// least one claim arrived and the cumulative claim total after each. It does
/// not depend on (u, c), so evaluating several (u, c) on one history couples
/// them through common random numbers.
struct ClaimHistory {
  std::vector<double> times;
  std::vector<double> cumulative_claims;

  RuinRecord evaluate(double u, double c) const;
};

/// Each subordinator jump Z brings a batch of Poisson(λZ) independent
/// claims. Events are generated in time order, so a longer horizon extends
/// the same history.
ClaimHistory simulate_claims(RandomSource& rng, const RiskModelConfig& cfg);

RuinRecord simulate_surplus(RandomSource& rng, const RiskModelConfig& cfg);

struct RuinEstimate {
  double estimate = 0.0;        // Ĝ(u, y)
  double standard_error = 0.0;
  double psi_hat = 0.0;         // ψ̂(u) on the same paths
  double psi_standard_error = 0.0;
  double horizon = 0.0;
  std::size_t n_paths = 0;
  std::uint64_t seed = 0;
  std::string note;
};

/// Fraction of paths ruined before the horizon with deficit ≤ y. Path i
/// uses the stream (cfg.seed, i).
RuinEstimate estimate_ruin_joint(const RiskModelConfig& cfg, double y);

/// Exit rate φ used by the zero-capital formulas, per cfg.rate_convention.
double ruin_exit_rate(const RiskModelConfig& cfg);

/// G(0, y) = (φ/c) ∫₀^∞ (F(u+y) − F(u)) du, in closed form.
double analytic_G0(const RiskModelConfig& cfg, double y);
/// ψ(0) = (φ/c) μ.
double analytic_psi0(const RiskModelConfig& cfg);
/// Same quantities with the integral evaluated by adaptive quadrature of F.
double numeric_G0(const RiskModelConfig& cfg, double y);
double numeric_psi0(const RiskModelConfig& cfg);

struct IdeResidual {
  double lhs_slope = 0.0;       // MC ∂G/∂u at 0
  double lhs_standard_error = 0.0;
  double rhs = 0.0;             // (φ/c)[G(0,y) − ∫G dF + F(y) − F(0)]
  double residual = 0.0;        // lhs − rhs
  double g0_analytic = 0.0;
  double g0_mc = 0.0;
  double g0_mc_standard_error = 0.0;
  std::vector<double> u_grid;
  std::vector<double> g_mc;
};

/// Both sides of the integro-differential equation for G at u = 0. The slope
/// is a least-squares fit of Ĝ(u, y) over u_grid on common paths, and its
/// standard error comes from the per-path slopes.
IdeResidual ide_residual_at_zero(const RiskModelConfig& cfg, double y,
                                 const std::vector<double>& u_grid);

}  // namespace igsub
