#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "igsub/random.hpp"

namespace igsub {

enum class SubordinatorKind { InG, InGEps, TInG };

/// Lower-case identifier used on the command line and in reports.
std::string_view kind_name(SubordinatorKind kind);

/// Parameters of one of the three incomplete-gamma subordinators.
///
/// InG(α) has jumps on [1, ∞), InG-ε(α, ε) on [ε, ∞) and TInG(α, θ) on
/// [1, ∞) with exponentially damped jumps. α is restricted to (0, 1); the
/// α = 1 case has deterministic unit jumps and is not represented.
class SubordinatorSpec {
 public:
  static SubordinatorSpec ing(double alpha);
  static SubordinatorSpec ing_eps(double alpha, double epsilon);
  static SubordinatorSpec ting(double alpha, double theta);

  SubordinatorKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  std::optional<double> epsilon() const;
  std::optional<double> theta() const;

  /// Left end s₀ of the jump support: ε for InG-ε, 1 otherwise.
  double support_start() const;

  /// Rate of the driving Poisson process of the compound-Poisson
  /// representation: αΓ(α), αΓ(α)ε^{−α} or αΓ(α; θ).
  double driving_rate() const;

  /// Denominator N of the jump density f(z) = e^{−θz}(z−s₀)^{−α}z^{−1}/N
  /// (θ = 0 for InG and InG-ε).
  double pdf_normalizer() const;

 private:
  SubordinatorSpec(SubordinatorKind kind, double alpha, double extra);

  SubordinatorKind kind_;
  double alpha_;
  double extra_;  // ε or θ, unused for InG
};

/// Jump density. Zero below the support; +∞ exactly at the left endpoint,
/// where the density has an integrable pole.
double jump_pdf(const SubordinatorSpec& spec, double z);

/// Jump cdf. Closed form through the regularized incomplete beta for InG and
/// InG-ε; adaptive quadrature of the density for TInG.
double jump_cdf(const SubordinatorSpec& spec, double x);

/// Inverse jump cdf for u ∈ (0, 1). For TInG this builds a JumpDistribution
/// on every call; construct one directly for repeated inversion.
double jump_inverse_cdf(const SubordinatorSpec& spec, double u);

/// Laplace exponent φ(η) of the subordinator: E e^{−ηS(t)} = e^{−tφ(η)}.
double laplace_exponent(const SubordinatorSpec& spec, double eta);

/// k-th derivative of the Laplace exponent (k = 0 returns φ itself).
double laplace_exponent_derivative(const SubordinatorSpec& spec, double eta,
                                   int order);

/// Truncated exponential proposal of the Metropolis jump sampler, with rate
/// equal to the driving rate and support [s₀, ∞).
double candidate_pdf(const SubordinatorSpec& spec, double v);
double candidate_sample(RandomSource& rng, const SubordinatorSpec& spec);

/// Jump law with a precomputed cumulative table (TInG) for repeated
/// evaluation and inversion. Immutable after construction.
///
/// The *_offset members take t = z − s₀, which keeps full relative precision
/// next to the pole where z itself would round to s₀.
class JumpDistribution {
 public:
  explicit JumpDistribution(SubordinatorSpec spec);

  const SubordinatorSpec& spec() const { return spec_; }

  double pdf(double z) const { return jump_pdf(spec_, z); }
  double cdf(double x) const;
  double cdf_offset(double t) const;
  double survival_offset(double t) const;

  /// Returns x with |cdf(x) − u| ≤ 1e-10 whenever x is representable that
  /// closely; the bracket grows geometrically and is then bisected in log t.
  double inverse_cdf(double u) const;
  double inverse_cdf_offset(double u) const;

 private:
  double tempered_mass(double w_from, double w_to) const;
  double tempered_cdf_offset(double t) const;

  SubordinatorSpec spec_;
  // TInG only: breakpoints in w = t^{1−α} and the mass accumulated up to each.
  std::vector<double> w_breaks_;
  std::vector<double> cumulative_;
};

}  // namespace igsub
