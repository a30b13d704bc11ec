#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "igsub/jumpdist.hpp"
#include "igsub/samplers.hpp"

namespace igsub {

/// Poisson process of rate lambda evaluated at an independent subordinator.
struct ProcessSpec {
  SubordinatorSpec subordinator;
  double lambda;

  ProcessSpec(SubordinatorSpec sub, double rate);
};

/// Highest k accepted by pmf() and pmf_range().
inline constexpr int kMaxPmfOrder = 50;

/// E exp(−η N(S(t))) = exp(−t φ(λ(1 − e^{−η}))).
double process_laplace_exponent(const ProcessSpec& p, double eta, double t);

/// E u^{N(S(t))} = exp(−t φ(λ(1 − u))).
double process_pgf(const ProcessSpec& p, double u, double t);

/// P(N(S(t)) = k) from the exponential-composition recurrence on the pgf.
double pmf(const ProcessSpec& p, int k, double t);

/// pmf for k = 0 .. k_max in one pass.
std::vector<double> pmf_range(const ProcessSpec& p, int k_max, double t);

/// Hand-expanded pmf formulas for k ≤ 3, kept separate from the recurrence
/// so the two can be compared.
double closed_form_pmf(const ProcessSpec& p, int k, double t);

struct McEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::size_t n = 0;
};

/// (λᵏ/k!) E[e^{−λS(t)} S(t)ᵏ] averaged over n_paths simulated S(t).
/// Path i uses the stream (seed, i).
McEstimate pmf_mc_oracle(const ProcessSpec& p, int k, double t,
                         std::size_t n_paths, std::uint64_t seed,
                         const MetropolisConfig& cfg = {});

struct Moments {
  double mean;
  double variance;
};

/// Mean and variance at time t. TInG and PTInG only; the other kinds have
/// an infinite mean and throw.
Moments moments(const SubordinatorSpec& spec, double t);
Moments moments(const ProcessSpec& p, double t);

/// Cov[X(s), X(t)] = Var X(s) for 0 ≤ s ≤ t.
double covariance(const SubordinatorSpec& spec, double s, double t);
double covariance(const ProcessSpec& p, double s, double t);

/// √(s/t) for 0 < s ≤ t.
double correlation(const SubordinatorSpec& spec, double s, double t);
double correlation(const ProcessSpec& p, double s, double t);

/// Laplace transform L(η) = E e^{−ηX} of a nonnegative variable together with
/// its derivative, and the order below which fractional moments are finite.
struct LaplaceTransform {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  double moment_bound = 1.0;

  static LaplaceTransform of(const SubordinatorSpec& spec, double t);
  static LaplaceTransform of(const ProcessSpec& p, double t);
  /// X ≡ c.
  static LaplaceTransform degenerate(double c);
};

/// E X^q = −1/Γ(1−q) ∫₀^∞ L'(η) η^{−q} dη for 0 < q < moment_bound.
double fractional_moment(const LaplaceTransform& lt, double q);

/// Large-x tail formula: t x^{−α}/Γ(1−α) for subordinators and
/// t λ^α x^{−α}/Γ(1−α) for the time-changed processes.
double tail_asymptote(const SubordinatorSpec& spec, double x, double t);
double tail_asymptote(const ProcessSpec& p, double x, double t);

/// Large-t growth formula of E X(t)^q, per kind.
double frac_moment_asymptote(const SubordinatorSpec& spec, double q, double t);
double frac_moment_asymptote(const ProcessSpec& p, double q, double t);

/// Transition probabilities of the PTInG over a step h out of a state m:
/// entry 0 is the probability of staying, entry i ≥ 1 of moving to m + i.
/// With f(λ) = γ(α; λ+θ) − γ(α; θ),
///   p₀ = 1 − hαf(λ),  pᵢ = hα(−1)^{i+1} λⁱ f⁽ⁱ⁾(λ)/i!.
std::vector<double> transition_row(const ProcessSpec& p, double h, int max_i);

}  // namespace igsub
