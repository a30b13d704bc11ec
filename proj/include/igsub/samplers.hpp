#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "igsub/jumpdist.hpp"
#include "igsub/random.hpp"

namespace igsub {

/// Piecewise-constant path: the value jumps to cumulative_values[i] at
/// jump_times[i] and is 0 before the first jump.
struct SamplePath {
  std::vector<double> jump_times;
  std::vector<double> cumulative_values;
  double horizon = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  std::size_t size() const { return jump_times.size(); }
  double final_value() const {
    return cumulative_values.empty() ? 0.0 : cumulative_values.back();
  }
  /// Right-continuous value at time t.
  double value_at(double t) const;
};

/// Settings of the independence Metropolis chain used for jump sizes.
/// The initial state is always a draw from the candidate density.
struct MetropolisConfig {
  std::size_t burn_in = 1000;
  std::size_t thinning = 100;

  void validate() const;
};

enum class PathMethod {
  Inverse,     // inverse-transform jumps (InG, InG-ε)
  Metropolis,  // Metropolis chain jumps (any kind)
  Automatic,   // Inverse for InG and InG-ε, Metropolis for TInG
};

/// Poisson process path on [0, T]: exponential(rate) interarrivals drawn as
/// −ln(U)/rate, values 1, 2, 3, ...
SamplePath poisson_path(RandomSource& rng, double rate, double horizon);

/// Compound-Poisson path with inverse-transform jump sizes. Rejects TInG.
SamplePath subordinator_path_inverse(RandomSource& rng,
                                     const SubordinatorSpec& spec,
                                     double horizon);

/// Independence Metropolis–Hastings chain with a fixed proposal.
///
/// Target needs `double operator()(double) const` (density, up to a
/// constant); Candidate needs `double pdf(double) const` and
/// `double sample(RandomSource&) const`. The acceptance probability is
///   ρ = min{ [f(V)/g(V)] · [g(Z)/f(Z)], 1 }.
template <class Target, class Candidate>
class IndependenceChain {
 public:
  IndependenceChain(Target target, Candidate candidate, MetropolisConfig cfg)
      : target_(std::move(target)), candidate_(std::move(candidate)), cfg_(cfg) {
    cfg_.validate();
  }

  /// Next retained state. The first call draws the initial state and runs
  /// the burn-in; each call then advances `thinning` steps.
  double next(RandomSource& rng) {
    if (!started_) {
      state_ = candidate_.sample(rng);
      weight_ = weight(state_);
      started_ = true;
      for (std::size_t i = 0; i < cfg_.burn_in; ++i) step(rng);
    }
    for (std::size_t i = 0; i < cfg_.thinning; ++i) step(rng);
    return state_;
  }

  std::size_t proposals() const { return proposals_; }
  std::size_t acceptances() const { return acceptances_; }

 private:
  double weight(double x) const { return target_(x) / candidate_.pdf(x); }

  void step(RandomSource& rng) {
    const double proposal = candidate_.sample(rng);
    const double u = rng.uniform();
    const double w = weight(proposal);
    const double rho = std::min(w / weight_, 1.0);
    ++proposals_;
    if (u <= rho) {
      state_ = proposal;
      weight_ = w;
      ++acceptances_;
    }
  }

  Target target_;
  Candidate candidate_;
  MetropolisConfig cfg_;
  bool started_ = false;
  double state_ = 0.0;
  double weight_ = 0.0;
  std::size_t proposals_ = 0;
  std::size_t acceptances_ = 0;
};

/// Jump density of a subordinator as a Metropolis target, with the
/// normalising constants evaluated once.
class JumpTarget {
 public:
  explicit JumpTarget(const SubordinatorSpec& spec);
  double operator()(double z) const {
    if (!(z > start_)) return z == start_ ? HUGE_VAL : 0.0;
    return std::exp(-theta_ * z - alpha_ * std::log(z - start_)) / (z * norm_);
  }

 private:
  double start_, alpha_, theta_, norm_;
};

/// Truncated-exponential proposal of a subordinator.
class TruncatedExponentialCandidate {
 public:
  explicit TruncatedExponentialCandidate(const SubordinatorSpec& spec);
  double pdf(double v) const {
    return v >= start_ ? rate_ * std::exp(-rate_ * (v - start_)) : 0.0;
  }
  double sample(RandomSource& rng) const;

 private:
  double start_, rate_;
};

using JumpChain = IndependenceChain<JumpTarget, TruncatedExponentialCandidate>;

JumpChain make_jump_chain(const SubordinatorSpec& spec,
                          const MetropolisConfig& cfg);

/// n thinned states of the Metropolis jump chain after the burn-in.
std::vector<double> metropolis_jump_sampler(RandomSource& rng,
                                            const SubordinatorSpec& spec,
                                            const MetropolisConfig& cfg,
                                            std::size_t n);

/// Compound-Poisson path whose jump sizes are consumed from one Metropolis
/// chain; the chain is only started when the path has a jump.
SamplePath subordinator_path_metropolis(RandomSource& rng,
                                        const SubordinatorSpec& spec,
                                        const MetropolisConfig& cfg,
                                        double horizon);

SamplePath subordinator_path(RandomSource& rng, const SubordinatorSpec& spec,
                             double horizon, PathMethod method,
                             const MetropolisConfig& cfg = {});

/// n + 1 uniformly spaced points 0 = t₀ < ... < t_n = T.
std::vector<double> uniform_grid(double horizon, std::size_t steps);

/// Subordinator path sampled on a grid together with the counts N(X(tᵢ)).
struct SubordinatedSample {
  std::vector<double> subordinator_values;
  std::vector<double> counts;
};

/// Subordinated Poisson process N(X(tᵢ)) on a uniform grid starting at 0.
///
/// X is simulated on [0, T] with `method`; the rate-λ Poisson trajectory is
/// then evaluated at the operational times X(tᵢ) through its independent
/// increments N(X(tᵢ)) − N(X(tᵢ₋₁)) ~ Poisson(λ(X(tᵢ) − X(tᵢ₋₁))).
SubordinatedSample subordinated_poisson_sample(
    RandomSource& rng, const SubordinatorSpec& spec, double lambda,
    std::span<const double> grid, PathMethod method = PathMethod::Automatic,
    const MetropolisConfig& cfg = {});

std::vector<double> subordinated_poisson_path(
    RandomSource& rng, const SubordinatorSpec& spec, double lambda,
    std::span<const double> grid, PathMethod method = PathMethod::Automatic,
    const MetropolisConfig& cfg = {});

}  // namespace igsub
