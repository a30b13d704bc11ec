#include "igsub/samplers.hpp"

#include <algorithm>
#include <cmath>

#include "igsub/error.hpp"

namespace igsub {
namespace {

void require_horizon(double horizon) {
  detail::require(horizon >= 0.0 && std::isfinite(horizon),
                  "path: horizon must be finite and >= 0");
}

void validate_grid(std::span<const double> grid) {
  detail::require(!grid.empty(), "grid: must contain at least one point");
  detail::require(grid.front() == 0.0, "grid: must start at 0");
  if (grid.size() == 1) return;
  const double step = grid[1] - grid[0];
  const double span = grid.back();
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double d = grid[i] - grid[i - 1];
    detail::require(d > 0.0, "grid: times must be strictly increasing");
    detail::require(std::abs(d - step) <= 1e-9 * span,
                    "grid: points must be uniformly spaced");
  }
}

SamplePath empty_path(const RandomSource& rng, double horizon) {
  SamplePath p;
  p.horizon = horizon;
  p.seed = rng.seed();
  p.stream_id = rng.stream_id();
  return p;
}

}  // namespace

double SamplePath::value_at(double t) const {
  const auto it = std::upper_bound(jump_times.begin(), jump_times.end(), t);
  if (it == jump_times.begin()) return 0.0;
  return cumulative_values[static_cast<std::size_t>(it - jump_times.begin()) - 1];
}

void MetropolisConfig::validate() const {
  detail::require(thinning >= 1, "metropolis: thinning must be >= 1");
}

SamplePath poisson_path(RandomSource& rng, double rate, double horizon) {
  detail::require(rate > 0.0 && std::isfinite(rate),
                  "poisson_path: rate must be > 0");
  require_horizon(horizon);
  auto path = empty_path(rng, horizon);
  double t = 0.0;
  double count = 0.0;
  for (;;) {
    t += rng.exponential(rate);
    if (t > horizon) break;
    path.jump_times.push_back(t);
    path.cumulative_values.push_back(++count);
  }
  return path;
}

SamplePath subordinator_path_inverse(RandomSource& rng,
                                     const SubordinatorSpec& spec,
                                     double horizon) {
  detail::require(spec.kind() != SubordinatorKind::TInG,
                  "subordinator_path_inverse: TInG has no closed-form cdf; "
                  "use the Metropolis path");
  auto path = poisson_path(rng, spec.driving_rate(), horizon);
  const JumpDistribution jumps(spec);
  double total = 0.0;
  for (double& value : path.cumulative_values) {
    total += jumps.inverse_cdf(rng.uniform());
    value = total;
  }
  return path;
}

JumpTarget::JumpTarget(const SubordinatorSpec& spec)
    : start_(spec.support_start()),
      alpha_(spec.alpha()),
      theta_(spec.theta().value_or(0.0)),
      norm_(spec.pdf_normalizer()) {}

TruncatedExponentialCandidate::TruncatedExponentialCandidate(
    const SubordinatorSpec& spec)
    : start_(spec.support_start()), rate_(spec.driving_rate()) {}

double TruncatedExponentialCandidate::sample(RandomSource& rng) const {
  for (;;) {
    const double v = start_ - std::log(rng.uniform()) / rate_;
    if (v > start_) return v;
  }
}

JumpChain make_jump_chain(const SubordinatorSpec& spec,
                          const MetropolisConfig& cfg) {
  return JumpChain(JumpTarget(spec), TruncatedExponentialCandidate(spec), cfg);
}

std::vector<double> metropolis_jump_sampler(RandomSource& rng,
                                            const SubordinatorSpec& spec,
                                            const MetropolisConfig& cfg,
                                            std::size_t n) {
  detail::require(n >= 1, "metropolis_jump_sampler: n must be >= 1");
  auto chain = make_jump_chain(spec, cfg);
  std::vector<double> states(n);
  for (auto& s : states) s = chain.next(rng);
  return states;
}

SamplePath subordinator_path_metropolis(RandomSource& rng,
                                        const SubordinatorSpec& spec,
                                        const MetropolisConfig& cfg,
                                        double horizon) {
  cfg.validate();
  auto path = poisson_path(rng, spec.driving_rate(), horizon);
  if (path.size() == 0) return path;
  auto chain = make_jump_chain(spec, cfg);
  double total = 0.0;
  for (double& value : path.cumulative_values) {
    total += chain.next(rng);
    value = total;
  }
  return path;
}

SamplePath subordinator_path(RandomSource& rng, const SubordinatorSpec& spec,
                             double horizon, PathMethod method,
                             const MetropolisConfig& cfg) {
  if (method == PathMethod::Automatic) {
    method = spec.kind() == SubordinatorKind::TInG ? PathMethod::Metropolis
                                                   : PathMethod::Inverse;
  }
  if (method == PathMethod::Inverse)
    return subordinator_path_inverse(rng, spec, horizon);
  return subordinator_path_metropolis(rng, spec, cfg, horizon);
}

std::vector<double> uniform_grid(double horizon, std::size_t steps) {
  require_horizon(horizon);
  if (horizon == 0.0) return {0.0};
  detail::require(steps >= 1, "uniform_grid: steps must be >= 1");
  std::vector<double> grid(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i)
    grid[i] = horizon * static_cast<double>(i) / static_cast<double>(steps);
  grid.back() = horizon;
  return grid;
}

SubordinatedSample subordinated_poisson_sample(RandomSource& rng,
                                               const SubordinatorSpec& spec,
                                               double lambda,
                                               std::span<const double> grid,
                                               PathMethod method,
                                               const MetropolisConfig& cfg) {
  detail::require(lambda > 0.0 && std::isfinite(lambda),
                  "subordinated_poisson_path: lambda must be > 0");
  validate_grid(grid);
  const auto path = subordinator_path(rng, spec, grid.back(), method, cfg);
  SubordinatedSample out;
  out.subordinator_values.reserve(grid.size());
  out.counts.reserve(grid.size());
  double previous_time = 0.0;
  double count = 0.0;
  for (double t : grid) {
    const double x = path.value_at(t);
    count += rng.poisson(lambda * (x - previous_time));
    previous_time = x;
    out.subordinator_values.push_back(x);
    out.counts.push_back(count);
  }
  return out;
}

std::vector<double> subordinated_poisson_path(RandomSource& rng,
                                              const SubordinatorSpec& spec,
                                              double lambda,
                                              std::span<const double> grid,
                                              PathMethod method,
                                              const MetropolisConfig& cfg) {
  return subordinated_poisson_sample(rng, spec, lambda, grid, method, cfg)
      .counts;
}

}  // namespace igsub
