#include "igsub/ruin.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "igsub/error.hpp"
#include "igsub/quadrature.hpp"
#include "igsub/specfun.hpp"

namespace igsub {

ClaimDistribution::ClaimDistribution(Kind kind, double mean,
                                     std::vector<double> values)
    : kind_(kind), mean_(mean), values_(std::move(values)) {}

ClaimDistribution ClaimDistribution::exponential(double mean) {
  detail::require(mean > 0.0 && std::isfinite(mean),
                  "claims: exponential mean must be finite and > 0");
  return ClaimDistribution(Kind::Exponential, mean, {});
}

ClaimDistribution ClaimDistribution::empirical(std::vector<double> values) {
  detail::require(!values.empty(), "claims: empirical sample is empty");
  for (double v : values)
    detail::require(v >= 0.0 && std::isfinite(v),
                    "claims: sizes must be finite and >= 0");
  std::sort(values.begin(), values.end());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) /
                      static_cast<double>(values.size());
  return ClaimDistribution(Kind::Empirical, mean, std::move(values));
}

double ClaimDistribution::cdf(double x) const {
  if (x < 0.0) return 0.0;
  if (kind_ == Kind::Exponential) return -std::expm1(-x / mean_);
  const auto it = std::upper_bound(values_.begin(), values_.end(), x);
  return static_cast<double>(it - values_.begin()) /
         static_cast<double>(values_.size());
}

double ClaimDistribution::sample(RandomSource& rng) const {
  if (kind_ == Kind::Exponential) return rng.exponential(1.0 / mean_);
  const auto n = static_cast<double>(values_.size());
  const auto i = std::min(static_cast<std::size_t>(rng.uniform() * n),
                          values_.size() - 1);
  return values_[i];
}

double ClaimDistribution::limited_mean(double y) const {
  if (y <= 0.0) return 0.0;
  if (kind_ == Kind::Exponential) return -mean_ * std::expm1(-y / mean_);
  double s = 0.0;
  for (double v : values_) s += std::min(v, y);
  return s / static_cast<double>(values_.size());
}

double ClaimDistribution::effective_upper() const {
  return kind_ == Kind::Exponential ? 50.0 * mean_ : values_.back();
}

void RiskModelConfig::validate() const {
  detail::require(c > 0.0 && std::isfinite(c), "ruin: c must be > 0");
  detail::require(u >= 0.0 && std::isfinite(u), "ruin: u must be >= 0");
  detail::require(process.subordinator.kind() == SubordinatorKind::TInG,
                  "ruin: the risk model is driven by a PTInG process");
  detail::require(horizon >= 0.0 && std::isfinite(horizon),
                  "ruin: horizon must be finite and >= 0");
  detail::require(n_paths >= 1, "ruin: n_paths must be >= 1");
  metropolis.validate();
}

double premium_loading(const RiskModelConfig& cfg, double t) {
  cfg.validate();
  detail::require(t > 0.0, "premium_loading: t must be > 0");
  detail::require(cfg.claims.mean() > 0.0,
                  "premium_loading: claim mean must be > 0");
  return cfg.c * t / (cfg.claims.mean() * moments(cfg.process, t).mean) - 1.0;
}

double default_horizon(const RiskModelConfig& cfg) {
  cfg.validate();
  const double claim_rate = moments(cfg.process, 1.0).mean;
  const double drift = cfg.c - cfg.claims.mean() * claim_rate;
  const double stretch = drift > 0.0 ? std::max(1.0, cfg.u / drift) : 1.0;
  return 50.0 / claim_rate * stretch;
}

double effective_horizon(const RiskModelConfig& cfg) {
  return cfg.horizon > 0.0 ? cfg.horizon : default_horizon(cfg);
}

RuinRecord ClaimHistory::evaluate(double u, double c) const {
  RuinRecord r;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double surplus = u + c * times[i] - cumulative_claims[i];
    if (surplus < 0.0) {
      r.ruined = true;
      r.ruin_time = times[i];
      r.deficit = -surplus;
      break;
    }
  }
  return r;
}

ClaimHistory simulate_claims(RandomSource& rng, const RiskModelConfig& cfg) {
  cfg.validate();
  const double horizon = effective_horizon(cfg);
  const auto& spec = cfg.process.subordinator;
  const double rate = spec.driving_rate();
  auto chain = make_jump_chain(spec, cfg.metropolis);
  ClaimHistory h;
  double t = 0.0;
  double total = 0.0;
  for (;;) {
    t += rng.exponential(rate);
    if (t > horizon) break;
    const double z = chain.next(rng);
    const double batch = rng.poisson(cfg.process.lambda * z);
    if (batch == 0.0) continue;
    for (double j = 0.0; j < batch; j += 1.0) total += cfg.claims.sample(rng);
    h.times.push_back(t);
    h.cumulative_claims.push_back(total);
  }
  return h;
}

RuinRecord simulate_surplus(RandomSource& rng, const RiskModelConfig& cfg) {
  return simulate_claims(rng, cfg).evaluate(cfg.u, cfg.c);
}

namespace {

std::pair<double, double> proportion(std::size_t hits, std::size_t n) {
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n))};
}

}  // namespace

RuinEstimate estimate_ruin_joint(const RiskModelConfig& cfg, double y) {
  cfg.validate();
  detail::require(cfg.n_paths >= 100, "estimate_ruin_joint: n_paths >= 100");
  RuinEstimate out;
  out.horizon = effective_horizon(cfg);
  out.n_paths = cfg.n_paths;
  out.seed = cfg.seed;
  std::size_t ruined = 0;
  std::size_t joint = 0;
  for (std::size_t i = 0; i < cfg.n_paths; ++i) {
    RandomSource rng(cfg.seed, i);
    const auto r = simulate_surplus(rng, cfg);
    if (!r.ruined) continue;
    ++ruined;
    if (y >= 0.0 && *r.deficit <= y) ++joint;
  }
  std::tie(out.estimate, out.standard_error) = proportion(joint, cfg.n_paths);
  std::tie(out.psi_hat, out.psi_standard_error) =
      proportion(ruined, cfg.n_paths);
  out.note = "finite-horizon estimate: ruin after the horizon is not counted";
  return out;
}

double ruin_exit_rate(const RiskModelConfig& cfg) {
  cfg.validate();
  const auto& spec = cfg.process.subordinator;
  const double f = specfun::tempering_fn_derivative(
      spec.alpha(), *spec.theta(), cfg.process.lambda, 0);
  return cfg.rate_convention == RateConvention::WithAlpha ? spec.alpha() * f
                                                          : f;
}

namespace {

double checked_probability(double v, const char* what) {
  detail::require(v <= 1.0, std::string(what) +
                                ": value exceeds 1; the premium rate is too "
                                "small for this configuration");
  return v;
}

// ∫₀^∞ (F(u+y) − F(u)) du by adaptive quadrature, split where F jumps.
double increment_integral(const ClaimDistribution& F, double y) {
  const double upper = F.effective_upper();
  std::vector<double> breaks{0.0};
  if (F.kind() == ClaimDistribution::Kind::Exponential) {
    for (int k = 1; k <= 50; ++k) breaks.push_back(upper * k / 50.0);
  } else {
    for (double v : F.values()) {
      breaks.push_back(v);
      if (v - y > 0.0) breaks.push_back(v - y);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    if (breaks.size() == 1) return 0.0;
  }
  const auto g = [&](double u) { return F.cdf(u + y) - F.cdf(u); };
  return quadrature::integrate_piecewise(g, breaks, {1e-16, 1e-13, 4000}).value;
}

}  // namespace

double analytic_G0(const RiskModelConfig& cfg, double y) {
  if (y < 0.0) return 0.0;
  return checked_probability(
      ruin_exit_rate(cfg) / cfg.c * cfg.claims.limited_mean(y), "analytic_G0");
}

double analytic_psi0(const RiskModelConfig& cfg) {
  return checked_probability(ruin_exit_rate(cfg) / cfg.c * cfg.claims.mean(),
                             "analytic_psi0");
}

double numeric_G0(const RiskModelConfig& cfg, double y) {
  if (y <= 0.0) return 0.0;
  return checked_probability(
      ruin_exit_rate(cfg) / cfg.c * increment_integral(cfg.claims, y),
      "numeric_G0");
}

double numeric_psi0(const RiskModelConfig& cfg) {
  const auto& F = cfg.claims;
  std::vector<double> breaks{0.0};
  if (F.kind() == ClaimDistribution::Kind::Exponential) {
    for (int k = 1; k <= 50; ++k) breaks.push_back(F.effective_upper() * k / 50.0);
  } else {
    for (double v : F.values())
      if (v > breaks.back()) breaks.push_back(v);
  }
  double tail = 0.0;
  if (breaks.size() > 1) {
    const auto g = [&](double u) { return 1.0 - F.cdf(u); };
    tail = quadrature::integrate_piecewise(g, breaks, {1e-16, 1e-13, 4000}).value;
  }
  return checked_probability(ruin_exit_rate(cfg) / cfg.c * tail, "numeric_psi0");
}

IdeResidual ide_residual_at_zero(const RiskModelConfig& cfg, double y,
                                 const std::vector<double>& u_grid) {
  cfg.validate();
  detail::require(u_grid.size() >= 2, "ide_residual: u_grid needs >= 2 points");
  for (double u : u_grid)
    detail::require(u >= 0.0 && std::isfinite(u), "ide_residual: u must be >= 0");
  const std::size_t m = u_grid.size();
  const double u_bar =
      std::accumulate(u_grid.begin(), u_grid.end(), 0.0) / static_cast<double>(m);
  double sxx = 0.0;
  for (double u : u_grid) sxx += (u - u_bar) * (u - u_bar);
  detail::require(sxx > 0.0, "ide_residual: u_grid points must differ");

  IdeResidual out;
  out.u_grid = u_grid;
  out.g_mc.assign(m, 0.0);
  // Paths are generated once at the largest horizon so that every u shares
  // them; a longer horizon only extends each history.
  RiskModelConfig sim = cfg;
  double horizon = 0.0;
  for (double u : u_grid) {
    sim.u = u;
    horizon = std::max(horizon, effective_horizon(sim));
  }
  sim.horizon = horizon;

  double slope_sum = 0.0;
  double slope_sq = 0.0;
  std::size_t g0_hits = 0;
  std::vector<double> hit(m);
  for (std::size_t i = 0; i < cfg.n_paths; ++i) {
    RandomSource rng(cfg.seed, i);
    const auto history = simulate_claims(rng, sim);
    double slope = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const auto r = history.evaluate(u_grid[j], cfg.c);
      hit[j] = (r.ruined && *r.deficit <= y) ? 1.0 : 0.0;
      out.g_mc[j] += hit[j];
      slope += (u_grid[j] - u_bar) * hit[j] / sxx;
    }
    const auto r0 = history.evaluate(0.0, cfg.c);
    if (r0.ruined && *r0.deficit <= y) ++g0_hits;
    slope_sum += slope;
    slope_sq += slope * slope;
  }
  const auto n = static_cast<double>(cfg.n_paths);
  for (double& g : out.g_mc) g /= n;
  out.lhs_slope = slope_sum / n;
  if (cfg.n_paths > 1) {
    const double var = (slope_sq - slope_sum * out.lhs_slope) / (n - 1.0);
    out.lhs_standard_error = std::sqrt(std::max(var, 0.0) / n);
  }
  std::tie(out.g0_mc, out.g0_mc_standard_error) =
      proportion(g0_hits, cfg.n_paths);

  const auto& F = cfg.claims;
  out.g0_analytic = analytic_G0(cfg, y);
  // ∫₀^0 G(−x, y) dF(x) only sees an atom of F at 0.
  const double atom0 = F.cdf(0.0);
  out.rhs = ruin_exit_rate(cfg) / cfg.c *
            (out.g0_analytic * (1.0 - atom0) + F.cdf(y) - atom0);
  out.residual = out.lhs_slope - out.rhs;
  return out;
}

}  // namespace igsub
