#include "igsub/jumpdist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "igsub/error.hpp"
#include "igsub/quadrature.hpp"
#include "igsub/specfun.hpp"

namespace igsub {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kPoleSegments = 16;
constexpr int kOctaveSegments = 8;
constexpr double kTailCutoff = 1e-18;

double tempering(const SubordinatorSpec& spec) {
  return spec.theta().value_or(0.0);
}

// Density after the substitution t = w^{1/(1−α)} (t = z − 1), which cancels
// the (z−1)^{−α} pole: f(z) dz = e^{−θz} / (z (1−α) N) dw.
struct TemperedIntegrand {
  double alpha, theta, scale;
  double operator()(double w) const {
    const double z = 1.0 + std::pow(w, 1.0 / (1.0 - alpha));
    return scale * std::exp(-theta * z) / z;
  }
};

TemperedIntegrand tempered_integrand(const SubordinatorSpec& spec) {
  return {spec.alpha(), tempering(spec),
          1.0 / ((1.0 - spec.alpha()) * spec.pdf_normalizer())};
}

// Breakpoints in w: uniform over t ∈ [0, 1], then octaves t ∈ [2^k, 2^{k+1}]
// until the bound e^{−θ(1+t)} / (θ t^α (1+t) N) on the remaining mass drops
// below kTailCutoff.
std::vector<double> tempered_breaks(const SubordinatorSpec& spec) {
  const double alpha = spec.alpha();
  const double theta = tempering(spec);
  const double norm = spec.pdf_normalizer();
  const double q = 1.0 - alpha;
  std::vector<double> breaks;
  for (int i = 0; i <= kPoleSegments; ++i)
    breaks.push_back(static_cast<double>(i) / kPoleSegments);
  double t = 1.0;
  while (std::exp(-theta * (1.0 + t)) /
             (theta * std::pow(t, alpha) * (1.0 + t) * norm) >
         kTailCutoff) {
    const double w_lo = std::pow(t, q);
    const double w_hi = std::pow(2.0 * t, q);
    for (int i = 1; i <= kOctaveSegments; ++i)
      breaks.push_back(w_lo + (w_hi - w_lo) * i / kOctaveSegments);
    t *= 2.0;
  }
  return breaks;
}

quadrature::Tolerance table_tolerance() { return {1e-17, 1e-14, 2000}; }

// I_{t/(s₀+t)}(1−α, α), the closed-form cdf of InG and InG-ε at s₀ + t.
double beta_survival_offset(const SubordinatorSpec& spec, double t) {
  const double s0 = spec.support_start();
  const double alpha = spec.alpha();
  return specfun::regularized_incomplete_beta(s0 / (s0 + t), alpha, 1.0 - alpha);
}

// Past t = s₀ the argument t/(s₀+t) rounds next to 1, so the tail is taken
// from the survival side.
double beta_cdf_offset(const SubordinatorSpec& spec, double t) {
  const double s0 = spec.support_start();
  const double alpha = spec.alpha();
  if (t > s0) return 1.0 - beta_survival_offset(spec, t);
  return specfun::regularized_incomplete_beta(t / (s0 + t), 1.0 - alpha, alpha);
}

// Direct quadrature of the TInG cdf without a table.
double tempered_cdf_direct(const SubordinatorSpec& spec, double t) {
  const double w = std::pow(t, 1.0 - spec.alpha());
  const auto f = tempered_integrand(spec);
  double total = 0.0;
  const auto breaks = tempered_breaks(spec);
  for (std::size_t i = 0; i + 1 < breaks.size() && breaks[i] < w; ++i) {
    total += quadrature::integrate(f, breaks[i], std::min(breaks[i + 1], w),
                                   table_tolerance())
                 .value;
  }
  return std::clamp(total, 0.0, 1.0);
}

}  // namespace

std::string_view kind_name(SubordinatorKind kind) {
  switch (kind) {
    case SubordinatorKind::InG:
      return "ing";
    case SubordinatorKind::InGEps:
      return "ing-eps";
    case SubordinatorKind::TInG:
      return "ting";
  }
  return "unknown";
}

SubordinatorSpec::SubordinatorSpec(SubordinatorKind kind, double alpha,
                                   double extra)
    : kind_(kind), alpha_(alpha), extra_(extra) {
  detail::require(alpha > 0.0 && alpha < 1.0,
                  "subordinator: alpha must lie strictly inside (0, 1)");
}

SubordinatorSpec SubordinatorSpec::ing(double alpha) {
  return {SubordinatorKind::InG, alpha, 0.0};
}

SubordinatorSpec SubordinatorSpec::ing_eps(double alpha, double epsilon) {
  detail::require(epsilon > 0.0 && std::isfinite(epsilon),
                  "subordinator: epsilon must be > 0");
  return {SubordinatorKind::InGEps, alpha, epsilon};
}

SubordinatorSpec SubordinatorSpec::ting(double alpha, double theta) {
  detail::require(theta > 0.0 && std::isfinite(theta),
                  "subordinator: theta must be > 0");
  return {SubordinatorKind::TInG, alpha, theta};
}

std::optional<double> SubordinatorSpec::epsilon() const {
  if (kind_ == SubordinatorKind::InGEps) return extra_;
  return std::nullopt;
}

std::optional<double> SubordinatorSpec::theta() const {
  if (kind_ == SubordinatorKind::TInG) return extra_;
  return std::nullopt;
}

double SubordinatorSpec::support_start() const {
  return kind_ == SubordinatorKind::InGEps ? extra_ : 1.0;
}

double SubordinatorSpec::driving_rate() const {
  switch (kind_) {
    case SubordinatorKind::InG:
      return alpha_ * specfun::gamma_fn(alpha_);
    case SubordinatorKind::InGEps:
      return alpha_ * specfun::gamma_fn(alpha_) * std::pow(extra_, -alpha_);
    case SubordinatorKind::TInG:
      return alpha_ * specfun::upper_incomplete_gamma(alpha_, extra_);
  }
  return 0.0;
}

double SubordinatorSpec::pdf_normalizer() const {
  const double g1 = specfun::gamma_fn(1.0 - alpha_);
  switch (kind_) {
    case SubordinatorKind::InG:
      return g1 * specfun::gamma_fn(alpha_);
    case SubordinatorKind::InGEps:
      return g1 * specfun::gamma_fn(alpha_) * std::pow(extra_, -alpha_);
    case SubordinatorKind::TInG:
      return g1 * specfun::upper_incomplete_gamma(alpha_, extra_);
  }
  return 0.0;
}

double jump_pdf(const SubordinatorSpec& spec, double z) {
  const double s0 = spec.support_start();
  if (!(z >= s0)) return 0.0;
  if (z == s0) return kInf;
  if (std::isinf(z)) return 0.0;
  const double a = spec.alpha();
  if (spec.kind() == SubordinatorKind::InG) {
    // sin(πα) / (π (z−1)^α z), the reflection-formula form.
    return std::sin(M_PI * a) / (M_PI * std::pow(z - 1.0, a) * z);
  }
  return std::exp(-tempering(spec) * z) * std::pow(z - s0, -a) / z /
         spec.pdf_normalizer();
}

double jump_cdf(const SubordinatorSpec& spec, double x) {
  const double s0 = spec.support_start();
  if (!(x > s0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (spec.kind() == SubordinatorKind::TInG)
    return tempered_cdf_direct(spec, x - s0);
  return beta_cdf_offset(spec, x - s0);
}

double jump_inverse_cdf(const SubordinatorSpec& spec, double u) {
  return JumpDistribution(spec).inverse_cdf(u);
}

double laplace_exponent(const SubordinatorSpec& spec, double eta) {
  return laplace_exponent_derivative(spec, eta, 0);
}

double laplace_exponent_derivative(const SubordinatorSpec& spec, double eta,
                                   int order) {
  detail::require(eta >= 0.0, "laplace_exponent: eta must be >= 0");
  const double a = spec.alpha();
  switch (spec.kind()) {
    case SubordinatorKind::InG:
      return a * specfun::tempering_fn_derivative(a, 0.0, eta, order);
    case SubordinatorKind::InGEps: {
      const double eps = *spec.epsilon();
      return a * std::pow(eps, order - a) *
             specfun::tempering_fn_derivative(a, 0.0, eta * eps, order);
    }
    case SubordinatorKind::TInG:
      return a * specfun::tempering_fn_derivative(a, *spec.theta(), eta, order);
  }
  return 0.0;
}

double candidate_pdf(const SubordinatorSpec& spec, double v) {
  const double s0 = spec.support_start();
  if (!(v >= s0)) return 0.0;
  const double rate = spec.driving_rate();
  return rate * std::exp(-rate * (v - s0));
}

double candidate_sample(RandomSource& rng, const SubordinatorSpec& spec) {
  const double s0 = spec.support_start();
  const double rate = spec.driving_rate();
  // s₀ − ln(U)/λ; a draw that rounds onto the pole is redrawn.
  for (;;) {
    const double v = s0 - std::log(rng.uniform()) / rate;
    if (v > s0) return v;
  }
}

JumpDistribution::JumpDistribution(SubordinatorSpec spec) : spec_(spec) {
  if (spec_.kind() != SubordinatorKind::TInG) return;
  w_breaks_ = tempered_breaks(spec_);
  cumulative_.assign(w_breaks_.size(), 0.0);
  for (std::size_t i = 1; i < w_breaks_.size(); ++i) {
    cumulative_[i] =
        cumulative_[i - 1] + tempered_mass(w_breaks_[i - 1], w_breaks_[i]);
  }
}

double JumpDistribution::tempered_mass(double w_from, double w_to) const {
  return quadrature::integrate(tempered_integrand(spec_), w_from, w_to,
                               table_tolerance())
      .value;
}

double JumpDistribution::tempered_cdf_offset(double t) const {
  const double w = std::pow(t, 1.0 - spec_.alpha());
  if (w >= w_breaks_.back()) return 1.0;
  const auto it = std::upper_bound(w_breaks_.begin(), w_breaks_.end(), w);
  const auto k = static_cast<std::size_t>(it - w_breaks_.begin()) - 1;
  const double value = cumulative_[k] + tempered_mass(w_breaks_[k], w);
  return std::clamp(value, 0.0, 1.0);
}

double JumpDistribution::cdf(double x) const {
  const double s0 = spec_.support_start();
  if (!(x > s0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  return cdf_offset(x - s0);
}

double JumpDistribution::cdf_offset(double t) const {
  if (!(t > 0.0)) return 0.0;
  if (std::isinf(t)) return 1.0;
  if (spec_.kind() == SubordinatorKind::TInG) return tempered_cdf_offset(t);
  return beta_cdf_offset(spec_, t);
}

double JumpDistribution::survival_offset(double t) const {
  if (!(t > 0.0)) return 1.0;
  if (std::isinf(t)) return 0.0;
  if (spec_.kind() == SubordinatorKind::TInG)
    return 1.0 - tempered_cdf_offset(t);
  return beta_survival_offset(spec_, t);
}

double JumpDistribution::inverse_cdf(double u) const {
  return spec_.support_start() + inverse_cdf_offset(u);
}

double JumpDistribution::inverse_cdf_offset(double u) const {
  detail::require(u > 0.0 && u < 1.0, "jump_inverse_cdf: u must lie in (0, 1)");
  // Increasing in t with a root at the target; the upper half is compared
  // through the survival function to keep precision in the heavy tail.
  const bool upper = u > 0.5;
  auto excess = [&](double t) {
    return upper ? (1.0 - u) - survival_offset(t) : cdf_offset(t) - u;
  };
  double lo = spec_.support_start();
  double hi = lo;
  if (excess(hi) < 0.0) {
    do {
      lo = hi;
      hi *= 2.0;
    } while (excess(hi) < 0.0 && std::isfinite(hi));
  } else {
    do {
      hi = lo;
      lo *= 0.5;
    } while (excess(lo) >= 0.0 && lo > std::numeric_limits<double>::min());
  }
  if (!std::isfinite(hi)) return std::numeric_limits<double>::max();
  while (hi / lo - 1.0 > 1e-15) {
    const double mid = std::sqrt(lo) * std::sqrt(hi);
    if (!(mid > lo && mid < hi)) break;
    const double e = excess(mid);
    if (e == 0.0) return mid;
    (e < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace igsub
