#include "igsub/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "igsub/error.hpp"
#include "igsub/quadrature.hpp"
#include "igsub/specfun.hpp"

namespace igsub {
namespace {

void require_time(double t) {
  detail::require(t >= 0.0 && std::isfinite(t), "t must be finite and >= 0");
}

void require_finite_mean(const SubordinatorSpec& spec) {
  detail::require(spec.kind() == SubordinatorKind::TInG,
                  std::string("moments: ") + std::string(kind_name(spec.kind())) +
                      " has infinite mean");
}

// Taylor coefficients aₖ of A(u) = −tφ(λ(1−u)) at u = 0:
//   aₖ = −t(−λ)ᵏ φ⁽ᵏ⁾(λ)/k!.
std::vector<double> exponent_coefficients(const ProcessSpec& p, int k_max,
                                          double t) {
  std::vector<double> a(static_cast<std::size_t>(k_max) + 1);
  double scale = 1.0;  // (−λ)ᵏ/k!
  for (int k = 0; k <= k_max; ++k) {
    if (k > 0) scale *= -p.lambda / k;
    a[static_cast<std::size_t>(k)] =
        -t * scale * laplace_exponent_derivative(p.subordinator, p.lambda, k);
  }
  return a;
}

McEstimate summarize(double sum, double sum_sq, std::size_t n) {
  McEstimate out;
  out.n = n;
  out.estimate = sum / static_cast<double>(n);
  if (n > 1) {
    const double var = (sum_sq - sum * out.estimate) / static_cast<double>(n - 1);
    out.standard_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
  }
  return out;
}

}  // namespace

ProcessSpec::ProcessSpec(SubordinatorSpec sub, double rate)
    : subordinator(sub), lambda(rate) {
  detail::require(rate > 0.0 && std::isfinite(rate),
                  "process: lambda must be finite and > 0");
}

double process_laplace_exponent(const ProcessSpec& p, double eta, double t) {
  detail::require(eta >= 0.0, "process_laplace_exponent: eta must be >= 0");
  require_time(t);
  if (t == 0.0 || eta == 0.0) return 1.0;
  return std::exp(-t * laplace_exponent(p.subordinator,
                                        -p.lambda * std::expm1(-eta)));
}

double process_pgf(const ProcessSpec& p, double u, double t) {
  detail::require(u >= 0.0 && u <= 1.0, "process_pgf: u must lie in [0, 1]");
  require_time(t);
  if (t == 0.0 || u == 1.0) return 1.0;
  return std::exp(-t * laplace_exponent(p.subordinator, p.lambda * (1.0 - u)));
}

std::vector<double> pmf_range(const ProcessSpec& p, int k_max, double t) {
  detail::require(k_max >= 0 && k_max <= kMaxPmfOrder,
                  "pmf: k exceeds the supported cap of 50");
  require_time(t);
  std::vector<double> b(static_cast<std::size_t>(k_max) + 1, 0.0);
  if (t == 0.0) {
    b[0] = 1.0;
    return b;
  }
  const auto a = exponent_coefficients(p, k_max, t);
  // P = e^A  ⇒  k bₖ = Σ_{j=1}^{k} j aⱼ b_{k−j}.
  b[0] = std::exp(a[0]);
  for (int k = 1; k <= k_max; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j)
      s += j * a[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(k - j)];
    b[static_cast<std::size_t>(k)] = s / k;
  }
  return b;
}

double pmf(const ProcessSpec& p, int k, double t) {
  detail::require(k >= 0, "pmf: k must be >= 0");
  return pmf_range(p, k, t)[static_cast<std::size_t>(k)];
}

double closed_form_pmf(const ProcessSpec& p, int k, double t) {
  detail::require(k >= 0 && k <= 3, "closed_form_pmf: only k = 0..3");
  require_time(t);
  if (t == 0.0) return k == 0 ? 1.0 : 0.0;
  const double a = p.subordinator.alpha();
  const double l = p.lambda;
  using specfun::lower_incomplete_gamma;

  switch (p.subordinator.kind()) {
    case SubordinatorKind::InG: {
      const double e = std::exp(-t * a * lower_incomplete_gamma(a, l));
      const double la = std::pow(l, a);
      switch (k) {
        case 0:
          return e;
        case 1:
          return a * la * t * e * std::exp(-l);
        case 2:
          return 0.5 *
                 (a * a * la * la * t * t -
                  (a * a - a * l - a) * la * t * std::exp(l)) *
                 e * std::exp(-2.0 * l);
        default:
          return (a * a * a * la * la * la * t * t * t -
                  3.0 * (a * a * a - a * a * l - a * a) * la * la * t * t *
                      std::exp(l) +
                  (a * a * a + a * l * l - 3.0 * a * a - 2.0 * (a * a - a) * l +
                   2.0 * a) *
                      la * t * std::exp(2.0 * l)) *
                 e * std::exp(-3.0 * l) / 6.0;
      }
    }
    case SubordinatorKind::InGEps: {
      const double eps = *p.subordinator.epsilon();
      const double le = l * eps;
      const double e =
          std::exp(-t * a * lower_incomplete_gamma(a, le) / std::pow(eps, a));
      const double la = std::pow(l, a);
      switch (k) {
        case 0:
          return e;
        case 1:
          return la * a * t * std::exp(-le) * e;
        case 2:
          return 0.5 *
                 (la * la * a * a * t * t +
                  (a * le - a * a + a) * la * t * std::exp(le)) *
                 std::exp(-2.0 * le) * e;
        default:
          return (la * la * la * a * a * a * t * t * t +
                  3.0 * (a * a * le - a * a * a + a * a) * la * la * t * t *
                      std::exp(le) +
                  (a * le * le + a * a * a - 2.0 * (a * a - a) * le -
                   3.0 * a * a + 2.0 * a) *
                      la * t * std::exp(2.0 * le)) *
                 std::exp(-3.0 * le) * e / 6.0;
      }
    }
    case SubordinatorKind::TInG: {
      const double th = *p.subordinator.theta();
      const double s = th + l;
      const double rho =
          lower_incomplete_gamma(a, s) - lower_incomplete_gamma(a, th);
      const double e = std::exp(-t * a * rho);
      const double x = std::exp(-s);
      const double d1 = a * std::pow(s, a - 1.0) * l * t;  // tαλ s^{α−1}
      const double b = d1 * x + l;
      switch (k) {
        case 0:
          return e;
        case 1:
          return d1 * e * x;
        case 2:
          return 0.5 *
                 ((1.0 - a) * a * std::pow(s, a - 2.0) * l * l * t + b * d1) *
                 e * x;
        default: {
          const double d2 = (a - 1.0) * a * std::pow(s, a - 2.0) * l * l * t;
          return ((a - 1.0) * (a - 2.0) * a * std::pow(s, a - 3.0) * l * l * l *
                      t -
                  2.0 * b * d2 + b * b * d1 -
                  (d2 * x - a * std::pow(s, a - 1.0) * l * l * t * x) * d1) *
                 e * x / 6.0;
        }
      }
    }
  }
  return 0.0;
}

McEstimate pmf_mc_oracle(const ProcessSpec& p, int k, double t,
                         std::size_t n_paths, std::uint64_t seed,
                         const MetropolisConfig& cfg) {
  detail::require(k >= 0, "pmf_mc_oracle: k must be >= 0");
  detail::require(n_paths >= 1, "pmf_mc_oracle: n_paths must be >= 1");
  require_time(t);
  const double log_fact = std::lgamma(k + 1.0);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < n_paths; ++i) {
    RandomSource rng(seed, i);
    const double s =
        subordinator_path(rng, p.subordinator, t, PathMethod::Automatic, cfg)
            .final_value();
    double v;
    if (s == 0.0)
      v = k == 0 ? 1.0 : 0.0;
    else
      v = std::exp(k * std::log(p.lambda * s) - p.lambda * s - log_fact);
    sum += v;
    sum_sq += v * v;
  }
  return summarize(sum, sum_sq, n_paths);
}

Moments moments(const SubordinatorSpec& spec, double t) {
  require_finite_mean(spec);
  require_time(t);
  const double a = spec.alpha();
  const double th = *spec.theta();
  const double mean = t * a * std::pow(th, a - 1.0) * std::exp(-th);
  // Second cumulant ∫ z² ν(dz) = t(1−α)αθ^{α−2}e^{−θ} + mean.
  const double var =
      mean + t * (1.0 - a) * a * std::pow(th, a - 2.0) * std::exp(-th);
  return {mean, var};
}

Moments moments(const ProcessSpec& p, double t) {
  const auto m = moments(p.subordinator, t);
  return {p.lambda * m.mean,
          p.lambda * p.lambda * m.variance + p.lambda * m.mean};
}

namespace {

void require_ordered(double s, double t) {
  detail::require(s >= 0.0 && s <= t && std::isfinite(t),
                  "covariance: requires 0 <= s <= t");
}

}  // namespace

double covariance(const SubordinatorSpec& spec, double s, double t) {
  require_ordered(s, t);
  return moments(spec, s).variance;
}

double covariance(const ProcessSpec& p, double s, double t) {
  require_ordered(s, t);
  return moments(p, s).variance;
}

double correlation(const SubordinatorSpec& spec, double s, double t) {
  require_finite_mean(spec);
  require_ordered(s, t);
  detail::require(s > 0.0, "correlation: undefined at s = 0");
  return std::sqrt(s / t);
}

double correlation(const ProcessSpec& p, double s, double t) {
  return correlation(p.subordinator, s, t);
}

LaplaceTransform LaplaceTransform::of(const SubordinatorSpec& spec, double t) {
  require_time(t);
  LaplaceTransform lt;
  lt.value = [spec, t](double eta) {
    return std::exp(-t * laplace_exponent(spec, eta));
  };
  lt.derivative = [spec, t](double eta) {
    return -t * laplace_exponent_derivative(spec, eta, 1) *
           std::exp(-t * laplace_exponent(spec, eta));
  };
  lt.moment_bound = spec.alpha();
  return lt;
}

LaplaceTransform LaplaceTransform::of(const ProcessSpec& p, double t) {
  require_time(t);
  LaplaceTransform lt;
  lt.value = [p, t](double eta) { return process_laplace_exponent(p, eta, t); };
  lt.derivative = [p, t](double eta) {
    const double x = -p.lambda * std::expm1(-eta);
    const double dx = p.lambda * std::exp(-eta);
    return -t * laplace_exponent_derivative(p.subordinator, x, 1) * dx *
           std::exp(-t * laplace_exponent(p.subordinator, x));
  };
  lt.moment_bound = p.subordinator.alpha();
  return lt;
}

LaplaceTransform LaplaceTransform::degenerate(double c) {
  detail::require(c >= 0.0 && std::isfinite(c),
                  "degenerate transform: c must be finite and >= 0");
  LaplaceTransform lt;
  lt.value = [c](double eta) { return std::exp(-c * eta); };
  lt.derivative = [c](double eta) { return -c * std::exp(-c * eta); };
  lt.moment_bound = 1.0;
  return lt;
}

double fractional_moment(const LaplaceTransform& lt, double q) {
  detail::require(q > 0.0 && q < std::min(1.0, lt.moment_bound),
                  "fractional_moment: requires 0 < q < min(1, alpha)");
  // η = e^w turns −L'(η) η^{−q} dη into −L'(e^w) e^{(1−q)w} dw.
  const auto g = [&](double w) {
    const double v = -lt.derivative(std::exp(w)) * std::exp((1.0 - q) * w);
    return std::isfinite(v) && v > 0.0 ? v : 0.0;
  };
  constexpr double kStep = 0.25;
  constexpr double kLeftLimit = -600.0;
  constexpr double kRightLimit = 200.0;
  double peak_w = 0.0;
  double peak = 0.0;
  for (double w = -40.0; w <= 40.0; w += kStep) {
    const double v = g(w);
    if (v > peak) {
      peak = v;
      peak_w = w;
    }
  }
  if (peak == 0.0) return 0.0;
  const double floor = 1e-16 * peak;
  double hi = peak_w;
  while (hi < kRightLimit && g(hi) > floor) hi += 1.0;
  double lo = peak_w;
  while (lo > kLeftLimit && g(lo) > floor) lo -= 1.0;

  std::vector<double> breaks;
  for (double w = lo; w < hi; w += 1.0) breaks.push_back(w);
  breaks.push_back(hi);
  double integral = quadrature::integrate_piecewise(g, breaks).value;

  // Below lo the integrand behaves like C e^{κw}; add ∫_{−∞}^{lo} of that.
  const double g0 = g(lo);
  const double g1 = g(lo + 0.5);
  if (g0 > 0.0 && g1 > g0) integral += g0 / (std::log(g1 / g0) / 0.5);
  return integral / specfun::gamma_fn(1.0 - q);
}

double tail_asymptote(const SubordinatorSpec& spec, double x, double t) {
  detail::require(x > 0.0, "tail_asymptote: x must be > 0");
  require_time(t);
  const double a = spec.alpha();
  return t * std::pow(x, -a) / specfun::gamma_fn(1.0 - a);
}

double tail_asymptote(const ProcessSpec& p, double x, double t) {
  return std::pow(p.lambda, p.subordinator.alpha()) *
         tail_asymptote(p.subordinator, x, t);
}

namespace {

void require_order(double q) {
  detail::require(q > 0.0 && q < 1.0, "frac_moment_asymptote: q in (0, 1)");
}

double tempered_growth(const SubordinatorSpec& spec, double q, double t) {
  const double a = spec.alpha();
  const double th = *spec.theta();
  return a * std::pow(std::exp(-th) * std::pow(th, a - 1.0) * t, q);
}

}  // namespace

double frac_moment_asymptote(const SubordinatorSpec& spec, double q, double t) {
  require_order(q);
  require_time(t);
  const double a = spec.alpha();
  switch (spec.kind()) {
    case SubordinatorKind::InG:
      return specfun::gamma_fn(1.0 - q / a) / specfun::gamma_fn(1.0 - q) *
             std::pow(t, q / a);
    case SubordinatorKind::InGEps:
      return a / *spec.epsilon() * std::pow(t, q);
    case SubordinatorKind::TInG:
      return tempered_growth(spec, q, t);
  }
  return 0.0;
}

double frac_moment_asymptote(const ProcessSpec& p, double q, double t) {
  require_order(q);
  require_time(t);
  const auto& spec = p.subordinator;
  switch (spec.kind()) {
    case SubordinatorKind::InG:
      return std::pow(p.lambda, q - 1.0) * std::pow(t, q);
    case SubordinatorKind::InGEps:
      return std::pow(p.lambda, q - 1.0) * std::pow(t, q) /
             std::pow(*spec.epsilon(), spec.alpha() - q);
    case SubordinatorKind::TInG:
      return tempered_growth(spec, q, t);
  }
  return 0.0;
}

std::vector<double> transition_row(const ProcessSpec& p, double h, int max_i) {
  const auto& spec = p.subordinator;
  detail::require(spec.kind() == SubordinatorKind::TInG,
                  "transition_row: requires a TInG subordinator");
  detail::require(h >= 0.0 && std::isfinite(h), "transition_row: h must be >= 0");
  detail::require(max_i >= 0 && max_i <= specfun::kMaxDerivativeOrder,
                  "transition_row: max_i exceeds the derivative cap");
  const double a = spec.alpha();
  const double th = *spec.theta();
  std::vector<double> row(static_cast<std::size_t>(max_i) + 1);
  row[0] = 1.0 - h * a * specfun::tempering_fn_derivative(a, th, p.lambda, 0);
  double scale = 1.0;  // λⁱ/i!
  for (int i = 1; i <= max_i; ++i) {
    scale *= p.lambda / i;
    const double sign = (i % 2 == 1) ? 1.0 : -1.0;
    row[static_cast<std::size_t>(i)] =
        h * a * sign * scale *
        specfun::tempering_fn_derivative(a, th, p.lambda, i);
  }
  for (double v : row)
    detail::require(v >= 0.0 && v <= 1.0,
                    "transition_row: an entry left [0, 1]; reduce h");
  return row;
}

}  // namespace igsub
