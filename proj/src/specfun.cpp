#include "igsub/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "igsub/error.hpp"

namespace igsub::specfun {
namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 2000;

void require_shape(double a, const char* fn) {
  detail::require(a > 0.0 && a <= 1.0,
                  std::string(fn) + ": shape must lie in (0, 1]");
}

// x^a e^{-x}, evaluated in log space.
double power_exp(double a, double x) { return std::exp(a * std::log(x) - x); }

// Series for γ(a; x), convergent everywhere, fast for x < a + 1.
double lower_gamma_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxIterations; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * power_exp(a, x);
}

// Continued fraction for Γ(a; x) (modified Lentz), for x ≥ a + 1.
double upper_gamma_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return power_exp(a, x) * h;
}

// Continued fraction for the incomplete beta (modified Lentz).
double beta_fraction(double x, double a, double b) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m < kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double gamma_fn(double a) {
  detail::require(a > 0.0 && std::isfinite(a), "gamma_fn: argument must be > 0");
  return std::tgamma(a);
}

double lower_incomplete_gamma(double a, double x) {
  require_shape(a, "lower_incomplete_gamma");
  detail::require(x >= 0.0, "lower_incomplete_gamma: x must be >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return std::tgamma(a);
  if (x < a + 1.0) return lower_gamma_series(a, x);
  return std::tgamma(a) - upper_gamma_fraction(a, x);
}

double upper_incomplete_gamma(double a, double x) {
  require_shape(a, "upper_incomplete_gamma");
  detail::require(x >= 0.0, "upper_incomplete_gamma: x must be >= 0");
  if (x == 0.0) return std::tgamma(a);
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return std::tgamma(a) - lower_gamma_series(a, x);
  return upper_gamma_fraction(a, x);
}

double regularized_incomplete_beta(double x, double a, double b) {
  detail::require(x >= 0.0 && x <= 1.0,
                  "regularized_incomplete_beta: x must lie in [0, 1]");
  detail::require(a > 0.0 && b > 0.0,
                  "regularized_incomplete_beta: a and b must be > 0");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_fraction(x, a, b) / a;
  return 1.0 - front * beta_fraction(1.0 - x, b, a) / b;
}

std::vector<double> power_exp_derivative_coefficients(double beta, int order) {
  detail::require(order >= 0, "power_exp_derivative: order must be >= 0");
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  c[0] = 1.0;
  // d/dx [c_j x^{β-j} e^{-x}] = c_j (β-j) x^{β-j-1} e^{-x} - c_j x^{β-j} e^{-x}
  for (int n = 1; n <= order; ++n) {
    for (int j = n; j >= 0; --j) {
      double next = -c[j];
      if (j > 0) next += (beta - (j - 1)) * c[j - 1];
      c[j] = next;
    }
  }
  return c;
}

double power_exp_derivative(double beta, double x, int order) {
  detail::require(x > 0.0, "power_exp_derivative: x must be > 0");
  const auto c = power_exp_derivative_coefficients(beta, order);
  const double base = std::exp(beta * std::log(x) - x);
  double sum = 0.0;
  double inv_pow = 1.0;
  for (double cj : c) {
    sum += cj * inv_pow;
    inv_pow /= x;
  }
  return sum * base;
}

double tempering_fn_derivative(double alpha, double theta, double eta,
                               int order) {
  detail::require(alpha > 0.0 && alpha <= 1.0,
                  "tempering_fn_derivative: alpha must lie in (0, 1]");
  detail::require(theta >= 0.0, "tempering_fn_derivative: theta must be >= 0");
  detail::require(eta >= 0.0, "tempering_fn_derivative: eta must be >= 0");
  detail::require(order >= 0 && order <= kMaxDerivativeOrder,
                  "tempering_fn_derivative: order exceeds the supported cap");
  if (order == 0) {
    if (eta == 0.0) return 0.0;
    return lower_incomplete_gamma(alpha, eta + theta) -
           lower_incomplete_gamma(alpha, theta);
  }
  const double x = eta + theta;
  if (x == 0.0) return std::numeric_limits<double>::infinity();
  return power_exp_derivative(alpha - 1.0, x, order - 1);
}

}  // namespace igsub::specfun
