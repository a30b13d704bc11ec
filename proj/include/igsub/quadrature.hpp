#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

namespace igsub::quadrature {

struct Result {
  double value = 0.0;
  double error = 0.0;
  std::size_t intervals = 0;
};

struct Tolerance {
  double absolute = 1e-14;
  double relative = 1e-12;
  std::size_t max_intervals = 4000;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
Segment kronrod15(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive Gauss–Kronrod (G7/K15) integration of f over [a, b].
///
/// The segment with the largest error estimate is bisected until the summed
/// error is below max(absolute, relative·|value|). The integrand is never
/// evaluated at the endpoints, so integrable endpoint singularities are
/// tolerated (slowly); prefer a substitution that removes them.
template <class F>
Result integrate(const F& f, double a, double b, Tolerance tol = {}) {
  if (a == b) return {};
  if (b < a) {
    Result r = integrate(f, b, a, tol);
    r.value = -r.value;
    return r;
  }
  std::priority_queue<detail::Segment> queue;
  auto first = detail::kronrod15(f, a, b);
  double value = first.value;
  double error = first.error;
  queue.push(first);
  while (error > std::max(tol.absolute, tol.relative * std::abs(value)) &&
         queue.size() < tol.max_intervals) {
    const auto worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    queue.pop();
    const auto left = detail::kronrod15(f, worst.a, mid);
    const auto right = detail::kronrod15(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }
  // Re-sum to shed the drift accumulated by incremental updates.
  double total = 0.0;
  double total_error = 0.0;
  const std::size_t count = queue.size();
  while (!queue.empty()) {
    total += queue.top().value;
    total_error += queue.top().error;
    queue.pop();
  }
  return {total, total_error, count};
}

/// Sum of integrals over consecutive breakpoints.
template <class F>
Result integrate_piecewise(const F& f, const std::vector<double>& breaks,
                           Tolerance tol = {}) {
  Result out;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const auto r = integrate(f, breaks[i], breaks[i + 1], tol);
    out.value += r.value;
    out.error += r.error;
    out.intervals += r.intervals;
  }
  return out;
}

}  // namespace igsub::quadrature
