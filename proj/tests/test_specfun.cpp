#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "igsub/error.hpp"
#include "igsub/specfun.hpp"

using namespace igsub::specfun;
using igsub::DomainError;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Gamma, KnownValues) {
  EXPECT_DOUBLE_EQ(gamma_fn(1.0), 1.0);
  EXPECT_LT(rel(gamma_fn(0.5), std::sqrt(std::numbers::pi)), 1e-13);
  // mpmath, 30 digits.
  EXPECT_LT(rel(gamma_fn(0.8), 1.16422971372530338610958388645), 1e-13);
}

TEST(Gamma, QuadratureOracle) {
  // ∫₀^∞ e^{-y} y^{-0.2} dy, endpoint singularity handled by tanh-sinh.
  boost::math::quadrature::tanh_sinh<double> ts;
  const double q = ts.integrate(
      [](double y) { return std::exp(-y) * std::pow(y, -0.2); }, 0.0,
      std::numeric_limits<double>::infinity());
  EXPECT_LT(rel(gamma_fn(0.8), q), 1e-12);
}

TEST(Gamma, RejectsNonPositive) {
  EXPECT_THROW(gamma_fn(0.0), DomainError);
  EXPECT_THROW(gamma_fn(-1.0), DomainError);
}

TEST(LowerIncompleteGamma, KnownValues) {
  for (double eta : {0.1, 1.0, 3.0, 20.0})
    EXPECT_LT(rel(lower_incomplete_gamma(1.0, eta), -std::expm1(-eta)), 1e-13);
  EXPECT_EQ(lower_incomplete_gamma(0.5, 0.0), 0.0);
  EXPECT_LT(rel(lower_incomplete_gamma(0.5, 1.0),
                1.49364826562485405079893487226),
            1e-12);
  // √π erf(1)
  EXPECT_LT(rel(lower_incomplete_gamma(0.5, 1.0),
                std::sqrt(std::numbers::pi) * std::erf(1.0)),
            1e-13);
}

TEST(LowerIncompleteGamma, MatchesBoostOnGrid) {
  for (int i = 1; i <= 20; ++i) {
    const double a = 0.05 * i;
    for (double x : {1e-8, 1e-3, 0.1, 0.5, 0.99, 1.0, 1.5, 2.0, 5.0, 12.0, 40.0}) {
      const double ref = boost::math::tgamma_lower(a, x);
      EXPECT_LT(rel(lower_incomplete_gamma(a, x), ref), 1e-12)
          << "a=" << a << " x=" << x;
    }
  }
}

TEST(LowerIncompleteGamma, Monotone) {
  double prev = 0.0;
  for (double x = 0.0; x <= 30.0; x += 0.01) {
    const double v = lower_incomplete_gamma(0.3, x);
    ASSERT_GE(v, prev);
    prev = v;
  }
}

TEST(LowerIncompleteGamma, ApproachesCompleteGamma) {
  for (double a : {0.1, 0.5, 0.9})
    EXPECT_NEAR(lower_incomplete_gamma(a, 50.0), gamma_fn(a), 1e-10);
}

TEST(UpperIncompleteGamma, KnownValues) {
  EXPECT_LT(rel(upper_incomplete_gamma(0.5, 0.0), std::sqrt(std::numbers::pi)),
            1e-13);
  EXPECT_LT(rel(upper_incomplete_gamma(1.0, 1.0), std::exp(-1.0)), 1e-13);
  EXPECT_LT(rel(upper_incomplete_gamma(0.5, 1.0),
                0.278805585280661976499232611078),
            1e-12);
}

TEST(UpperIncompleteGamma, MatchesBoostInTheTail) {
  for (double a : {0.1, 0.25, 0.5, 0.75, 1.0})
    for (double x : {2.0, 10.0, 30.0, 80.0}) {
      const double ref = boost::math::tgamma(a, x);
      EXPECT_LT(rel(upper_incomplete_gamma(a, x), ref), 1e-12)
          << "a=" << a << " x=" << x;
    }
}

TEST(IncompleteGamma, SumIdentity) {
  for (double a : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0})
    for (double x : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0}) {
      const double s = lower_incomplete_gamma(a, x) + upper_incomplete_gamma(a, x);
      EXPECT_LE(std::abs(s - gamma_fn(a)), 1e-12 * gamma_fn(a));
    }
}

TEST(IncompleteGamma, DomainErrors) {
  EXPECT_THROW(lower_incomplete_gamma(0.0, 1.0), DomainError);
  EXPECT_THROW(lower_incomplete_gamma(1.5, 1.0), DomainError);
  EXPECT_THROW(lower_incomplete_gamma(0.5, -1.0), DomainError);
  EXPECT_THROW(upper_incomplete_gamma(0.5, -1e-3), DomainError);
}

TEST(RegularizedBeta, BoundariesAndSymmetry) {
  EXPECT_EQ(regularized_incomplete_beta(0.0, 0.3, 0.7), 0.0);
  EXPECT_EQ(regularized_incomplete_beta(1.0, 0.3, 0.7), 1.0);
  EXPECT_NEAR(regularized_incomplete_beta(0.5, 0.5, 0.5), 0.5, 1e-14);
  EXPECT_NEAR(regularized_incomplete_beta(0.25, 0.5, 0.5),
              2.0 / std::numbers::pi * std::asin(0.5), 1e-12);
}

TEST(RegularizedBeta, MatchesBoost) {
  for (double a : {0.1, 0.3, 0.5, 0.8})
    for (double x : {1e-6, 0.01, 0.2, 0.5, 0.73, 0.95, 1.0 - 1e-6}) {
      const double b = 1.0 - a;
      EXPECT_NEAR(regularized_incomplete_beta(x, a, b), boost::math::ibeta(a, b, x),
                  1e-12)
          << "a=" << a << " x=" << x;
      EXPECT_NEAR(regularized_incomplete_beta(x, b, a), boost::math::ibeta(b, a, x),
                  1e-12);
    }
}

TEST(RegularizedBeta, ReflectionIdentity) {
  for (double a : {0.2, 0.5, 0.9, 2.5})
    for (double b : {0.1, 0.5, 1.7})
      for (double x = 0.0; x <= 1.0; x += 0.05)
        EXPECT_NEAR(regularized_incomplete_beta(x, a, b) +
                        regularized_incomplete_beta(1.0 - x, b, a),
                    1.0, 1e-12);
}

TEST(RegularizedBeta, MonotoneAndBounded) {
  double prev = 0.0;
  for (double x = 0.0; x <= 1.0; x += 1e-3) {
    const double v = regularized_incomplete_beta(x, 0.3, 0.7);
    ASSERT_GE(v, prev);
    ASSERT_LE(v, 1.0);
    prev = v;
  }
}

TEST(RegularizedBeta, DomainErrors) {
  EXPECT_THROW(regularized_incomplete_beta(-0.1, 0.5, 0.5), DomainError);
  EXPECT_THROW(regularized_incomplete_beta(1.1, 0.5, 0.5), DomainError);
  EXPECT_THROW(regularized_incomplete_beta(0.5, 0.0, 0.5), DomainError);
}

TEST(PowerExpDerivative, CoefficientsOfLowOrders) {
  // d/dx [x^β e^{-x}] = (β x^{β-1} − x^β) e^{-x}
  const auto c1 = power_exp_derivative_coefficients(-0.5, 1);
  ASSERT_EQ(c1.size(), 2u);
  EXPECT_DOUBLE_EQ(c1[0], -1.0);
  EXPECT_DOUBLE_EQ(c1[1], -0.5);
  // second order: x^β − 2β x^{β-1} + β(β−1) x^{β-2}
  const auto c2 = power_exp_derivative_coefficients(-0.5, 2);
  EXPECT_DOUBLE_EQ(c2[0], 1.0);
  EXPECT_DOUBLE_EQ(c2[1], 1.0);
  EXPECT_DOUBLE_EQ(c2[2], 0.75);
}

TEST(TemperingDerivative, Values) {
  EXPECT_EQ(tempering_fn_derivative(0.5, 1.0, 0.0, 0), 0.0);
  EXPECT_NEAR(tempering_fn_derivative(0.5, 1.0, 0.0, 1), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(tempering_fn_derivative(0.5, 1.0, 1.0, 0),
              lower_incomplete_gamma(0.5, 2.0) - lower_incomplete_gamma(0.5, 1.0),
              1e-15);
}

TEST(TemperingDerivative, FiniteDifferencesOfPreviousOrder) {
  const double alpha = 0.4;
  const double theta = 0.7;
  for (int order = 1; order <= 8; ++order) {
    for (int i = 0; i < 20; ++i) {
      const double eta = 0.2 + 0.25 * i;
      const double h = 1e-4 * (1.0 + eta);
      const double fd = (tempering_fn_derivative(alpha, theta, eta + h, order - 1) -
                         tempering_fn_derivative(alpha, theta, eta - h, order - 1)) /
                        (2.0 * h);
      const double exact = tempering_fn_derivative(alpha, theta, eta, order);
      EXPECT_LE(std::abs(fd - exact), 1e-5 * std::abs(exact) + 1e-12)
          << "order=" << order << " eta=" << eta;
    }
  }
}

TEST(TemperingDerivative, HighOrderAgainstCauchyIntegral) {
  // n-th derivative of x^β e^{-x} at x0 from the contour integral
  //   (n!/2π) ∫ K(x0 + r e^{iφ}) r^{-n} e^{-inφ} dφ,  r < x0.
  // r close to x0 keeps the cancellation in the sum small.
  const double beta = -0.5;
  const double x0 = 2.0;
  for (int n : {10, 20, 30}) {
    const double r = 1.8;
    const int m = 4096;
    double acc = 0.0;
    for (int j = 0; j < m; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / m;
      const std::complex<double> z = x0 + r * std::polar(1.0, phi);
      const std::complex<double> k = std::pow(z, beta) * std::exp(-z);
      acc += (k * std::polar(1.0, -n * phi)).real();
    }
    const double ref = std::tgamma(n + 1.0) * acc / m / std::pow(r, n);
    EXPECT_LT(rel(power_exp_derivative(beta, x0, n), ref), 1e-9) << "n=" << n;
  }
}

TEST(TemperingDerivative, OrderCap) {
  EXPECT_NO_THROW(tempering_fn_derivative(0.5, 1.0, 1.0, kMaxDerivativeOrder));
  EXPECT_THROW(tempering_fn_derivative(0.5, 1.0, 1.0, kMaxDerivativeOrder + 1),
               DomainError);
  EXPECT_THROW(tempering_fn_derivative(0.5, 1.0, 1.0, -1), DomainError);
}
