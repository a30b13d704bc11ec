#pragma once

#include <vector>

namespace igsub::specfun {

/// Highest derivative order accepted by tempering_fn_derivative().
inline constexpr int kMaxDerivativeOrder = 64;

/// Complete gamma function Γ(a) for a > 0.
double gamma_fn(double a);

/// γ(a; x) = ∫₀^x e^{-y} y^{a-1} dy for 0 < a ≤ 1, x ≥ 0.
double lower_incomplete_gamma(double a, double x);

/// Γ(a; x) = ∫ₓ^∞ e^{-y} y^{a-1} dy for 0 < a ≤ 1, x ≥ 0.
double upper_incomplete_gamma(double a, double x);

/// I_x(a, b) = B_x(a, b) / B(a, b), for 0 ≤ x ≤ 1 and a, b > 0.
double regularized_incomplete_beta(double x, double a, double b);

/// Coefficients c_j such that
///   dⁿ/dxⁿ [x^β e^{-x}] = Σ_{j=0}^{n} c_j x^{β-j} e^{-x}.
std::vector<double> power_exp_derivative_coefficients(double beta, int order);

/// dⁿ/dxⁿ [x^β e^{-x}] evaluated at x > 0.
double power_exp_derivative(double beta, double x, int order);

/// n-th derivative of the tempering function f(η) = γ(α; η+θ) − γ(α; θ).
///
/// order 0 returns f itself; higher orders are the (order−1)-th derivative of
/// the kernel x^{α−1} e^{−x} at x = η+θ. θ = 0 is accepted and gives the
/// untempered γ(α; η). Throws DomainError for order > kMaxDerivativeOrder.
double tempering_fn_derivative(double alpha, double theta, double eta,
                               int order);

}  // namespace igsub::specfun
