#pragma once

#include <complex>
#include <utility>

namespace apl {

using Complex = std::complex<double>;

// Riemann-Siegel theta, theta(t) = arg Gamma(1/4 + it/2) - (t/2) ln pi.
// Asymptotic expansion for |t| >= 10 (remainder < 1e-10 beyond t = 50),
// direct complex log-gamma below. Odd in t.
double riemann_siegel_theta(double t);

// theta'(t) = (1/2) ln(t/2pi) - 1/(48 t^2) - 7/(1920 t^4); t >= 10.
double theta_derivative(double t);

// Hardy Z(t) = e^{i theta(t)} zeta(1/2 + it), real on the real line.
// Riemann-Siegel formula (main sum plus three correction terms) for
// t >= 2000; below that the Euler-Maclaurin zeta times the rotation,
// which is the cheaper accurate route at small height. Absolute error
// <= 1e-6 for t <= 1e7. Throws std::domain_error for t < 10.
double hardy_z(double t);

// zeta(s) by Euler-Maclaurin with N = max(64, |Im s|/2) terms and 14
// Bernoulli corrections. Absolute error <= 1e-8 for |Im s| <= 1e6 in the
// strip; accuracy degrades slowly above 1e7. Throws std::domain_error at
// the pole s = 1 and outside -5 < Re s < 10.
Complex zeta(Complex s);

// zeta and zeta' in one pass (the main sum dominates the cost and serves
// both). Same domain as zeta().
std::pair<Complex, Complex> zeta_with_derivative(Complex s);

// Principal branch W(x) for x >= 0: W e^W = x to relative error 1e-12.
double lambert_w0(double x);

// Bessel J0 on |z| <= 50. Power series sum_{n} (-1)^n (z/2)^{2n} / (n!)^2
// truncated below 1e-16 for |z| <= 20 (long double accumulation keeps the
// alternating cancellation harmless there); the standard library evaluator
// covers the tail of the domain where the series loses digits in fixed
// precision.
double bessel_j0(double z);

namespace detail {

// theta in extended precision. The Gram-point residual theta(t) + phi - pi n
// cancels two ~1e7 quantities; long double keeps the residual meaningful
// down to ~1e-12.
long double theta_ld(long double t);

// arg Gamma(1/4 + it/2) via Stirling with upward recurrence (small |t|).
double arg_gamma_quarter(double t);

}  // namespace detail

}  // namespace apl
