#pragma once

#include "awt/common.hpp"

namespace awt {
namespace specfun {

// Modified Bessel functions of the first kind, orders 0 and 1.
// scaled=true returns e^{-x} I_nu(x), which stays finite for any x >= 0.
double bessel_i(int order, double x, bool scaled = false);
inline double bessel_i0(double x) { return bessel_i(0, x, false); }
inline double bessel_i1(double x) { return bessel_i(1, x, false); }
inline double bessel_i0_scaled(double x) { return bessel_i(0, x, true); }
inline double bessel_i1_scaled(double x) { return bessel_i(1, x, true); }

// Modified Bessel function of the second kind, order 0, x > 0.
// scaled=true returns e^{x} K_0(x).
double bessel_k0(double x, bool scaled = false);

double erf(double x);

// Laguerre polynomial L_k(x) by the three-term recurrence; k <= 200.
double laguerre(int k, double x);

// 2F1(3/2, 3/2; c; x) for c in {1, 2} on [0, 1).
// Direct series for x <= 0.75; the z -> 1-z connection formula with the
// logarithmic (c - a - b negative integer) terms beyond.
double hyp2f1_33c(int c, double x);

// Regularized incomplete gamma Q(a, x) = Gamma(a,x)/Gamma(a); a > 0, x >= 0.
// Drives chi-square p-values.
double gamma_q(double a, double x);

// Chi-square upper tail P(X > x) with k degrees of freedom.
inline double chi2_sf(double x, double k) { return gamma_q(0.5 * k, 0.5 * x); }

}  // namespace specfun
}  // namespace awt
