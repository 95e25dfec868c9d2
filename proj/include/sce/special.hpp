#pragma once

#include "sce/complex.hpp"
#include "sce/mp.hpp"

namespace sce {

// Gamma function. The real overload is backed by MPFR; the complex overload
// uses a Spouge sum whose parameter grows with the working precision, with
// the reflection formula for Re z < 1/2. All results carry the precision of
// the argument. Throws PoleError at non-positive integers.
BigReal gamma(const BigReal& x);
BigComplex gamma(const BigComplex& z);

// Spouge evaluation on the real axis, exposed as an independent route to
// cross-check the MPFR gamma.
BigReal spouge_gamma(const BigReal& x);

// Gamma(n + 1/2) / n! by the exact recurrence from Gamma(1/2) = sqrt(pi).
BigReal half_gamma_over_factorial(int n, int digits);

enum class BesselBranch { automatic, series, asymptotic };

// Modified Bessel functions for x > 0 and real order. K requires a
// non-integer order (the reflection form is used on the series branch).
BigReal bessel_I(const BigReal& nu, const BigReal& x);
BigReal bessel_K(const BigReal& nu, const BigReal& x, BesselBranch branch = BesselBranch::automatic);

// exp(x) * K_nu(x), finite for arguments where exp(x) alone would be huge.
BigReal bessel_K_scaled(const BigReal& nu, const BigReal& x, BesselBranch branch = BesselBranch::automatic);

// Argument above which bessel_K switches to the large-x expansion.
double bessel_K_crossover(int digits);

// Exponential integral E1. For x < 0 returns the principal value -Ei(-x).
BigReal exp_integral_E1(const BigReal& x);

// Ai(z) from the Maclaurin series. The number of terms and the guard digits
// follow from |z| and the requested precision.
BigComplex airy_reference(const BigComplex& z, int digits);

}  // namespace sce
