#pragma once

#include <string>
#include <vector>

#include "sce/complex.hpp"
#include "sce/mp.hpp"

namespace sce {

// Competing approximations for Z(g) = int exp(-x^2/2 - g x^4) dx and for
// Ai~(z) = 2 pi z^(1/4) exp(2/3 z^(3/2)) Ai(z). Couplings are passed as
// complex numbers; the quartic requires a real g > 0. Values returned by the
// methods are the physical quantities Z(g) and Ai(z).
enum class Problem { quartic_Z, airy_tilde };
std::string to_string(Problem p);

struct SeriesCoefficients {
    Problem problem;
    std::vector<BigReal> coeffs;  // coefficient of x^n, x = g or z^(-3/2)
    int order = 0;
};

SeriesCoefficients series_coefficients(Problem problem, int order, int digits);

// x = g for the quartic and z^(-3/2) for Airy.
BigComplex expansion_variable(Problem problem, const BigComplex& coupling);
// F = 1/(16 g) for the quartic and (4/3) z^(3/2) for Airy.
BigComplex singulant(Problem problem, const BigComplex& coupling);
// Maps a sum of the series to Z or Ai.
BigComplex physical_value(Problem problem, const BigComplex& coupling, const BigComplex& series_value);
BigComplex exact_value(Problem problem, const BigComplex& coupling, int digits);

struct SuperasymptoticResult {
    BigComplex value;
    int N0 = 0;
    bool trivial = false;  // F < 1: only the n = 0 term is kept
};

// Sum of the series through its least term, n = 0..N0.
SuperasymptoticResult superasymptotic(Problem problem, const BigComplex& coupling, int digits = 30);

enum class BorelKernel { large_order, exact };

// Quartic superasymptotic sum through N0 plus a Borel sum of the remainder.
// large_order replaces the discarded coefficients by their leading large-n
// form (-16 g)^n Gamma(n) / sqrt(pi); exact integrates the remainder of
// sqrt(2) int e^-t t^-1/2 exp(-4 g t^2) dt, which returns Z itself.
// N0 = -1 keeps no terms.
BigReal borel_tail(const BigReal& g, int N0, int digits = 30, BorelKernel kernel = BorelKernel::large_order);

// P/Q with deg P = deg Q = m and Q(0) = 1.
struct PadeApproximant {
    std::vector<BigReal> p;
    std::vector<BigReal> q;
};

// [m/m] approximant of the power series with the given coefficients (at
// least 2m+1 of them). SingularSystem when elimination meets a zero pivot.
PadeApproximant pade_approximant(const std::vector<BigReal>& coeffs, int m);

// [N/2 / N/2] approximant of the perturbative series at the coupling, N even.
BigComplex pade(Problem problem, const BigComplex& coupling, int N, int digits = 30);

// Coefficients of T*_N(u) = T_N(2u - 1), exact integers.
std::vector<BigReal> shifted_chebyshev(int N);

// Polynomial a_0 + ... + a_N x^N solving the ODE of the problem with tau
// T*_N(x/s) on the right-hand side and a_0 fixed to the value at x = 0.
// quartic: 16 x^2 Z'' + (1 + 32 x) Z' + 3 Z, a_0 = sqrt(2 pi)
// Airy:    36 x^2 f'' + 24 (2 + 3 x) f' + 5 f, a_0 = sqrt(pi)
struct TauSolution {
    std::vector<BigComplex> a;
    BigComplex tau;
    BigComplex s;
};

TauSolution lanczos_tau_solution(Problem problem, const BigComplex& s, int N, int digits);

// tau approximation evaluated at the coupling with s = x.
BigComplex lanczos_tau(Problem problem, const BigComplex& coupling, int N, int digits = 30);

struct HyperLevel1Result {
    BigComplex value;
    int N0 = 0;
    int N1 = 0;
    std::vector<BigComplex> terminants;  // K_r, r = 0..N1-1
    BigReal predicted_error;             // absolute, in units of the series
};

// Level-0 sum of N0 = round|F| terms plus the first scattering level with
// N1 = N0 / 2 terms. Requires |F| >= 2.
HyperLevel1Result hyper_level1(Problem problem, const BigComplex& coupling, int digits = 30);

// Predicted absolute error of the trans-series after S scattering stages at
// singulant F, in units of the series (Z, or Ai~ for Airy).
BigReal hyper_error_predict(Problem problem, const BigReal& F, int S);

// Relative error estimate of the complete Airy trans-series at singulant F.
BigReal airy_hyper_error_full(const BigReal& F);

}  // namespace sce
