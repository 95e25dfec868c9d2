#pragma once

#include <functional>
#include <vector>

#include "sce/mp.hpp"
#include "sce/types.hpp"

namespace sce {

struct GeneralQParams {
    BigReal q;
    BigReal g;
    int N = 0;
    BigReal M;
    PrecisionPolicy precision = PrecisionPolicy::for_target(30);
};

// C_q(M) = Gamma(M + q/2 + 1/2)/Gamma(M + 1/2) - Gamma(q/2 + 1/2)/Gamma(1/2).
BigReal c_q(const BigReal& M, const BigReal& q);

// K = (C_q(M)/M)^(1/r) with r = q/2 - 1; exactly M + 2 for q = 4. At M = 0
// the ratio is replaced by its limit C_q'(0).
BigReal K_of_M(const BigReal& q, const BigReal& M);

// Root G > 1 of (G/2)^(q/2) - (G/2)^(q/2-1)/2 - g C_q(M)/M = 0. The q = 4
// case is the closed form shared with the quartic module.
BigReal solve_G_general(const BigReal& q, const BigReal& M, const BigReal& g);

// The three asymptotic estimates used as seeds: large M, small g C_q/M and
// the G ~ 1 form.
BigReal G_seed_large_M(const BigReal& q, const BigReal& M, const BigReal& g);
BigReal G_seed_small_coupling(const BigReal& q, const BigReal& M, const BigReal& g);
BigReal G_seed_near_one(const BigReal& q, const BigReal& M, const BigReal& g);

SCEEvaluation sce_partition_general(const GeneralQParams& params);

// Tangent point v0 in (0, N'/K) solving K/N' + r v0^(r-1) = 1/v0 (r >= 1).
BigReal tangent_point_v0(const BigReal& K_over_N, const BigReal& r);
// Large-order quotients with K/N' -> alpha. Q1 is alpha/(alpha+1) for r <= 1.
BigReal Q1_general(const BigReal& alpha, const BigReal& r);
// Q2 is the D2B quotient scaled by r for r <= 1 and the factorial quotient for r > 1.
BigReal Q2_general(const BigReal& alpha, const BigReal& r);

// Rigorous bound on |Z^(N) - Z|; +inf where the r > 1 geometric series diverges.
BigReal error_bound_general(const BigReal& q, int N, const BigReal& M, const BigReal& g);

BigReal critical_alpha(const BigReal& q, int digits = 30);

struct OptimalAlpha {
    BigReal alpha_star;
    BigReal Q_star;
    BigReal log10_Q_star;  // negative
};
OptimalAlpha optimal_alpha(const BigReal& q, int digits = 30);

struct LargeRAsymptotics {
    BigReal alpha_c;      // (r + ln r + 1)/e
    BigReal one_minus_Q;  // (1/(e r)) (e/r)^r
};
LargeRAsymptotics large_r_asymptotics(const BigReal& r);
// exp(-1/(r^2 + alpha^r)): the large-r estimate of Q1 at a given alpha.
BigReal Q1_large_r(const BigReal& alpha, const BigReal& r);

// Radial partition function Z_NN(g) = int_0^inf x^NN exp(-x^2/2 - g x^4) dx
// and its SCE with K = M + NN + 2.
SCEEvaluation sce_partition_radial(int NN, int N, const BigReal& M, const BigReal& g,
                                   const PrecisionPolicy& precision = PrecisionPolicy::for_target(30));

struct RadialParams {
    int NN = 2;
    // Quadratic and quartic coefficients along the unit vector omega.
    std::function<BigReal(const std::vector<BigReal>&)> gamma_form;
    std::function<BigReal(const std::vector<BigReal>&)> quartic_form;
    BigReal beta;
    int initial_nodes = 8;
    int max_nodes = 512;
};

// Xi^(N) by product quadrature over the angles (Gauss-Legendre in the polar
// angles, trapezoid in the azimuth), doubling the node count until the target
// digits stabilise.
BigReal xi_many_body(const RadialParams& params, int N, const BigReal& M,
                     const PrecisionPolicy& precision = PrecisionPolicy::for_target(30));

// Same angular quadrature applied to the exact radial integral.
BigReal xi_exact(const RadialParams& params, int digits);

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<BigReal> nodes;
    std::vector<BigReal> weights;
};
const GaussLegendre& gauss_legendre(int n, int digits);

}  // namespace sce
