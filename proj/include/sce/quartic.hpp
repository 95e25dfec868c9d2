#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sce/mp.hpp"
#include "sce/types.hpp"

namespace sce {

// M(N) as a function of the order. Linear schedules keep alpha as an exact
// rational; M stays real unless round_to_integer is set.
struct MomentSchedule {
    enum class Kind { linear, power, explicit_list };

    Kind kind = Kind::linear;
    long alpha_num = 4;
    long alpha_den = 3;
    BigReal p;
    BigReal coeff;
    std::vector<BigReal> values;  // explicit: M for N = 0, 1, ...
    bool round_to_integer = false;

    static MomentSchedule linear(long num, long den = 1);
    static MomentSchedule power(const BigReal& p, const BigReal& coeff = BigReal(1));
    static MomentSchedule explicit_list(std::vector<BigReal> m);

    // "4/3" or "1.5" for linear, "pow:2.5" or "pow:2.5:0.5" for power laws.
    static MomentSchedule parse(const std::string& text);

    BigReal alpha(int digits = 0) const;
    BigReal M(int N, int digits = 0) const;
    std::string description() const;
};

struct QuarticSCEParams {
    BigReal g;
    int N = 0;
    BigReal M;
    Well well = Well::single_well;
    PrecisionPolicy precision = PrecisionPolicy::for_target(30);
};

enum class InnerSum { direct, kummer };

// Self-consistent harmonic coefficients, G(G-1) = 4g(M+2) on the single-well
// branch and G(G+1) = 4g(M+2) on the double-well branch.
BigReal g_selfconsistent(const BigReal& M, const BigReal& g);
BigReal g_selfconsistent_dw(const BigReal& M, const BigReal& g);

// Partial sum Z^(N). The working precision starts at params.precision and is
// raised once to four times the target when the largest summand exceeds the
// digit budget; PrecisionExhausted if that is still not enough.
SCEEvaluation sce_partition_quartic(const QuarticSCEParams& params, InnerSum inner = InnerSum::direct);

// Inner coefficient S_{n,K} in the alternating finite form and in the
// positive-tail form obtained from the Kummer transformation.
BigReal sce_coefficient_direct(int n, const BigReal& K, int digits);
BigReal sce_coefficient_kummer(int n, const BigReal& K, int digits);
// Both forms; returns the transformed one and throws Error if they differ
// beyond the requested digits.
BigReal sce_coefficient(int n, const BigReal& K, int digits);

// Closed forms of the full-line integrals.
BigReal exact_Z_quartic(const BigReal& g, int digits);
BigReal exact_Z_quartic_dw(const BigReal& g, int digits);

// Rigorous bound on |Z^(N) - Z| for the single well, and the looser form with
// (1 - 1/G) and 2/G replaced by their g -> infinity limits.
BigReal error_bound_quartic(int N, const BigReal& M, const BigReal& g);
BigReal error_bound_quartic_gfree(int N, const BigReal& M);

BigReal Q2B(const BigReal& alpha);
BigReal rate_bound_A(const BigReal& alpha);
BigReal alpha_critical_quartic(int digits = 30);
BigReal alpha_star_quartic(int digits = 30);

BigReal dw_critical_order(const BigReal& alpha, const BigReal& g);

// Peaks of the transformed coefficient summand and their large-N rates.
std::pair<BigReal, BigReal> coefficient_peak_indices(int n, const BigReal& K);
std::pair<BigReal, BigReal> lnQ_limits(const BigReal& alpha);  // (ln Q-, ln Q+)
BigReal appendix_alpha_critical(int digits = 30);
std::pair<BigReal, BigReal> appendix_alpha_star(int digits = 30);  // (alpha, -log10 Q)

enum class PropositionCase { alternating_divergence, convergent, decays_to_zero, inconclusive };

struct PropositionResult {
    PropositionCase kind = PropositionCase::inconclusive;
    std::vector<int> orders;
    std::vector<BigReal> ratios;  // Z^(N) / Z
    double loglog_slope = 0;      // d log|Z^(N)| / d log N over the window
    double sign_alternation = 0;  // fraction of neighbouring errors with opposite sign
    std::string summary;
};

// Empirical classification of Z^(N) for N in [N_min, N_max].
PropositionResult proposition_case_check(const MomentSchedule& schedule, const BigReal& g, int N_max,
                                         int N_min = -1, int target_digits = 20);

std::string to_string(PropositionCase c);

// Bisection for a sign change of f on [lo, hi] down to tol.
template <class F>
BigReal bisect(F f, BigReal lo, BigReal hi, const BigReal& tol)
{
    BigReal flo = f(lo);
    BigReal fhi = f(hi);
    if (flo.sign() * fhi.sign() > 0)
        throw BracketFailure("no sign change on [" + lo.str(10) + ", " + hi.str(10) + "]");
    while (hi - lo > tol) {
        BigReal mid = (lo + hi) / 2;
        if (mid == lo || mid == hi)
            break;
        BigReal fm = f(mid);
        if (fm.sign() == 0)
            return mid;
        if (fm.sign() * flo.sign() > 0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return (lo + hi) / 2;
}

}  // namespace sce
