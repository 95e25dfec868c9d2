#pragma once

#include <vector>

#include "sce/complex.hpp"
#include "sce/mp.hpp"

namespace sce {

enum class Well { single_well, double_well };

// Result of one SCE partial sum. value is the sum of terms in order at the
// working precision; real problems leave the imaginary parts at zero.
struct SCEEvaluation {
    BigComplex value;
    std::vector<BigComplex> terms;
    BigComplex G;
    BigComplex K;
    BigReal remainder_bound;  // +inf when no bound applies
    BigReal alpha;            // M / N, zero for N = 0
    BigReal q;
    Well well = Well::single_well;
    int order = 0;
    int target_digits = 0;
    int working_digits = 0;
    double digits_lost = 0;  // log10 of the largest summand over |value|

    BigReal real() const { return value.re(); }
};

}  // namespace sce
