#pragma once

#include <functional>

#include "sce/mp.hpp"
#include "sce/types.hpp"

namespace sce {

using RealFn = std::function<BigReal(const BigReal&)>;
using PlaneFn = std::function<BigReal(const BigReal&, const BigReal&)>;

struct QuadratureResult {
    BigReal value;
    BigReal error_estimate;  // |S_k - S_{k-1}| at the last level
    int levels = 0;
    long evaluations = 0;
};

// Double-exponential rules. Levels halve the step until two successive sums
// agree to the requested digits; ConvergenceError after max_levels.
QuadratureResult tanh_sinh(const RealFn& f, const BigReal& a, const BigReal& b, int digits, int max_levels = 16);

// Integral over [a, inf) with x = a + scale * exp(pi/2 sinh t).
QuadratureResult exp_sinh(const RealFn& f, const BigReal& a, const BigReal& scale, int digits, int max_levels = 16);

// Integral over the whole plane by nested exp-sinh rules on each half-axis.
BigReal quadrature_plane(const PlaneFn& f, int digits);

// Integral of x^(d-1) exp(-(s x^2/2 + g x^q)) over [0, inf), s = +1 for the
// single well and -1 for the double well. For d = 1 the full-line value is
// returned unless half_line is set.
BigReal quadrature_Z(const BigReal& q, const BigReal& g, int d, int digits, Well well = Well::single_well,
                     bool half_line = false);

}  // namespace sce
