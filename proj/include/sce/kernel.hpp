#pragma once

#include <vector>

#include "sce/mp.hpp"

namespace sce {

struct KernelResult {
    std::vector<BigReal> terms;  // prefactor * x^n * S_n for n = 0..N
    BigReal sum;
    double digits_lost = 0;  // log10(max |summand| / |sum|)
};

// prefactor * sum_{n<=N} x^n sum_{l<=n} (-1)^l C(n,l) Gamma(a + n + r l) / (n! K^l)
// evaluated at the precision of the arguments. Shared by the quartic, the
// general-q and the radial expansions so that coinciding parameters give
// identical sums.
KernelResult sce_kernel(const BigReal& prefactor, const BigReal& x, const BigReal& a, const BigReal& r,
                        const BigReal& K, int N);

}  // namespace sce
