#include "sce/kernel.hpp"

#include <limits>

#include "sce/special.hpp"

namespace sce {

KernelResult sce_kernel(const BigReal& prefactor, const BigReal& x, const BigReal& a, const BigReal& r,
                        const BigReal& K, int N)
{
    if (N < 0)
        throw DomainError("SCE order must be non-negative");
    int wd = std::max({prefactor.precision_digits(), x.precision_digits(), K.precision_digits()});
    PrecisionScope scope(wd);
    KernelResult res;
    res.terms.reserve(N + 1);

    // gl[l] holds Gamma(a + n + r l) for the current n.
    std::vector<BigReal> gl;
    gl.reserve(N + 1);
    BigReal nfact(1);
    BigReal xn(1);
    BigReal largest;
    for (int n = 0; n <= N; ++n) {
        if (n > 0) {
            for (int l = 0; l < n; ++l)
                gl[l] *= a + (n - 1) + r * l;
            nfact *= n;
            xn *= x;
        }
        gl.push_back(gamma(a + n + r * n));

        BigReal c(1);  // (-1)^l C(n,l) / K^l
        BigReal s;
        BigReal biggest;
        for (int l = 0; l <= n; ++l) {
            if (l > 0)
                c = -(c * (n - l + 1)) / (K * l);
            BigReal t = c * gl[l];
            s += t;
            biggest = max(biggest, abs(t));
        }
        BigReal scale = prefactor * xn / nfact;
        BigReal term = scale * s;
        res.terms.push_back(term);
        res.sum += term;
        largest = max(largest, abs(scale) * biggest);
    }
    if (res.sum.is_zero())
        res.digits_lost = std::numeric_limits<double>::infinity();
    else
        res.digits_lost = std::max(0.0, log10_abs(largest) - log10_abs(res.sum));
    return res;
}

}  // namespace sce
