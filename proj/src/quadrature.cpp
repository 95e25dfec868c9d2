#include "sce/quadrature.hpp"

#include <cmath>
#include <optional>
#include <utility>

namespace sce {

namespace {

struct Node {
    BigReal x;
    BigReal w;
};

using NodeFn = std::function<std::optional<Node>(const BigReal&)>;

QuadratureResult de_integrate(const NodeFn& node, const RealFn& f, int digits, int max_levels)
{
    const int wd = digits + 10;
    PrecisionScope scope(wd);
    QuadratureResult res;
    BigReal tiny = pow(BigReal(10), -static_cast<long>(digits + 6));
    BigReal tol = pow(BigReal(10), -static_cast<long>(digits));

    auto term_at = [&](const BigReal& t) -> std::optional<BigReal> {
        auto n = node(t);
        if (!n)
            return std::nullopt;
        BigReal fx = f(n->x);
        ++res.evaluations;
        if (!fx.is_finite())
            return std::nullopt;
        return n->w * fx;
    };

    // Level 0 with h0 = 1/2 also fixes the truncation of the t range.
    const BigReal h0(0.5);
    BigReal sum;
    BigReal peak;
    if (auto c = term_at(BigReal(0))) {
        sum = *c;
        peak = abs(*c);
    }
    long jmax[2] = {0, 0};
    for (int dir = 0; dir < 2; ++dir) {
        int quiet = 0;
        for (long j = 1; j < 400; ++j) {
            BigReal t = h0 * (dir == 0 ? j : -j);
            auto c = term_at(t);
            if (!c)
                break;
            sum += *c;
            jmax[dir] = j;
            BigReal a = abs(*c);
            peak = max(peak, a);
            if (a <= tiny * peak) {
                if (++quiet >= 3)
                    break;
            } else {
                quiet = 0;
            }
        }
    }
    BigReal tmax = h0 * jmax[0];
    BigReal tmin = -(h0 * jmax[1]);
    BigReal estimate = h0 * sum;
    BigReal h = h0;
    for (int level = 1; level <= max_levels; ++level) {
        h = h / 2;
        BigReal added;
        long nmax = (tmax / h).to_long();
        long nmin = (tmin / h).to_long();
        for (long j = nmin; j <= nmax; ++j) {
            if ((j & 1) == 0)
                continue;
            if (auto c = term_at(h * j))
                added += *c;
        }
        sum += added;
        BigReal next = h * sum;
        BigReal diff = abs(next - estimate);
        estimate = next;
        res.levels = level;
        res.error_estimate = diff;
        if (level >= 3 && diff <= tol * abs(estimate)) {
            res.value = estimate.at_digits(digits);
            return res;
        }
    }
    throw ConvergenceError("double-exponential quadrature did not reach the requested digits");
}

}  // namespace

QuadratureResult tanh_sinh(const RealFn& f, const BigReal& a, const BigReal& b, int digits, int max_levels)
{
    const int wd = digits + 10;
    PrecisionScope scope(wd);
    BigReal aa = a.at_digits(wd);
    BigReal bb = b.at_digits(wd);
    BigReal c = (aa + bb) / 2;
    BigReal hw = (bb - aa) / 2;
    BigReal half_pi = const_pi(wd) / 2;
    NodeFn node = [=](const BigReal& t) -> std::optional<Node> {
        BigReal u = half_pi * sinh(t);
        BigReal ch = cosh(u);
        BigReal w = hw * half_pi * cosh(t) / (ch * ch);
        BigReal x;
        if (t.sign() > 0)
            x = bb - hw * 2 / (exp(2 * u) + 1);
        else if (t.sign() < 0)
            x = aa + hw * 2 / (exp(-2 * u) + 1);
        else
            x = c;
        // Nodes that round onto an endpoint keep f(endpoint); the weight there is negligible.
        if (w.is_zero())
            return std::nullopt;
        return Node{x, w};
    };
    return de_integrate(node, f, digits, max_levels);
}

QuadratureResult exp_sinh(const RealFn& f, const BigReal& a, const BigReal& scale, int digits, int max_levels)
{
    const int wd = digits + 10;
    PrecisionScope scope(wd);
    BigReal aa = a.at_digits(wd);
    BigReal s = scale.at_digits(wd);
    BigReal half_pi = const_pi(wd) / 2;
    NodeFn node = [=](const BigReal& t) -> std::optional<Node> {
        BigReal e = exp(half_pi * sinh(t));
        if (e.is_zero() || !e.is_finite())
            return std::nullopt;
        BigReal x = aa + s * e;
        return Node{x, s * half_pi * cosh(t) * e};
    };
    return de_integrate(node, f, digits, max_levels);
}

BigReal quadrature_plane(const PlaneFn& f, int digits)
{
    const int inner_digits = digits + 5;
    BigReal zero = BigReal::with_digits(inner_digits);
    BigReal one = BigReal(1).at_digits(inner_digits);
    auto line = [&](const BigReal& x) {
        RealFn g = [&](const BigReal& y) { return f(x, y) + f(x, -y); };
        return exp_sinh(g, zero, one, inner_digits).value;
    };
    RealFn outer = [&](const BigReal& x) { return line(x) + line(-x); };
    return exp_sinh(outer, zero, one, digits).value;
}

BigReal quadrature_Z(const BigReal& q, const BigReal& g, int d, int digits, Well well, bool half_line)
{
    if (d < 1)
        throw DomainError("quadrature_Z requires d >= 1");
    if (q < 0)
        throw DomainError("quadrature_Z requires q >= 0");
    if (g < 0 || (well == Well::double_well && g.sign() <= 0))
        throw DomainError("quadrature_Z integrand diverges: need g > 0 with a negative quadratic term");
    const int wd = digits + 10;
    PrecisionScope scope(wd);
    BigReal qq = q.at_digits(wd);
    BigReal gg = g.at_digits(wd);
    const int s = well == Well::single_well ? 1 : -1;
    RealFn f = [=](const BigReal& x) {
        BigReal e = BigReal(s) * x * x / 2;
        if (!gg.is_zero())
            e += gg * pow(x, qq);
        BigReal v = exp(-e);
        if (d > 1)
            v *= pow(x, static_cast<long>(d - 1));
        return v;
    };

    // Location of the maximum of the integrand: root of
    // h(x) = (d-1) - s x^2 - g q x^q, which changes sign once on (0, inf).
    BigReal peak = BigReal::with_digits(wd);
    if (d > 1 || s < 0) {
        auto h = [&](const BigReal& x) {
            BigReal v = BigReal(d - 1) - BigReal(s) * x * x;
            if (!gg.is_zero())
                v -= gg * qq * pow(x, qq);
            return v;
        };
        BigReal lo(0);
        BigReal hi(1);
        while (h(hi) > 0)
            hi *= 2;
        for (int it = 0; it < 200; ++it) {
            BigReal mid = (lo + hi) / 2;
            if (h(mid) > 0)
                lo = mid;
            else
                hi = mid;
        }
        peak = (lo + hi) / 2;
    }
    // Width of the peak sets the exp-sinh scale.
    BigReal scale(1);
    if (!gg.is_zero() && gg > 1)
        scale = pow(gg, -1 / qq);
    if (peak > 0) {
        BigReal curv = BigReal(d - 1) / (peak * peak) + BigReal(s);
        if (!gg.is_zero())
            curv += gg * qq * (qq - 1) * pow(peak, qq - 2);
        scale = 1 / sqrt(abs(curv));
    }

    BigReal total;
    if (peak > 0)
        total = tanh_sinh(f, BigReal(0), peak, digits + 3).value;
    total += exp_sinh(f, peak, scale, digits + 3).value;
    if (d == 1 && !half_line)
        total *= 2;
    return total.at_digits(digits);
}

}  // namespace sce
