#include "sce/general.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "sce/kernel.hpp"
#include "sce/quadrature.hpp"
#include "sce/quartic.hpp"
#include "sce/special.hpp"

namespace sce {

namespace {

BigReal infinity_at(int digits)
{
    BigReal r = BigReal::with_digits(digits);
    mpfr_set_inf(r.raw(), 1);
    return r;
}

BigReal digamma(const BigReal& x)
{
    BigReal r = x;
    mpfr_digamma(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

bool is_quartic(const BigReal& q) { return q == 4; }

void require_q(const BigReal& q)
{
    if (q <= 2)
        throw DomainError("the anharmonic power must satisfy q > 2");
}

}  // namespace

BigReal c_q(const BigReal& M, const BigReal& q)
{
    require_q(q);
    if (M < 0)
        throw DomainError("c_q requires M >= 0");
    int digits = std::max(M.precision_digits(), q.precision_digits());
    if (is_quartic(q))
        return M * M + 2 * M;
    if (M.is_zero())
        return BigReal::with_digits(digits);
    // The difference of log-gammas cancels about log10(M) digits.
    int wd = digits + 10 + static_cast<int>(std::ceil(std::log10(M.to_double() + 1)));
    PrecisionScope scope(wd);
    BigReal m = M.at_digits(wd);
    BigReal h = q.at_digits(wd) / 2;
    BigReal half(0.5);
    BigReal ratio = exp(lgamma_abs(m + h + half) - lgamma_abs(m + half));
    BigReal base = gamma(h + half) / gamma(half);
    return (ratio - base).at_digits(digits);
}

BigReal K_of_M(const BigReal& q, const BigReal& M)
{
    require_q(q);
    if (M < 0)
        throw DomainError("K_of_M requires M >= 0");
    if (is_quartic(q))
        return M + 2;
    int digits = std::max(M.precision_digits(), q.precision_digits());
    PrecisionScope scope(digits);
    BigReal r = q / 2 - 1;
    BigReal ratio;
    if (M.is_zero()) {
        BigReal h = q / 2 + BigReal(0.5);
        ratio = gamma(h) / gamma(BigReal(0.5)) * (digamma(h) - digamma(BigReal(0.5)));
    } else {
        ratio = c_q(M, q) / M;
    }
    return pow(ratio, 1 / r);
}

BigReal G_seed_large_M(const BigReal& q, const BigReal& M, const BigReal& g)
{
    return 2 * pow(g, 2 / q) * pow(M, 1 - 2 / q) + 2 / q;
}

BigReal G_seed_small_coupling(const BigReal& q, const BigReal& M, const BigReal& g)
{
    BigReal inv = 1 / (q - 2);
    BigReal c = M.is_zero() ? pow(K_of_M(q, M), q / 2 - 1) : c_q(M, q) / M;
    return 1 - inv + sqrt(inv * inv + pow(BigReal(2), 1 + q / 2) * g * c / (q - 2));
}

BigReal G_seed_near_one(const BigReal& q, const BigReal& M, const BigReal& g)
{
    return 1 + pow(BigReal(2), q / 2) * g * pow(M, q / 2 - 1);
}

BigReal solve_G_general(const BigReal& q, const BigReal& M, const BigReal& g)
{
    require_q(q);
    if (M < 0 || g < 0)
        throw DomainError("solve_G_general requires M >= 0 and g >= 0");
    if (is_quartic(q))
        return g_selfconsistent(M, g);
    int digits = std::max({M.precision_digits(), q.precision_digits(), g.precision_digits()});
    PrecisionScope scope(digits);
    if (g.is_zero())
        return BigReal(1);
    BigReal h = q / 2;
    BigReal c = g * pow(K_of_M(q, M), h - 1);  // g C_q(M) / M
    auto f = [&](const BigReal& G) {
        BigReal u = G / 2;
        return pow(u, h) - pow(u, h - 1) / 2 - c;
    };
    auto df = [&](const BigReal& G) {
        BigReal u = G / 2;
        return (h * pow(u, h - 1) - (h - 1) * pow(u, h - 2) / 2) / 2;
    };
    // f(1) = -c < 0 and f increases on G >= 1.
    BigReal lo(1);
    std::vector<BigReal> seeds;
    seeds.push_back(G_seed_small_coupling(q, M, g));
    if (M > 0) {
        seeds.push_back(G_seed_large_M(q, M, g));
        seeds.push_back(G_seed_near_one(q, M, g));
    }
    BigReal hi = lo;
    for (const auto& s : seeds)
        hi = max(hi, s);
    hi = 2 * hi + 1;
    for (int i = 0; f(hi) <= 0; ++i) {
        hi *= 2;
        if (i > 2000)
            throw BracketFailure("could not bracket the self-consistent G");
    }
    BigReal x = seeds.front();
    BigReal best = abs(f(x));
    for (const auto& s : seeds) {
        if (s <= lo || s >= hi)
            continue;
        BigReal v = abs(f(s));
        if (v < best || x <= lo || x >= hi) {
            best = v;
            x = s;
        }
    }
    if (x <= lo || x >= hi)
        x = (lo + hi) / 2;
    BigReal tol = pow(BigReal(10), -static_cast<long>(digits - 2));
    for (int it = 0; it < 2000; ++it) {
        BigReal fx = f(x);
        if (fx.is_zero())
            return x;
        if (fx < 0)
            lo = x;
        else
            hi = x;
        BigReal next = x - fx / df(x);
        if (next <= lo || next >= hi)
            next = (lo + hi) / 2;
        if (abs(next - x) <= tol * abs(next))
            return next;
        x = next;
    }
    throw BracketFailure("self-consistent G iteration did not settle");
}

namespace {

SCEEvaluation general_at(const GeneralQParams& p, int wd)
{
    PrecisionScope scope(wd);
    BigReal q = p.q.at_digits(wd);
    BigReal g = p.g.at_digits(wd);
    BigReal M = p.M.at_digits(wd);
    BigReal r = q / 2 - 1;
    BigReal K = K_of_M(q, M);
    BigReal base = is_quartic(q) ? K : pow(K, r);  // C_q(M)/M
    BigReal G = solve_G_general(q, M, g);
    BigReal x = 1 - 1 / G;
    BigReal pref = sqrt(2 / G);
    KernelResult k = sce_kernel(pref, x, BigReal(0.5), r, base, p.N);

    SCEEvaluation ev;
    for (auto& t : k.terms)
        ev.terms.emplace_back(t);
    ev.value = BigComplex(k.sum);
    ev.digits_lost = k.digits_lost;
    ev.G = BigComplex(G);
    ev.K = BigComplex(K);
    ev.q = q;
    ev.order = p.N;
    ev.alpha = p.N > 0 ? M / p.N : BigReal::with_digits(wd);
    ev.target_digits = p.precision.target_digits;
    ev.working_digits = wd;
    ev.remainder_bound = M > 0 ? error_bound_general(q, p.N, M, g) : infinity_at(wd);
    return ev;
}

template <class Eval>
SCEEvaluation with_escalation(PrecisionPolicy pol, int N, Eval eval)
{
    for (;;) {
        SCEEvaluation ev = eval(pol.working_digits);
        if (ev.digits_lost <= pol.working_digits - pol.target_digits)
            return ev;
        PrecisionPolicy next = pol.escalated();
        if (next.working_digits <= pol.working_digits) {
            std::ostringstream os;
            os << "cancellation consumed " << ev.digits_lost << " digits at " << pol.working_digits
               << " working digits (N = " << N << ")";
            throw PrecisionExhausted(os.str());
        }
        pol = next;
    }
}

}  // namespace

SCEEvaluation sce_partition_general(const GeneralQParams& params)
{
    require_q(params.q);
    if (params.N < 0 || params.M < 0 || params.g < 0)
        throw DomainError("sce_partition_general requires N, M, g >= 0");
    return with_escalation(params.precision, params.N, [&](int wd) { return general_at(params, wd); });
}

BigReal tangent_point_v0(const BigReal& K_over_N, const BigReal& r)
{
    if (K_over_N <= 0 || r < 1)
        throw DomainError("tangent_point_v0 requires K/N' > 0 and r >= 1");
    int digits = std::max(K_over_N.precision_digits(), r.precision_digits());
    PrecisionScope scope(digits);
    BigReal kn = K_over_N.at_digits(digits);
    BigReal rr = r.at_digits(digits);
    auto h = [&](const BigReal& v) { return kn + rr * pow(v, rr - 1) - 1 / v; };
    BigReal hi = 1 / kn;
    BigReal lo = hi / 2;
    while (h(lo) > 0)
        lo /= 2;
    BigReal tol = hi * pow(BigReal(10), -static_cast<long>(digits - 2));
    return bisect(h, lo, hi, tol);
}

BigReal Q1_general(const BigReal& alpha, const BigReal& r)
{
    if (alpha <= 0)
        throw DomainError("Q1_general requires alpha > 0");
    if (r <= 1)
        return alpha / (alpha + 1);
    BigReal v = tangent_point_v0(alpha, r);
    BigReal av = alpha * v;
    return av * exp((r - 1) / r * (1 - av));
}

BigReal Q2_general(const BigReal& alpha, const BigReal& r)
{
    if (alpha <= 0 || r <= 0)
        throw DomainError("Q2_general requires alpha > 0 and r > 0");
    if (r <= 1)
        return r * Q2B(alpha);
    BigReal e = exp(BigReal(1).at_digits(alpha.precision_digits()));
    return pow(alpha, -r) * pow((r + 1) / e, r + 1) * e;
}

BigReal error_bound_general(const BigReal& q, int N, const BigReal& M, const BigReal& g)
{
    require_q(q);
    if (N < 0 || M <= 0 || g < 0)
        throw DomainError("error_bound_general requires N >= 0, M > 0, g >= 0");
    int digits = std::max({q.precision_digits(), M.precision_digits(), g.precision_digits()});
    PrecisionScope scope(digits);
    BigReal r = q / 2 - 1;
    BigReal K = K_of_M(q, M);
    BigReal G = solve_G_general(q, M, g);
    if (is_quartic(q))
        return error_bound_quartic(N, M, g);
    int Np = N + 1;
    BigReal n(Np);
    BigReal pref = sqrt(2 / G) * pow(1 - 1 / G, static_cast<long>(Np));
    if (r <= 1) {
        BigReal d1 = sqrt(K * K / (n * n * n)) * pow(K / (K + n), n - BigReal(0.5));
        BigReal two_n = 2 * n;
        BigReal d2a = pow(BigReal(2), static_cast<long>(Np)) * exp(-K) / sqrt(2 * K);
        BigReal d2b = 2 / sqrt(K) * pow(two_n, static_cast<long>(Np)) / factorial(Np) *
                      pow(two_n / K + 1, static_cast<long>(Np + 1)) * exp(-two_n - K / 2 - K * K / (two_n + K));
        return pref * (d1 + pow(r, static_cast<long>(Np)) * (d2a + d2b));
    }
    BigReal v0 = tangent_point_v0(K / n, r);
    BigReal kv = K * v0 / n;
    BigReal Q1 = kv * exp((r - 1) / r * (1 - kv));
    if (Q1 >= 1)
        return infinity_at(digits);
    BigReal d1 = sqrt(K * v0 / (n * n)) * pow(Q1, static_cast<long>(Np)) / (1 - Q1);
    BigReal d2 = exp(lgamma_abs((r + 1) * n + 1) - lgamma_abs(n + 1) - r * n * log(K));
    return pref * (d1 + d2);
}

BigReal critical_alpha(const BigReal& q, int digits)
{
    require_q(q);
    PrecisionScope scope(digits);
    BigReal r = q.at_digits(digits) / 2 - 1;
    if (r > 1)
        return pow(r + 1, 1 + 1 / r) / exp(BigReal(1));
    return bisect([&](const BigReal& a) { return Q2_general(a, r) - 1; }, BigReal("0.001"), BigReal(10),
                  BigReal("1e-12"));
}

OptimalAlpha optimal_alpha(const BigReal& q, int digits)
{
    PrecisionScope scope(digits);
    BigReal r = q.at_digits(digits) / 2 - 1;
    BigReal ac = critical_alpha(q, digits);
    BigReal a = bisect([&](const BigReal& x) { return Q2_general(x, r) - Q1_general(x, r); }, ac, 10 * ac + 10,
                       BigReal("1e-12"));
    OptimalAlpha o;
    o.alpha_star = a;
    o.Q_star = Q1_general(a, r);
    o.log10_Q_star = log10(o.Q_star);
    return o;
}

LargeRAsymptotics large_r_asymptotics(const BigReal& r)
{
    if (r <= 0)
        throw DomainError("large_r_asymptotics requires r > 0");
    BigReal e = exp(BigReal(1).at_digits(r.precision_digits()));
    LargeRAsymptotics a;
    a.alpha_c = (r + log(r) + 1) / e;
    a.one_minus_Q = pow(e / r, r) / (e * r);
    return a;
}

BigReal Q1_large_r(const BigReal& alpha, const BigReal& r) { return exp(-1 / (r * r + pow(alpha, r))); }

SCEEvaluation sce_partition_radial(int NN, int N, const BigReal& M, const BigReal& g, const PrecisionPolicy& precision)
{
    if (NN < 0 || N < 0 || M < 0 || g < 0)
        throw DomainError("sce_partition_radial requires NN, N, M, g >= 0");
    return with_escalation(precision, N, [&](int wd) {
        PrecisionScope scope(wd);
        BigReal m = M.at_digits(wd);
        BigReal gg = g.at_digits(wd);
        BigReal K = m + NN + 2;
        BigReal G = g_selfconsistent(m + NN, gg);  // G(G-1) = 4 g (M + NN + 2)
        BigReal a = BigReal(NN + 1) / 2;
        BigReal pref = pow(2 / G, a) / 2;
        KernelResult k = sce_kernel(pref, 1 - 1 / G, a, BigReal(1), K, N);
        SCEEvaluation ev;
        for (auto& t : k.terms)
            ev.terms.emplace_back(t);
        ev.value = BigComplex(k.sum);
        ev.digits_lost = k.digits_lost;
        ev.G = BigComplex(G);
        ev.K = BigComplex(K);
        ev.q = BigReal(4);
        ev.order = N;
        ev.alpha = N > 0 ? m / N : BigReal::with_digits(wd);
        ev.target_digits = precision.target_digits;
        ev.working_digits = wd;
        ev.remainder_bound = infinity_at(wd);
        return ev;
    });
}

const GaussLegendre& gauss_legendre(int n, int digits)
{
    if (n < 1)
        throw DomainError("Gauss-Legendre rule needs at least one node");
    thread_local std::map<std::pair<int, int>, GaussLegendre> cache;
    auto key = std::make_pair(n, digits);
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    int wd = digits + 10;
    PrecisionScope scope(wd);
    GaussLegendre rule;
    BigReal pi = const_pi(wd);
    BigReal tol = pow(BigReal(10), -static_cast<long>(wd - 3));
    for (int i = 1; i <= n; ++i) {
        BigReal x = cos(pi * (BigReal(i) - BigReal(0.25)) / (BigReal(n) + BigReal(0.5)));
        BigReal dp;
        for (int it2 = 0; it2 < 200; ++it2) {
            BigReal p0(1);
            BigReal p1 = x;
            for (int k = 2; k <= n; ++k) {
                BigReal p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p1 = x;
                p0 = BigReal(1);
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            BigReal dx = p1 / dp;
            x -= dx;
            if (abs(dx) <= tol)
                break;
        }
        rule.nodes.push_back(x.at_digits(digits));
        rule.weights.push_back((2 / ((1 - x * x) * dp * dp)).at_digits(digits));
    }
    return cache.emplace(key, std::move(rule)).first->second;
}

namespace {

// Integral over the unit sphere in NN dimensions of f(omega): Gauss-Legendre
// in each polar angle and the periodic trapezoid rule in the azimuth, n nodes
// per angle.
BigReal sphere_rule(int NN, int n, int digits, const std::function<BigReal(const std::vector<BigReal>&)>& f)
{
    PrecisionScope scope(digits);
    if (NN == 1)
        return f({BigReal(1)}) + f({BigReal(-1)});
    const GaussLegendre& gl = gauss_legendre(n, digits);
    BigReal pi = const_pi(digits);
    int polar = NN - 2;
    std::vector<int> idx(NN - 1, 0);
    BigReal total;
    for (;;) {
        BigReal w(1);
        std::vector<BigReal> omega(NN);
        BigReal sprod(1);
        for (int k = 0; k < polar; ++k) {
            BigReal th = pi * (gl.nodes[idx[k]] + 1) / 2;
            w *= gl.weights[idx[k]] * pi / 2 * pow(sin(th), static_cast<long>(NN - 2 - k));
            omega[k] = sprod * cos(th);
            sprod *= sin(th);
        }
        BigReal ph = 2 * pi * idx[polar] / n;
        w *= 2 * pi / n;
        omega[NN - 2] = sprod * cos(ph);
        omega[NN - 1] = sprod * sin(ph);
        total += w * f(omega);
        int k = 0;
        while (k < NN - 1 && ++idx[k] == n)
            idx[k++] = 0;
        if (k == NN - 1)
            break;
    }
    return total;
}

BigReal angular_integral(const RadialParams& p, int digits,
                         const std::function<BigReal(const BigReal&, const BigReal&)>& radial)
{
    if (p.NN < 1)
        throw DomainError("radial problems need NN >= 1");
    if (p.beta <= 0)
        throw DomainError("beta must be positive");
    auto f = [&](const std::vector<BigReal>& omega) {
        BigReal gm = p.gamma_form(omega);
        if (gm <= 0)
            throw DomainError("quadratic form is not positive along a quadrature direction");
        BigReal gq = p.quartic_form(omega);
        if (gq < 0)
            throw DomainError("quartic form is negative along a quadrature direction");
        BigReal bg = p.beta * gm;
        return pow(bg, BigReal(-p.NN) / 2) * radial(gq / (bg * gm), bg);
    };
    if (p.NN == 1)
        return sphere_rule(1, 1, digits + 5, f);
    // Nodes carry five guard digits beyond the stopping tolerance.
    int wd = digits + 5;
    BigReal tol = pow(BigReal(10).at_digits(wd), -static_cast<long>(digits));
    BigReal prev = sphere_rule(p.NN, p.initial_nodes, wd, f);
    for (int n = 2 * p.initial_nodes; n <= p.max_nodes; n *= 2) {
        BigReal cur = sphere_rule(p.NN, n, wd, f);
        if (abs(cur - prev) <= tol * abs(cur))
            return cur;
        prev = cur;
    }
    throw ConvergenceError("angular quadrature did not stabilise");
}

}  // namespace

BigReal xi_many_body(const RadialParams& params, int N, const BigReal& M, const PrecisionPolicy& precision)
{
    int digits = precision.target_digits;
    auto radial = [&](const BigReal& g, const BigReal&) {
        return sce_partition_radial(params.NN - 1, N, M, g, precision).real().at_digits(digits + 5);
    };
    return angular_integral(params, digits, radial).at_digits(digits);
}

BigReal xi_exact(const RadialParams& params, int digits)
{
    int wd = digits + 5;
    auto radial = [&](const BigReal& g, const BigReal&) {
        return quadrature_Z(BigReal(4), g.at_digits(wd), params.NN, wd, Well::single_well, true);
    };
    return angular_integral(params, digits, radial).at_digits(digits);
}

}  // namespace sce
