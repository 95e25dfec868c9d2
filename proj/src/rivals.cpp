#include "sce/rivals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sce/quadrature.hpp"
#include "sce/quartic.hpp"
#include "sce/special.hpp"

namespace sce {

namespace {

void require_quartic_coupling(const BigComplex& g)
{
    if (!g.im().is_zero() || g.re() <= 0)
        throw DomainError("the quartic methods require a real coupling g > 0");
}

void require_airy_coupling(const BigComplex& z)
{
    if (z.is_zero())
        throw DomainError("the Airy methods require z != 0");
    if (abs(arg(z)) >= const_pi(z.precision_digits()))
        throw DomainError("arg z = pi is outside the domain of the Airy series");
}

void require_coupling(Problem problem, const BigComplex& c)
{
    if (problem == Problem::quartic_Z)
        require_quartic_coupling(c);
    else
        require_airy_coupling(c);
}

// Evaluates fn at increasing working precision until two evaluations agree
// to target + 2 digits; returns the more precise one.
template <class Fn>
BigComplex converged(int target, Fn fn)
{
    int wd = target + 20;
    BigComplex prev = fn(wd);
    for (;;) {
        int next = wd + std::max(10, wd / 2);
        if (next > 20000)
            throw PrecisionExhausted("no agreement between working precisions up to " + std::to_string(wd));
        BigComplex cur = fn(next);
        if (-log10_abs(rel_diff(cur, prev)) >= target + 2)
            return cur.at_digits(target);
        prev = cur;
        wd = next;
    }
}

// int_0^inf v^(M-1) e^-v / (1 + v/F) dv for complex F off the negative axis.
BigComplex stieltjes_moment(int M, const BigComplex& F, int digits)
{
    PrecisionScope scope(digits + 5);
    BigReal scale = BigReal(std::max(M, 1));
    auto part = [&](bool imag) {
        RealFn f = [&, imag](const BigReal& v) {
            BigComplex w = exp(-v) * pow(v, static_cast<long>(M - 1)) / (1 + BigComplex(v) / F);
            return imag ? w.im() : w.re();
        };
        return exp_sinh(f, BigReal(0), scale, digits + 3).value;
    };
    BigReal re = part(false);
    BigReal im = F.im().is_zero() ? BigReal::with_digits(digits + 5) : part(true);
    return BigComplex(re, im);
}

BigComplex horner(const std::vector<BigReal>& c, const BigComplex& u)
{
    BigComplex acc = BigComplex(BigReal::with_digits(u.precision_digits()));
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * u + BigComplex(*it);
    return acc;
}

int nearest_int(const BigReal& x)
{
    return static_cast<int>(round(x).to_long());
}

}  // namespace

std::string to_string(Problem p)
{
    return p == Problem::quartic_Z ? "quartic" : "airy";
}

SeriesCoefficients series_coefficients(Problem problem, int order, int digits)
{
    if (order < 0)
        throw DomainError("series order must be >= 0");
    PrecisionScope scope(digits);
    SeriesCoefficients out{problem, {}, order};
    out.coeffs.reserve(order + 1);
    if (problem == Problem::quartic_Z) {
        // sqrt(2) (-4)^n Gamma(2n + 1/2) / n!
        BigReal a = sqrt(2 * const_pi(digits));
        for (int n = 0; n <= order; ++n) {
            out.coeffs.push_back(a);
            a = a * BigReal(-4) * BigReal(4 * n + 1) * BigReal(4 * n + 3) / (4 * (n + 1));
        }
    } else {
        // (-1)^n Gamma(3n + 1/2) / (9^n (2n)!)
        BigReal a = sqrt(const_pi(digits));
        for (int n = 0; n <= order; ++n) {
            out.coeffs.push_back(a);
            BigReal num = BigReal(6 * n + 1) * BigReal(6 * n + 3) * BigReal(6 * n + 5);
            a = -a * num / (BigReal(72) * BigReal(2 * n + 1) * BigReal(2 * n + 2));
        }
    }
    return out;
}

BigComplex expansion_variable(Problem problem, const BigComplex& coupling)
{
    require_coupling(problem, coupling);
    if (problem == Problem::quartic_Z)
        return coupling;
    return 1 / (coupling * sqrt(coupling));
}

BigComplex singulant(Problem problem, const BigComplex& coupling)
{
    require_coupling(problem, coupling);
    if (problem == Problem::quartic_Z)
        return BigComplex(1 / (16 * coupling.re()));
    return coupling * sqrt(coupling) * BigReal(4) / BigReal(3);
}

BigComplex physical_value(Problem problem, const BigComplex& coupling, const BigComplex& series_value)
{
    if (problem == Problem::quartic_Z)
        return series_value;
    int d = coupling.precision_digits();
    BigComplex z32 = coupling * sqrt(coupling);
    BigComplex zq = sqrt(sqrt(coupling));
    return series_value * exp(-z32 * BigReal(2) / BigReal(3)) / (zq * (2 * const_pi(d)));
}

BigComplex exact_value(Problem problem, const BigComplex& coupling, int digits)
{
    require_coupling(problem, coupling);
    if (problem == Problem::quartic_Z)
        return BigComplex(exact_Z_quartic(coupling.re(), digits));
    return airy_reference(coupling, digits);
}

SuperasymptoticResult superasymptotic(Problem problem, const BigComplex& coupling, int digits)
{
    const int wd = digits + 10;
    PrecisionScope scope(wd);
    BigComplex c = coupling.at_digits(wd);
    BigReal F = abs(singulant(problem, c));
    SuperasymptoticResult out;
    if (F < 1) {
        out.trivial = true;
        out.N0 = 0;
    } else if (problem == Problem::quartic_Z) {
        // Index where successive terms stop decreasing.
        BigReal g = c.re();
        out.N0 = nearest_int((sqrt(64 * g * g + 32 * g + 1) - 16 * g + 1) / (32 * g));
    } else {
        out.N0 = nearest_int(F);
    }
    auto a = series_coefficients(problem, out.N0, wd).coeffs;
    BigComplex x = expansion_variable(problem, c);
    BigComplex sum = BigComplex(BigReal::with_digits(wd));
    BigComplex xn = BigComplex(BigReal(1).at_digits(wd));
    for (int n = 0; n <= out.N0; ++n) {
        sum += xn * a[n];
        xn *= x;
    }
    out.value = physical_value(problem, c, sum).at_digits(digits);
    return out;
}

BigReal borel_tail(const BigReal& g_in, int N0, int digits, BorelKernel kernel)
{
    if (g_in <= 0)
        throw DomainError("borel_tail requires g > 0");
    if (N0 < -1)
        throw DomainError("borel_tail requires N0 >= -1");
    const int wd = digits + 15;
    PrecisionScope scope(wd);
    BigReal g = g_in.at_digits(wd);
    BigReal head = BigReal::with_digits(wd);
    if (N0 >= 0) {
        auto a = series_coefficients(Problem::quartic_Z, N0, wd).coeffs;
        BigReal gn = BigReal(1).at_digits(wd);
        for (int n = 0; n <= N0; ++n) {
            head += a[n] * gn;
            gn *= g;
        }
    }
    BigReal tail;
    if (kernel == BorelKernel::exact) {
        // t = u^2: 2 sqrt(2) int_0^inf e^-u^2 [exp(-4 g u^4) - sum_{n<=N0} (-4 g u^4)^n / n!] du
        RealFn f = [&](const BigReal& u) {
            BigReal w = -4 * g * pow(u, 4L);
            BigReal partial = BigReal::with_digits(wd);
            BigReal term = BigReal(1).at_digits(wd);
            for (int n = 0; n <= N0; ++n) {
                partial += term;
                term = term * w / (n + 1);
            }
            return exp(-u * u) * (exp(w) - partial);
        };
        tail = 2 * sqrt(BigReal(2).at_digits(wd)) * exp_sinh(f, BigReal(0), BigReal(1), digits + 5).value;
    } else {
        // sum_{n>N0} (-1)^n Gamma(n) F^-n / sqrt(pi)
        //   = (-1/F)^(N0+1) / sqrt(pi) int_0^inf t^N0 e^-t / (1 + t/F) dt
        int m = std::max(N0 + 1, 1);
        BigReal F = 1 / (16 * g);
        BigComplex moment = stieltjes_moment(m, BigComplex(F), wd);
        tail = moment.re() * pow(-1 / F, static_cast<long>(m)) / sqrt(const_pi(wd));
    }
    return (head + tail).at_digits(digits);
}

PadeApproximant pade_approximant(const std::vector<BigReal>& c, int m)
{
    if (m < 0 || static_cast<int>(c.size()) < 2 * m + 1)
        throw DomainError("pade_approximant needs 2m+1 coefficients");
    int wd = c.front().precision_digits();
    PrecisionScope scope(wd);
    // Rows k = m+1..2m: sum_{j=1..m} q_j c_{k-j} = -c_k.
    // Ill-conditioning short of an exact zero pivot shows up as disagreement
    // between working precisions in the caller.
    std::vector<std::vector<BigReal>> A(m, std::vector<BigReal>(m + 1));
    for (int r = 0; r < m; ++r) {
        int k = m + 1 + r;
        for (int j = 1; j <= m; ++j)
            A[r][j - 1] = c[k - j];
        A[r][m] = -c[k];
    }
    for (int col = 0; col < m; ++col) {
        int piv = col;
        for (int r = col + 1; r < m; ++r)
            if (abs(A[r][col]) > abs(A[piv][col]))
                piv = r;
        if (A[piv][col].is_zero())
            throw SingularSystem("Pade system is singular at order " + std::to_string(2 * m));
        std::swap(A[piv], A[col]);
        for (int r = col + 1; r < m; ++r) {
            BigReal f = A[r][col] / A[col][col];
            for (int j = col; j <= m; ++j)
                A[r][j] -= f * A[col][j];
        }
    }
    PadeApproximant out;
    out.q.assign(m + 1, BigReal::with_digits(wd));
    out.q[0] = BigReal(1).at_digits(wd);
    for (int col = m - 1; col >= 0; --col) {
        BigReal s = A[col][m];
        for (int j = col + 1; j < m; ++j)
            s -= A[col][j] * out.q[j + 1];
        out.q[col + 1] = s / A[col][col];
    }
    out.p.assign(m + 1, BigReal::with_digits(wd));
    for (int k = 0; k <= m; ++k)
        for (int j = 0; j <= k; ++j)
            out.p[k] += out.q[j] * c[k - j];
    return out;
}

BigComplex pade(Problem problem, const BigComplex& coupling, int N, int digits)
{
    if (N < 0 || N % 2 != 0)
        throw DomainError("Pade order must be even and >= 0");
    require_coupling(problem, coupling);
    auto eval = [&](int wd) {
        PrecisionScope scope(wd);
        BigComplex c = coupling.at_digits(wd);
        BigComplex x = expansion_variable(problem, c);
        // Series in u = x / |x| so the Hankel system stays balanced.
        BigReal rho = abs(x);
        auto a = series_coefficients(problem, N, wd).coeffs;
        BigReal rn = BigReal(1).at_digits(wd);
        for (auto& v : a) {
            v *= rn;
            rn *= rho;
        }
        auto pq = pade_approximant(a, N / 2);
        BigComplex u = x / rho;
        return physical_value(problem, c, horner(pq.p, u) / horner(pq.q, u));
    };
    return converged(digits, eval);
}

std::vector<BigReal> shifted_chebyshev(int N)
{
    if (N < 0)
        throw DomainError("Chebyshev order must be >= 0");
    // |coefficients| <= T_N(3) < 6^N, so 3N + 64 bits hold every integer exactly.
    int digits = static_cast<int>(std::ceil((3.0 * N + 64) * 0.30103)) + 2;
    PrecisionScope scope(digits);
    std::vector<BigReal> prev = {BigReal(1).at_digits(digits)};
    if (N == 0)
        return prev;
    std::vector<BigReal> cur = {BigReal(-1).at_digits(digits), BigReal(2).at_digits(digits)};
    for (int n = 1; n < N; ++n) {
        // T*_{n+1} = (4u - 2) T*_n - T*_{n-1}
        std::vector<BigReal> next(n + 2, BigReal::with_digits(digits));
        for (int k = 0; k <= n; ++k) {
            next[k] -= 2 * cur[k];
            next[k + 1] += 4 * cur[k];
        }
        for (size_t k = 0; k < prev.size(); ++k)
            next[k] -= prev[k];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

TauSolution lanczos_tau_solution(Problem problem, const BigComplex& s_in, int N, int digits)
{
    if (N < 0)
        throw DomainError("tau order must be >= 0");
    if (s_in.is_zero())
        throw DomainError("tau stretch s must be nonzero");
    PrecisionScope scope(digits);
    BigComplex s = s_in.at_digits(digits);
    auto cheb = shifted_chebyshev(N);
    // P(n) a_n + Q(n) a_{n+1} = tau c_n s^-n for n = 0..N, with a_{N+1} = 0.
    // Scaled coefficients b_n = a_n s^n obey
    // b_{n+1} = s (tau c_n - P(n) b_n) / Q(n); split b_n = alpha_n + tau beta_n.
    auto P = [&](long n) {
        return problem == Problem::quartic_Z ? BigReal(16 * n * n + 16 * n + 3) : BigReal(36 * n * n + 36 * n + 5);
    };
    auto Q = [&](long n) { return problem == Problem::quartic_Z ? BigReal(n + 1) : BigReal(48 * (n + 1)); };
    BigReal a0 = problem == Problem::quartic_Z ? sqrt(2 * const_pi(digits)) : sqrt(const_pi(digits));
    std::vector<BigComplex> alpha(N + 1), beta(N + 1);
    alpha[0] = BigComplex(a0);
    beta[0] = BigComplex(BigReal::with_digits(digits));
    for (int n = 0; n < N; ++n) {
        BigComplex k = s / Q(n);
        alpha[n + 1] = -(k * P(n)) * alpha[n];
        beta[n + 1] = k * (BigComplex(cheb[n].at_digits(digits)) - beta[n] * P(n));
    }
    BigComplex den = BigComplex(cheb[N].at_digits(digits)) - beta[N] * P(N);
    if (den.is_zero())
        throw SingularSystem("tau system is singular at order " + std::to_string(N));
    TauSolution out;
    out.s = s;
    out.tau = alpha[N] * P(N) / den;
    out.a.resize(N + 1);
    BigComplex sn = BigComplex(BigReal(1).at_digits(digits));
    for (int n = 0; n <= N; ++n) {
        out.a[n] = (alpha[n] + out.tau * beta[n]) / sn;
        sn *= s;
    }
    out.a[0] = BigComplex(a0);
    return out;
}

BigComplex lanczos_tau(Problem problem, const BigComplex& coupling, int N, int digits)
{
    require_coupling(problem, coupling);
    auto eval = [&](int wd) {
        PrecisionScope scope(wd);
        BigComplex c = coupling.at_digits(wd);
        BigComplex x = expansion_variable(problem, c);
        auto sol = lanczos_tau_solution(problem, x, N, wd);
        BigComplex sum = BigComplex(BigReal::with_digits(wd));
        BigComplex xn = BigComplex(BigReal(1).at_digits(wd));
        for (const auto& a : sol.a) {
            sum += a * xn;
            xn *= x;
        }
        return physical_value(problem, c, sum);
    };
    return converged(digits, eval);
}

HyperLevel1Result hyper_level1(Problem problem, const BigComplex& coupling, int digits)
{
    const int wd = digits + 15;
    PrecisionScope scope(wd);
    BigComplex c = coupling.at_digits(wd);
    BigComplex F = singulant(problem, c);
    BigReal Fabs = abs(F);
    if (Fabs < 2)
        throw DomainError("hyper_level1 requires |F| >= 2");
    HyperLevel1Result out;
    out.N0 = nearest_int(Fabs);
    out.N1 = out.N0 / 2;
    auto a = series_coefficients(problem, out.N0, wd).coeffs;
    BigComplex x = expansion_variable(problem, c);
    std::vector<BigComplex> term(out.N0);
    BigComplex xn = BigComplex(BigReal(1).at_digits(wd));
    BigComplex level0 = BigComplex(BigReal::with_digits(wd));
    for (int r = 0; r < out.N0; ++r) {
        term[r] = xn * a[r];
        level0 += term[r];
        xn *= x;
    }
    // Quartic: two adjacent saddles at F_23 = F_21 = -F with
    // T_r^(3) = -i (4g)^r Gamma(2r + 1/2) / r! and gamma_23 = 1, counted twice. Airy: one adjacent saddle at F_12 = -F
    // with T_r^(2) = i (-1)^r T_r^(1) and gamma_12 = 0.
    BigComplex i = BigComplex::i(wd);
    BigReal two_pi = 2 * const_pi(wd);
    BigComplex level1 = BigComplex(BigReal::with_digits(wd));
    for (int r = 0; r < out.N1; ++r) {
        int M = out.N0 - r;
        BigComplex power = pow(-F, static_cast<long>(-M));
        BigComplex I = stieltjes_moment(M, F, wd);
        BigComplex sign_term = (r % 2 == 0) ? term[r] : -term[r];
        if (problem == Problem::quartic_Z) {
            BigComplex K = i * power * I / two_pi;  // (-1)^gamma / (2 pi i) = i / (2 pi)
            BigComplex T3 = -i * sign_term / sqrt(BigReal(2).at_digits(wd));
            out.terminants.push_back(K);
            level1 += 2 * K * T3;
        } else {
            BigComplex K = -i * power * I / two_pi;  // 1 / (2 pi i)
            BigComplex T2 = i * sign_term;
            out.terminants.push_back(K);
            level1 += K * T2;
        }
    }
    out.value = physical_value(problem, c, level0 + level1).at_digits(digits);
    out.predicted_error = hyper_error_predict(problem, Fabs, 1).at_digits(digits);
    return out;
}

BigReal hyper_error_predict(Problem problem, const BigReal& F_in, int S)
{
    if (F_in <= 0 || S < 0)
        throw DomainError("hyper_error_predict requires F > 0 and S >= 0");
    int wd = std::max(F_in.precision_digits(), 30);
    PrecisionScope scope(wd);
    BigReal F = F_in.at_digits(wd);
    BigReal pi = const_pi(wd);
    BigReal ln2 = const_ln2(wd);
    // Amplitude of the optimally truncated remainder in units of the series:
    // pi kappa, where the late coefficients behave as kappa Gamma(n) (-F)^-n.
    BigReal amplitude = problem == Problem::quartic_Z ? sqrt(pi) : sqrt(pi) / 2;
    BigReal R = amplitude * exp(-F) / sqrt(2 * pi * F);
    for (int s = 1; s <= S; ++s)
        R *= pow(BigReal(2), BigReal(s) / 2) / sqrt(pi * F) * exp(-ln2 * F / pow(BigReal(2), static_cast<long>(s - 1)));
    if (problem == Problem::quartic_Z)
        R *= pow(BigReal(2), static_cast<long>((S + 1) / 2));
    return R;
}

BigReal airy_hyper_error_full(const BigReal& F_in)
{
    if (F_in <= 0)
        throw DomainError("airy_hyper_error_full requires F > 0");
    int wd = std::max(F_in.precision_digits(), 30);
    PrecisionScope scope(wd);
    BigReal F = F_in.at_digits(wd);
    BigReal pi = const_pi(wd);
    BigReal expo = log2(F) / 4 + BigReal(3) / 4 - log2(3 * sqrt(2 * pi));
    return sqrt(2 / pi) * pow(F, expo) * exp(-(1 + 2 * const_ln2(wd)) * F);
}

}  // namespace sce
