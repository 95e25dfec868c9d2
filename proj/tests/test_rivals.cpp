#include <doctest.h>

#include <cmath>

#include "sce/quartic.hpp"
#include "sce/rivals.hpp"
#include "sce/special.hpp"
#include "support.hpp"

using namespace sce;

namespace {

constexpr int wd = 60;

BigComplex coupling(const BigReal& g)
{
    return BigComplex(g.at_digits(wd));
}

BigComplex inverse_g(long n)
{
    return coupling(BigReal(1).at_digits(wd) / n);
}

double log_err(const BigComplex& v, const BigComplex& ref)
{
    return log10_abs(rel_diff(v, ref));
}

BigComplex sce_quartic(const BigReal& g, int N, int target = 40)
{
    QuarticSCEParams p;
    p.g = g.at_digits(wd);
    p.N = N;
    p.M = BigReal(4 * N).at_digits(wd) / 3;
    p.precision = PrecisionPolicy::for_target(target);
    return sce_partition_quartic(p).value;
}

}  // namespace

TEST_CASE("perturbative coefficients")
{
    PrecisionScope scope(wd);
    auto q = series_coefficients(Problem::quartic_Z, 30, wd).coeffs;
    auto a = series_coefficients(Problem::airy_tilde, 30, wd).coeffs;
    for (int n = 0; n <= 30; ++n) {
        BigReal qn = sqrt(BigReal(2)) * pow(BigReal(-4), static_cast<long>(n)) * gamma(BigReal(2 * n) + BigReal(0.5)) /
                     factorial(n, wd);
        CHECK(agree_digits(q[n], qn) >= wd - 5);
        // Second closed form of the Airy coefficients.
        BigReal an = pow(BigReal(-0.75), static_cast<long>(n)) * gamma(BigReal(n) + BigReal(5) / 6) *
                     gamma(BigReal(n) + BigReal(1) / 6) / (2 * sqrt(const_pi()) * factorial(n, wd));
        CHECK(agree_digits(a[n], an) >= wd - 5);
    }
    // Late Airy coefficients approach Gamma(n) (-3/4)^n / (2 sqrt(pi)).
    auto late = series_coefficients(Problem::airy_tilde, 400, wd).coeffs;
    BigReal lead = gamma(BigReal(400)) * pow(BigReal(-0.75), 400L) / (2 * sqrt(const_pi()));
    CHECK(abs(late[400] / lead - 1) < BigReal("0.01"));
}

TEST_CASE("superasymptotics")
{
    PrecisionScope scope(wd);
    auto sa = superasymptotic(Problem::quartic_Z, inverse_g(160));
    CHECK(sa.N0 == 10);
    CHECK_FALSE(sa.trivial);
    // Error close to the least-term estimate exp(-F)/sqrt(2 pi F).
    BigReal Z = exact_Z_quartic(BigReal(1) / 160, 50);
    double err = log10_abs(sa.value.re() - Z);
    double est = log10_abs(exp(BigReal(-10)) / sqrt(20 * const_pi()));
    CHECK(std::abs(err - est) < 1);

    for (double g : {0.07, 0.5, 3.0}) {
        auto t = superasymptotic(Problem::quartic_Z, coupling(BigReal(g)));
        CHECK(t.trivial);
        CHECK(t.N0 == 0);
        CHECK(agree_digits(t.value.re(), sqrt(2 * const_pi())) >= 29);
    }
    auto big = superasymptotic(Problem::quartic_Z, inverse_g(1600));
    CHECK(std::abs(big.N0 - 100) <= 1);

    // Airy: N0 = (4/3) z^(3/2).
    BigComplex z = BigComplex(pow(BigReal(7.5), BigReal(2) / 3));
    auto ai = superasymptotic(Problem::airy_tilde, z);
    CHECK(ai.N0 == 10);
    CHECK(log_err(ai.value, airy_reference(z, 40)) < -5);
}

TEST_CASE("Borel tail")
{
    PrecisionScope scope(wd);
    // The exact kernel integrates the whole remainder, so it returns Z.
    BigReal Z1 = exact_Z_quartic(BigReal(1), 40);
    CHECK(agree_digits(borel_tail(BigReal(1), -1, 30, BorelKernel::exact), Z1) >= 30);
    BigReal Zs = exact_Z_quartic(BigReal(1) / 160, 40);
    CHECK(agree_digits(borel_tail(BigReal(1) / 160, 10, 30, BorelKernel::exact), Zs) >= 30);

    // The large-order kernel improves on the superasymptotic sum.
    for (long inv : {160L, 320L}) {
        BigReal g = BigReal(1).at_digits(wd) / inv;
        BigReal Z = exact_Z_quartic(g, 50);
        auto sa = superasymptotic(Problem::quartic_Z, coupling(g));
        double sa_err = log10_abs(rel_diff(sa.value.re(), Z));
        double borel_err = log10_abs(rel_diff(borel_tail(g, sa.N0), Z));
        CHECK(borel_err <= sa_err - 1);
    }

    // The correction vanishes as g -> 0.
    double prev = 0;
    for (long inv : {160L, 320L, 640L}) {
        BigReal g = BigReal(1).at_digits(wd) / inv;
        auto sa = superasymptotic(Problem::quartic_Z, coupling(g));
        double tail = log10_abs(borel_tail(g, sa.N0, 40) - sa.value.re());
        if (inv > 160)
            CHECK(tail < prev - 3);
        prev = tail;
    }
}

TEST_CASE("Pade approximants")
{
    PrecisionScope scope(50);
    auto c = series_coefficients(Problem::quartic_Z, 6, 50).coeffs;
    auto pq = pade_approximant(c, 3);
    REQUIRE(pq.q.size() == 4);
    CHECK(pq.q[0] == 1);
    // Series of P/Q by long division.
    std::vector<BigReal> d(7);
    for (int k = 0; k <= 6; ++k) {
        BigReal v = k <= 3 ? pq.p[k] : BigReal::with_digits(50);
        for (int j = 1; j <= std::min(k, 3); ++j)
            v -= pq.q[j] * d[k - j];
        d[k] = v;
        CHECK(agree_digits(d[k], c[k]) >= 45);
    }

    // 1/(1 - x) is already a [1/1] approximant, so the [2/2] system is degenerate.
    std::vector<BigReal> geometric(5, BigReal(1));
    CHECK_THROWS_AS(pade_approximant(geometric, 2), SingularSystem);

    // Fixed order, growing g: the approximant tends to a constant.
    double prev = -100;
    for (double g : {1.0, 10.0, 100.0, 1e4, 1e6}) {
        BigComplex gc = coupling(BigReal(g));
        double e = log_err(pade(Problem::quartic_Z, gc, 12), exact_value(Problem::quartic_Z, gc, 40));
        CHECK(e > prev);
        prev = e;
    }
    CHECK(prev > 1);

    // Working precision does not leak into the result.
    BigComplex g = inverse_g(100);
    CHECK(agree_digits(pade(Problem::quartic_Z, g, 40, 30), pade(Problem::quartic_Z, g, 40, 40)) >= 30);

    // At g = 0.01 the SCE is ahead at every order.
    BigReal Z = exact_Z_quartic(g.re(), 120);
    for (int N = 20; N <= 100; N += 20)
        CHECK(log10_abs(rel_diff(pade(Problem::quartic_Z, g, N, 80).re(), Z)) >
              log10_abs(rel_diff(sce_quartic(g.re(), N, 80).re(), Z)));
}

TEST_CASE("shifted Chebyshev polynomials")
{
    PrecisionScope scope(40);
    BigReal u("0.3");
    for (int N = 0; N <= 15; ++N) {
        auto c = shifted_chebyshev(N);
        REQUIRE(static_cast<int>(c.size()) == N + 1);
        BigReal v = BigReal::with_digits(40);
        for (int k = N; k >= 0; --k)
            v = v * u + c[k].at_digits(40);
        BigReal x = 2 * u - 1;
        BigReal ref = cos(N * atan2(sqrt(1 - x * x), x));
        CHECK(abs(v - ref) < BigReal("1e-30"));
    }
    // Integers stay exact at large order: T*_N(1) = 1 and T*_N(0) = (-1)^N.
    auto c = shifted_chebyshev(200);
    BigReal sum = BigReal::with_digits(c[0].precision_digits());
    for (const auto& x : c)
        sum += x;
    CHECK(sum == 1);
    CHECK(c[0] == 1);
    for (const auto& x : c)
        CHECK(floor(x) == x);
}

TEST_CASE("Lanczos tau")
{
    PrecisionScope scope(70);
    for (Problem p : {Problem::quartic_Z, Problem::airy_tilde}) {
        BigComplex s = p == Problem::quartic_Z ? BigComplex(BigReal("0.5")) : BigComplex(BigReal("0.1"), BigReal("0.05"));
        auto sol = lanczos_tau_solution(p, s, 9, 70);
        BigReal a0 = p == Problem::quartic_Z ? sqrt(2 * const_pi(70)) : sqrt(const_pi(70));
        CHECK(sol.a[0] == BigComplex(a0));
        // Apply the ODE to the polynomial and compare with tau T*_9(x/s). The
        // solve loses digits to cancellation, hence 70 working digits for a
        // 50-digit identity.
        int N = 9;
        std::vector<BigComplex> d1(N + 1, BigComplex(BigReal::with_digits(70)));
        std::vector<BigComplex> d2(N + 1, BigComplex(BigReal::with_digits(70)));
        for (int n = 1; n <= N; ++n)
            d1[n - 1] = sol.a[n] * long(n);
        for (int n = 1; n < N; ++n)
            d2[n - 1] = d1[n] * long(n);
        auto cheb = shifted_chebyshev(N);
        BigComplex sn = BigComplex(BigReal(1).at_digits(70));
        for (int n = 0; n <= N; ++n) {
            std::vector<BigComplex> parts;
            if (p == Problem::quartic_Z) {
                parts = {d1[n], 3 * sol.a[n]};
                if (n >= 1)
                    parts.push_back(32 * d1[n - 1]);
                if (n >= 2)
                    parts.push_back(16 * d2[n - 2]);
            } else {
                parts = {5 * sol.a[n], 48 * d1[n]};
                if (n >= 1)
                    parts.push_back(72 * d1[n - 1]);
                if (n >= 2)
                    parts.push_back(36 * d2[n - 2]);
            }
            BigComplex lhs = BigComplex(BigReal::with_digits(70));
            BigReal size = BigReal::with_digits(70);
            for (const auto& t : parts) {
                lhs += t;
                size += abs(t);
            }
            BigComplex rhs = sol.tau * BigComplex(cheb[n].at_digits(70)) / sn;
            CHECK(abs(lhs - rhs) <= BigReal("1e-50") * size);
            sn *= s;
        }
    }

    // N = 13 across g: the error changes sign once between 100 and 200.
    int changes = 0;
    int prev = 0;
    for (double g : {50.0, 100.0, 130.0, 160.0, 200.0, 400.0}) {
        BigComplex gc = coupling(BigReal(g));
        int s = (lanczos_tau(Problem::quartic_Z, gc, 13).re() - exact_Z_quartic(gc.re(), 40)).sign();
        if (prev != 0 && s != prev) {
            ++changes;
            CHECK(g > 100);
            CHECK(g <= 200);
        }
        prev = s;
    }
    CHECK(changes == 1);

    BigComplex g = inverse_g(100);
    CHECK(agree_digits(lanczos_tau(Problem::quartic_Z, g, 60, 30), lanczos_tau(Problem::quartic_Z, g, 60, 40)) >= 30);
    // Airy: tau converges on the positive axis.
    BigComplex z(BigReal(4).at_digits(wd));
    BigComplex ref = airy_reference(z, 40);
    CHECK(log_err(lanczos_tau(Problem::airy_tilde, z, 20), ref) < log_err(lanczos_tau(Problem::airy_tilde, z, 10), ref));
}

TEST_CASE("first hyperasymptotic level")
{
    PrecisionScope scope(wd);
    BigComplex g = inverse_g(160);
    BigReal Z = exact_Z_quartic(g.re(), 50);
    auto h = hyper_level1(Problem::quartic_Z, g);
    CHECK(h.N0 == 10);
    CHECK(h.N1 == 5);
    REQUIRE(h.terminants.size() == 5);

    // Terminants against the exponential-integral closed form.
    BigReal F(10);
    for (int r = 0; r < 5; ++r) {
        int M = 10 - r;
        BigReal s = -exp(F) * exp_integral_E1(F);
        for (int m = 0; m <= M - 2; ++m)
            s -= factorial(m, wd) / pow(-F, static_cast<long>(m + 1));
        BigComplex K = BigComplex(BigReal::with_digits(wd), s / (2 * const_pi()));
        CHECK(agree_digits(h.terminants[r], K) >= 25);
    }

    // Level 1 removes the leading remainder: gain of several digits over the
    // superasymptotic sum, in line with the predicted remainder.
    auto sa = superasymptotic(Problem::quartic_Z, g);
    double sa_err = log_err(sa.value, BigComplex(Z));
    double h_err = log_err(h.value, BigComplex(Z));
    CHECK(h_err <= sa_err - 2);
    double predicted = log10_abs(h.predicted_error / Z);
    CHECK(std::abs(h_err - predicted) < 1);

    // Airy at F = 10.
    for (double phi : {0.0, 0.5, 1.0}) {
        BigComplex z = BigComplex::polar(pow(BigReal(7.5), BigReal(2) / 3), BigReal(phi));
        BigComplex ref = airy_reference(z, 40);
        double a_sa = log_err(superasymptotic(Problem::airy_tilde, z).value, ref);
        double a_h = log_err(hyper_level1(Problem::airy_tilde, z).value, ref);
        CHECK(a_h <= a_sa - 2);
    }
    CHECK_THROWS_AS(hyper_level1(Problem::quartic_Z, coupling(BigReal("0.05"))), DomainError);
}

TEST_CASE("hyperasymptotic error prediction")
{
    PrecisionScope scope(wd);
    BigReal Z = exact_Z_quartic(BigReal(1) / 160, 40);
    double rel = (hyper_error_predict(Problem::quartic_Z, BigReal(10), 3) / Z).to_double();
    CHECK(std::abs(rel / 4.0e-12 - 1) < 0.1);
    CHECK(rel * 3 > 5.7e-12);

    // No stages: the optimally truncated remainder, which the measured
    // remainder of the first N0 = 10 terms matches.
    BigReal F(10);
    BigReal R0 = hyper_error_predict(Problem::quartic_Z, F, 0);
    CHECK(agree_digits(R0, sqrt(const_pi()) * exp(-F) / sqrt(2 * const_pi() * F)) >= 25);
    auto c = series_coefficients(Problem::quartic_Z, 9, wd).coeffs;
    BigReal sum = BigReal::with_digits(wd);
    BigReal g = BigReal(1) / 160;
    for (int n = 9; n >= 0; --n)
        sum = sum * g + c[n];
    CHECK(abs(abs(sum - Z) / R0 - 1) < BigReal("0.05"));

    // Each stage shrinks the estimate while stages remain.
    for (int S = 1; S <= 3; ++S)
        CHECK(hyper_error_predict(Problem::quartic_Z, F, S) < hyper_error_predict(Problem::quartic_Z, F, S - 1));

    BigReal a10 = airy_hyper_error_full(BigReal(10));
    BigReal a20 = airy_hyper_error_full(BigReal(20));
    CHECK(a20 < a10);
    CHECK(a10 < hyper_error_predict(Problem::airy_tilde, BigReal(10), 0) / sqrt(const_pi()));
}

TEST_CASE("comparison at the superasymptotic order")
{
    PrecisionScope scope(wd);
    // superasymptotics < Borel tail < Pade < SCE < tau in accuracy at N = N0.
    // Level-1 hyperasymptotics sits between the Borel tail and the SCE. At
    // g = 1/160 the full trans-series estimate matches the SCE within a
    // factor of 10.
    struct Case {
        long inv;
        int stages;
    };
    for (Case cs : {Case{160, 3}, Case{320, 4}}) {
        BigComplex g = inverse_g(cs.inv);
        BigReal Z = exact_Z_quartic(g.re(), 60);
        auto sa = superasymptotic(Problem::quartic_Z, g);
        int N = sa.N0;
        double e_sa = log_err(sa.value, BigComplex(Z));
        double e_borel = log10_abs(rel_diff(borel_tail(g.re(), N), Z));
        double e_pade = log_err(pade(Problem::quartic_Z, g, N), BigComplex(Z));
        double e_hyper = log_err(hyper_level1(Problem::quartic_Z, g).value, BigComplex(Z));
        double e_sce = log_err(sce_quartic(g.re(), N), BigComplex(Z));
        double e_tau = log_err(lanczos_tau(Problem::quartic_Z, g, N), BigComplex(Z));
        double e_full = log10_abs(hyper_error_predict(Problem::quartic_Z, 1 / (16 * g.re()), cs.stages) / Z);
        CHECK(e_borel < e_sa);
        CHECK(e_pade < e_borel);
        CHECK(e_sce < e_pade);
        CHECK(e_tau < e_sce);
        CHECK(e_hyper < e_borel);
        CHECK(e_hyper > e_sce);
        MESSAGE("g = 1/" << cs.inv << ": trans-series estimate " << e_full << ", SCE " << e_sce);
        if (cs.inv == 160)
            CHECK(std::abs(e_full - e_sce) < 1);
    }
}
