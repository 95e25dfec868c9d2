#include <doctest.h>

#include <cmath>

#include "sce/quartic.hpp"
#include "sce/special.hpp"
#include "support.hpp"

using namespace sce;

namespace {

QuarticSCEParams params(const BigReal& g, int N, const BigReal& M, int target = 30,
                        Well well = Well::single_well)
{
    QuarticSCEParams p;
    p.precision = PrecisionPolicy::for_target(target);
    p.g = g.at_digits(p.precision.working_digits);
    p.N = N;
    p.M = M.at_digits(p.precision.working_digits);
    p.well = well;
    return p;
}

BigReal rel_error(const BigReal& g, int N, const BigReal& M, int target = 30)
{
    auto ev = sce_partition_quartic(params(g, N, M, target));
    return rel_diff(ev.real(), exact_Z_quartic(g, 3 * target));
}

}  // namespace

TEST_CASE("self-consistent G")
{
    PrecisionScope scope(60);
    CHECK(g_selfconsistent(BigReal(5), BigReal(0)) == 1);
    BigReal expect = (1 + sqrt(BigReal(65))) / 2;
    CHECK(agree_digits(g_selfconsistent(BigReal(2), BigReal(1)), expect) >= 58);
    for (double g : {1e-6, 0.01, 1.0, 250.0}) {
        for (double M : {0.0, 2.0, 17.5, 400.0}) {
            BigReal G = g_selfconsistent(BigReal(M), BigReal(g));
            BigReal residual = (1 - G) * G / (4 * BigReal(g)) + (BigReal(M) + 2);
            CHECK(abs(residual) < pow(BigReal(10), -55L) * (BigReal(M) + 2));
            CHECK(G > 1);
        }
    }
    CHECK_THROWS_AS(g_selfconsistent(BigReal(1), BigReal(-1)), DomainError);
}

TEST_CASE("double-well G")
{
    PrecisionScope scope(60);
    BigReal expect = (sqrt(BigReal(65)) - 1) / 2;
    CHECK(agree_digits(g_selfconsistent_dw(BigReal(2), BigReal(1)), expect) >= 58);
    // Small gM: G ~ 4g(M+2) and G -> 0 rather than 1.
    BigReal g("1e-12");
    BigReal G = g_selfconsistent_dw(BigReal(3), g);
    CHECK(G > 0);
    CHECK(agree_digits(G, 4 * g * 5) >= 10);
    CHECK(g_selfconsistent_dw(BigReal(3), BigReal("1e-30")) < BigReal("1e-28"));
    CHECK_THROWS_AS(g_selfconsistent_dw(BigReal(1), BigReal(0)), DomainError);
}

TEST_CASE("zeroth and first order")
{
    PrecisionScope scope(90);
    BigReal g("0.7");
    BigReal M(3);
    BigReal G = g_selfconsistent(M, g);
    BigReal K = M + 2;
    auto z0 = sce_partition_quartic(params(g, 0, M));
    CHECK(agree_digits(z0.real(), sqrt(2 * const_pi() / G)) >= 85);

    auto z1 = sce_partition_quartic(params(g, 1, M));
    BigReal x = 1 - 1 / G;
    BigReal detailed =
        sqrt(2 / G) * (gamma(BigReal(0.5)) + x * (gamma(BigReal(1.5)) - gamma(BigReal(2.5)) / K));
    CHECK(agree_digits(z1.real(), detailed) >= 85);
    // Simplified first-order form; the coupling enters as 4g/G^2.
    BigReal simplified = sqrt(2 / G) * gamma(BigReal(0.5)) * (1 + (x - 6 * g / (G * G)) / 2);
    CHECK(agree_digits(z1.real(), simplified) >= 85);
}

TEST_CASE("harmonic limit is exact at every order")
{
    for (int N = 0; N <= 30; N += 3) {
        auto ev = sce_partition_quartic(params(BigReal(0), N, BigReal(4) * N / 3));
        PrecisionScope scope(ev.working_digits);
        CHECK(agree_digits(ev.real(), sqrt(2 * const_pi())) >= 85);
    }
}

TEST_CASE("value is the ordered sum of the recorded terms")
{
    auto ev = sce_partition_quartic(params(BigReal(1), 25, BigReal(100) / 3));
    PrecisionScope scope(ev.working_digits);
    BigReal s;
    for (const auto& t : ev.terms)
        s += t.re();
    CHECK(s == ev.real());
    CHECK(ev.terms.size() == 26);
    CHECK(ev.remainder_bound >= 0);
}

TEST_CASE("high-order relative error at g = 1, alpha = 4/3")
{
    // N = 301 with 107 target digits runs at 321 working digits.
    BigReal err = rel_error(BigReal(1), 301, BigReal(4) * 301 / 3, 107);
    CHECK(err > BigReal("1.0e-92"));
    CHECK(err < BigReal("2.2e-92"));
}

TEST_CASE("coefficient forms")
{
    PrecisionScope scope(60);
    for (double K : {0.5, 3.0, 200.0})
        CHECK(agree_digits(sce_coefficient(0, BigReal(K), 60), sqrt(const_pi())) >= 58);

    BigReal big("1e6");
    BigReal lead = gamma(BigReal(3.5)) / factorial(3);
    CHECK(rel_diff(sce_coefficient(3, big, 30), lead) < BigReal("0.01"));

    BigReal d = sce_coefficient_direct(5, BigReal(7), 60);
    BigReal k = sce_coefficient_kummer(5, BigReal(7), 60);
    CHECK(agree_digits(d, k) >= 58);
}

TEST_CASE("coefficient forms agree for n <= 40")
{
    for (double K : {1.0, 10.0, 100.0}) {
        for (int n = 0; n <= 40; ++n) {
            BigReal d = sce_coefficient_direct(n, BigReal(K).at_digits(30), 30);
            BigReal k = sce_coefficient_kummer(n, BigReal(K).at_digits(30), 30);
            CAPTURE(n);
            CAPTURE(K);
            CHECK(agree_digits(d, k) >= 28);
        }
    }
}

TEST_CASE("kummer inner sums reproduce the direct partial sum")
{
    auto a = sce_partition_quartic(params(BigReal(2), 30, BigReal(40)), InnerSum::direct);
    auto b = sce_partition_quartic(params(BigReal(2), 30, BigReal(40)), InnerSum::kummer);
    CHECK(agree_digits(a.real(), b.real()) >= 30);
}

TEST_CASE("both wells share one coefficient table")
{
    const int wd = 90;
    PrecisionScope scope(wd);
    BigReal g("0.05");
    BigReal M(9);
    BigReal K = M + 2;
    std::vector<BigReal> S;
    for (int n = 0; n <= 12; ++n)
        S.push_back(sce_coefficient_direct(n, K, wd));
    for (Well w : {Well::single_well, Well::double_well}) {
        bool dw = w == Well::double_well;
        BigReal G = dw ? g_selfconsistent_dw(M, g) : g_selfconsistent(M, g);
        BigReal x = dw ? 1 + 1 / G : 1 - 1 / G;
        BigReal sum;
        for (int n = 0; n <= 12; ++n)
            sum += pow(x, static_cast<long>(n)) * S[n];
        sum *= sqrt(2 / G);
        auto ev = sce_partition_quartic(params(g, 12, M, 30, w));
        CHECK(agree_digits(ev.real(), sum) >= 80);
    }
}

TEST_CASE("error bound dominates the measured error")
{
    for (double g : {0.1, 1.0, 10.0}) {
        for (int N = 5; N <= 40; ++N) {
            auto ev = sce_partition_quartic(params(BigReal(g), N, BigReal(4) * N / 3));
            BigReal Z = exact_Z_quartic(BigReal(g), ev.working_digits);
            CAPTURE(g);
            CAPTURE(N);
            CHECK(abs(ev.real() - Z) <= ev.remainder_bound);
        }
    }
}

TEST_CASE("g-free bound")
{
    PrecisionScope scope(40);
    BigReal M(24);
    BigReal loose = error_bound_quartic_gfree(17, M);
    for (double g : {1e-3, 1.0, 100.0, 1e40})
        CHECK(error_bound_quartic(17, M, BigReal(g)) <= loose);
    // Same braces; only the g-dependent prefactor is dropped.
    for (double g : {1.0, 100.0}) {
        BigReal G = g_selfconsistent(M, BigReal(g));
        BigReal pref = sqrt(2 / G) * pow(1 - 1 / G, 18L);
        CHECK(agree_digits(error_bound_quartic(17, M, BigReal(g)) / pref * sqrt(BigReal(2)), loose) >= 35);
    }
}

TEST_CASE("bound grows for M = N^3")
{
    PrecisionScope scope(40);
    BigReal prev = error_bound_quartic(10, BigReal(1000), BigReal(1));
    for (int N : {20, 40, 80}) {
        BigReal b = error_bound_quartic(N, pow(BigReal(N), 3L), BigReal(1));
        CHECK(b > prev);
        prev = b;
    }
}

TEST_CASE("critical constants of the bound")
{
    BigReal ac = alpha_critical_quartic();
    BigReal as = alpha_star_quartic();
    CHECK(std::fabs(ac.to_double() - 0.976) <= 0.001);
    CHECK(std::fabs(as.to_double() - 1.317) <= 0.001);
    CHECK(std::fabs(-std::log10(as.to_double() / (as.to_double() + 1)) - 0.245) <= 0.001);
    CHECK(abs(Q2B(ac) - 1) < BigReal("1e-8"));
}

TEST_CASE("rate bound A")
{
    CHECK(std::fabs(rate_bound_A(BigReal(1)).to_double() - 0.018) < 0.0005);
    CHECK(std::fabs(rate_bound_A(BigReal(2)).to_double() - 0.176) < 0.0005);
    CHECK(std::fabs(rate_bound_A(BigReal(4) / 3).to_double() - 0.243) < 0.0005);

    BigReal as = alpha_star_quartic();
    BigReal h("1e-9");
    CHECK(abs(rate_bound_A(as + h) - rate_bound_A(as - h)) < BigReal("1e-7"));
    for (double a = 0.98; a < 6; a += 0.05)
        CHECK(rate_bound_A(BigReal(a)) > 0);
    CHECK_THROWS_AS(rate_bound_A(BigReal(0.9)), DomainError);
}

TEST_CASE("double-well critical order")
{
    PrecisionScope scope(30);
    BigReal a = BigReal(4) / 3;
    CHECK(dw_critical_order(a, BigReal(0.2)) <= 1);
    BigReal r = dw_critical_order(a, BigReal(0.05)) / dw_critical_order(a, BigReal(0.2));
    CHECK(abs(r - 2) < BigReal("1e-25"));
    // Finite at the edge of the allowed range and increasing with alpha.
    BigReal prev = dw_critical_order(BigReal(0.977), BigReal(0.1));
    CHECK(prev.is_finite());
    for (double al = 1.0; al < 4; al += 0.25) {
        BigReal v = dw_critical_order(BigReal(al), BigReal(0.1));
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("transformed-coefficient peaks and rates")
{
    for (int n : {1, 5, 20, 100}) {
        for (double K : {2.0, 3.0, 40.0, 500.0}) {
            auto pk = coefficient_peak_indices(n, BigReal(K));
            CHECK(pk.first < n);
            CHECK(pk.second > 2 * n);
        }
    }
    CHECK(std::fabs(appendix_alpha_critical().to_double() - 0.895) < 0.001);
    auto star = appendix_alpha_star();
    CHECK(std::fabs(star.first.to_double() - 1.325) < 0.001);
    CHECK(std::fabs(star.second.to_double() - 0.288) < 0.001);
}

TEST_CASE("even orders dip below odd orders near the optimum")
{
    double best_even = 1;
    double best_odd = 1;
    for (int i = 0; i <= 60; ++i) {
        BigReal a = BigReal(1) + BigReal(i) / 100;
        best_even = std::min(best_even, rel_error(BigReal(1), 20, a * 20, 20).to_double());
        best_odd = std::min(best_odd, rel_error(BigReal(1), 21, a * 21, 20).to_double());
    }
    CHECK(best_even < best_odd);
}

TEST_CASE("precision escalation and exhaustion")
{
    QuarticSCEParams p = params(BigReal(1), 101, BigReal(4) * 101 / 3);
    p.precision.target_digits = 20;
    p.precision.working_digits = 30;
    auto ev = sce_partition_quartic(p);
    CHECK(ev.working_digits == 80);

    p.N = 301;
    p.M = BigReal(4) * 301 / 3;
    p.precision.working_digits = 80;
    CHECK_THROWS_AS(sce_partition_quartic(p), PrecisionExhausted);
}

TEST_CASE("moment schedules")
{
    auto s = MomentSchedule::parse("4/3");
    CHECK(s.M(3, 30) == 4);
    auto t = MomentSchedule::parse("1.25");
    CHECK(t.alpha_num == 5);
    CHECK(t.alpha_den == 4);
    auto p = MomentSchedule::parse("pow:1.5");
    CHECK(agree_digits(p.M(4, 30), BigReal(8)) >= 28);
    s.round_to_integer = true;
    CHECK(s.M(13, 30) == 17);
    CHECK_THROWS_AS(MomentSchedule::linear(-1, 2), DomainError);
    auto e = MomentSchedule::explicit_list({BigReal(1), BigReal(3)});
    CHECK(e.M(1, 30) == 3);
    CHECK_THROWS_AS(e.M(2, 30), DomainError);
}

TEST_CASE("invalid inputs")
{
    CHECK_THROWS_AS(sce_partition_quartic(params(BigReal(-1), 3, BigReal(4))), DomainError);
    CHECK_THROWS_AS(sce_partition_quartic(params(BigReal(0), 3, BigReal(4), 30, Well::double_well)), DomainError);
    CHECK_THROWS_AS(sce_coefficient(3, BigReal(0), 30), DomainError);
}

TEST_CASE("proposition cases on short windows")
{
    auto low = proposition_case_check(MomentSchedule::power(BigReal(0.5)), BigReal(1), 60, 20);
    CHECK(low.kind == PropositionCase::alternating_divergence);
    auto mid = proposition_case_check(MomentSchedule::power(BigReal(1.5)), BigReal(1), 40, 10);
    CHECK(mid.kind == PropositionCase::convergent);
    auto high = proposition_case_check(MomentSchedule::power(BigReal(2.5)), BigReal(1), 40, 12);
    CHECK(high.kind == PropositionCase::decays_to_zero);
}
