#include "sce/quartic.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "sce/kernel.hpp"
#include "sce/special.hpp"

namespace sce {

namespace {

BigReal infinity_at(int digits)
{
    BigReal r = BigReal::with_digits(digits);
    mpfr_set_inf(r.raw(), 1);
    return r;
}

int digits_of(int digits) { return digits > 0 ? digits : default_digits(); }

}  // namespace

MomentSchedule MomentSchedule::linear(long num, long den)
{
    if (num <= 0 || den <= 0)
        throw DomainError("linear moment schedule needs alpha > 0");
    long c = std::gcd(num, den);
    MomentSchedule s;
    s.kind = Kind::linear;
    s.alpha_num = num / c;
    s.alpha_den = den / c;
    return s;
}

MomentSchedule MomentSchedule::power(const BigReal& p, const BigReal& coeff)
{
    if (coeff <= 0)
        throw DomainError("power moment schedule needs a positive coefficient");
    MomentSchedule s;
    s.kind = Kind::power;
    s.p = p;
    s.coeff = coeff;
    return s;
}

MomentSchedule MomentSchedule::explicit_list(std::vector<BigReal> m)
{
    for (const auto& v : m)
        if (v < 0)
            throw DomainError("moments must be non-negative");
    MomentSchedule s;
    s.kind = Kind::explicit_list;
    s.values = std::move(m);
    return s;
}

MomentSchedule MomentSchedule::parse(const std::string& text)
{
    if (text.rfind("pow:", 0) == 0) {
        std::string rest = text.substr(4);
        auto colon = rest.find(':');
        if (colon == std::string::npos)
            return power(BigReal(rest));
        return power(BigReal(rest.substr(0, colon)), BigReal(rest.substr(colon + 1)));
    }
    auto slash = text.find('/');
    if (slash != std::string::npos)
        return linear(std::stol(text.substr(0, slash)), std::stol(text.substr(slash + 1)));
    auto dot = text.find('.');
    if (dot == std::string::npos)
        return linear(std::stol(text), 1);
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    long den = 1;
    for (size_t i = dot + 1; i < text.size(); ++i)
        den *= 10;
    return linear(std::stol(digits), den);
}

BigReal MomentSchedule::alpha(int digits) const
{
    if (kind != Kind::linear)
        throw DomainError("alpha is only defined for linear schedules");
    return BigReal(alpha_num).at_digits(digits_of(digits)) / alpha_den;
}

BigReal MomentSchedule::M(int N, int digits) const
{
    int d = digits_of(digits);
    BigReal m;
    switch (kind) {
    case Kind::linear:
        m = BigReal(alpha_num).at_digits(d) * N / alpha_den;
        break;
    case Kind::power:
        m = N == 0 ? BigReal::with_digits(d) : coeff.at_digits(d) * pow(BigReal(N).at_digits(d), p.at_digits(d));
        break;
    case Kind::explicit_list:
        if (N < 0 || static_cast<size_t>(N) >= values.size())
            throw DomainError("explicit moment schedule has no entry for N = " + std::to_string(N));
        m = values[N].at_digits(d);
        break;
    }
    return round_to_integer ? round(m) : m;
}

std::string MomentSchedule::description() const
{
    std::ostringstream os;
    switch (kind) {
    case Kind::linear:
        os << "M = " << alpha_num << "/" << alpha_den << " N";
        break;
    case Kind::power:
        os << "M = " << coeff.str(6, false) << " N^" << p.str(6, false);
        break;
    case Kind::explicit_list:
        os << "explicit M list (" << values.size() << " entries)";
        break;
    }
    if (round_to_integer)
        os << ", rounded";
    return os.str();
}

BigReal g_selfconsistent(const BigReal& M, const BigReal& g)
{
    if (g < 0 || M < 0)
        throw DomainError("g_selfconsistent requires g >= 0 and M >= 0");
    return (1 + sqrt(1 + 16 * (M + 2) * g)) / 2;
}

BigReal g_selfconsistent_dw(const BigReal& M, const BigReal& g)
{
    if (g <= 0 || M < 0)
        throw DomainError("g_selfconsistent_dw requires g > 0 and M >= 0");
    // (sqrt(1+x) - 1) / 2 rewritten to avoid cancellation at small x.
    BigReal x = 16 * g * (M + 2);
    return x / (2 * (sqrt(1 + x) + 1));
}

namespace {

SCEEvaluation quartic_at(const QuarticSCEParams& p, int wd, InnerSum inner)
{
    PrecisionScope scope(wd);
    BigReal g = p.g.at_digits(wd);
    BigReal M = p.M.at_digits(wd);
    BigReal K = M + 2;
    bool dw = p.well == Well::double_well;
    BigReal G = dw ? g_selfconsistent_dw(M, g) : g_selfconsistent(M, g);
    BigReal x = dw ? 1 + 1 / G : 1 - 1 / G;
    BigReal pref = sqrt(2 / G);

    SCEEvaluation ev;
    ev.G = BigComplex(G);
    ev.K = BigComplex(K);
    ev.q = BigReal(4);
    ev.well = p.well;
    ev.order = p.N;
    ev.alpha = p.N > 0 ? M / p.N : BigReal::with_digits(wd);
    ev.target_digits = p.precision.target_digits;
    ev.working_digits = wd;

    if (inner == InnerSum::direct) {
        KernelResult k = sce_kernel(pref, x, BigReal(0.5), BigReal(1), K, p.N);
        for (auto& t : k.terms)
            ev.terms.emplace_back(t);
        ev.value = BigComplex(k.sum);
        ev.digits_lost = k.digits_lost;
    } else {
        BigReal sum;
        BigReal xn(1);
        BigReal largest;
        for (int n = 0; n <= p.N; ++n) {
            if (n > 0)
                xn *= x;
            BigReal t = pref * xn * sce_coefficient_kummer(n, K, wd);
            ev.terms.emplace_back(t);
            sum += t;
            largest = max(largest, abs(t));
        }
        ev.value = BigComplex(sum);
        ev.digits_lost = sum.is_zero() ? std::numeric_limits<double>::infinity()
                                       : std::max(0.0, log10_abs(largest) - log10_abs(sum));
    }
    ev.remainder_bound = dw ? infinity_at(wd) : error_bound_quartic(p.N, M, g);
    return ev;
}

}  // namespace

SCEEvaluation sce_partition_quartic(const QuarticSCEParams& params, InnerSum inner)
{
    if (params.N < 0)
        throw DomainError("SCE order must be non-negative");
    if (params.M < 0)
        throw DomainError("moment index must be non-negative");
    if (params.g < 0 || (params.well == Well::double_well && params.g.sign() <= 0))
        throw DomainError("coupling out of range for the selected well");
    PrecisionPolicy pol = params.precision;
    for (;;) {
        SCEEvaluation ev = quartic_at(params, pol.working_digits, inner);
        if (ev.digits_lost <= pol.working_digits - pol.target_digits)
            return ev;
        PrecisionPolicy next = pol.escalated();
        if (next.working_digits <= pol.working_digits) {
            std::ostringstream os;
            os << "cancellation consumed " << ev.digits_lost << " digits at " << pol.working_digits
               << " working digits (N = " << params.N << ")";
            throw PrecisionExhausted(os.str());
        }
        pol = next;
    }
}

BigReal sce_coefficient_direct(int n, const BigReal& K, int digits)
{
    if (n < 0 || K <= 0)
        throw DomainError("sce_coefficient requires n >= 0 and K > 0");
    int guard = 20;
    for (;;) {
        int wd = digits + guard;
        PrecisionScope scope(wd);
        BigReal k = K.at_digits(wd);
        BigReal t = half_gamma_over_factorial(n, wd);  // l = 0 term
        BigReal s = t;
        BigReal biggest = abs(t);
        for (int l = 1; l <= n; ++l) {
            t = -(t * (n - l + 1) * (BigReal(n + l) - BigReal(0.5))) / (k * l);
            s += t;
            biggest = max(biggest, abs(t));
        }
        double lost = s.is_zero() ? wd : log10_abs(biggest) - log10_abs(s);
        if (lost < guard - 5)
            return s.at_digits(digits);
        guard = static_cast<int>(std::ceil(lost)) + 20;
    }
}

BigReal sce_coefficient_kummer(int n, const BigReal& K, int digits)
{
    if (n < 0 || K <= 0)
        throw DomainError("sce_coefficient requires n >= 0 and K > 0");
    // The positive tail sums to about e^K times the gamma ratio at s = 0,
    // while the result can be far smaller; widen until the loss is covered.
    int guard = 20;
    for (;;) {
        int wd = digits + guard;
        PrecisionScope scope(wd);
        BigReal k = K.at_digits(wd);
        BigReal u = gamma(BigReal(2 * n) + BigReal(0.5)) / gamma(BigReal(n) + BigReal(0.5));
        BigReal s = u;
        BigReal biggest = abs(u);
        BigReal eps = pow(BigReal(10), -static_cast<long>(wd));
        double smin = std::max(2.0 * n + 2, K.to_double() + 2);
        for (long j = 0;; ++j) {
            u = u * k * (BigReal(n - j) - BigReal(0.5)) / ((j + 1) * (BigReal(2 * n - j) - BigReal(0.5)));
            s += u;
            biggest = max(biggest, abs(u));
            if (j + 1 > smin && abs(u) <= eps * abs(s))
                break;
        }
        BigReal pref = half_gamma_over_factorial(n, wd) / (pow(k, static_cast<long>(n)) * exp(k));
        if (n % 2 == 1)
            pref = -pref;
        BigReal r = pref * s;
        double lost = s.is_zero() ? wd : log10_abs(biggest) - log10_abs(s);
        if (lost < guard - 5)
            return r.at_digits(digits);
        guard = static_cast<int>(std::ceil(lost)) + 20;
    }
}

BigReal sce_coefficient(int n, const BigReal& K, int digits)
{
    BigReal a = sce_coefficient_direct(n, K, digits);
    BigReal b = sce_coefficient_kummer(n, K, digits);
    BigReal tol = pow(BigReal(10).at_digits(digits), -static_cast<long>(digits - 3));
    if (rel_diff(a, b) > tol)
        throw Error("coefficient forms disagree at n = " + std::to_string(n) + ", K = " + K.str(10));
    return b;
}

BigReal exact_Z_quartic(const BigReal& g, int digits)
{
    if (g < 0)
        throw DomainError("exact_Z_quartic requires g >= 0");
    int wd = digits + 10;
    PrecisionScope scope(wd);
    if (g.is_zero())
        return sqrt(2 * const_pi(wd)).at_digits(digits);
    BigReal gg = g.at_digits(wd);
    BigReal x = 1 / (32 * gg);
    return (sqrt(1 / (8 * gg)) * bessel_K_scaled(BigReal(0.25), x)).at_digits(digits);
}

BigReal exact_Z_quartic_dw(const BigReal& g, int digits)
{
    if (g <= 0)
        throw DomainError("exact_Z_quartic_dw requires g > 0");
    int wd = digits + 10;
    PrecisionScope scope(wd);
    BigReal gg = g.at_digits(wd);
    BigReal x = 1 / (32 * gg);
    BigReal s = bessel_I(BigReal(0.25), x) + bessel_I(BigReal(-0.25), x);
    return (const_pi(wd) / sqrt(16 * gg) * exp(x) * s).at_digits(digits);
}

namespace {

// Braces of the single-well bound as a function of N' and K.
BigReal bound_braces(int Np, const BigReal& K)
{
    BigReal n(Np);
    BigReal d1 = sqrt(K * K / (n * n * n)) * pow(K / (K + n), n - BigReal(0.5));
    BigReal d2a = pow(BigReal(2), static_cast<long>(Np)) * exp(-K) / sqrt(2 * K);
    BigReal two_n = 2 * n;
    BigReal d2b = 2 / sqrt(K) * pow(two_n, static_cast<long>(Np)) / factorial(Np) *
                  pow(two_n / K + 1, static_cast<long>(Np + 1)) * exp(-two_n - K / 2 - K * K / (two_n + K));
    return d1 + d2a + d2b;
}

}  // namespace

BigReal error_bound_quartic(int N, const BigReal& M, const BigReal& g)
{
    if (N < 0 || M < 0 || g < 0)
        throw DomainError("error_bound_quartic requires N, M, g >= 0");
    int wd = std::max(M.precision_digits(), g.precision_digits());
    PrecisionScope scope(wd);
    BigReal G = g_selfconsistent(M, g);
    BigReal K = M + 2;
    int Np = N + 1;
    return sqrt(2 / G) * pow(1 - 1 / G, static_cast<long>(Np)) * bound_braces(Np, K);
}

BigReal error_bound_quartic_gfree(int N, const BigReal& M)
{
    if (N < 0 || M < 0)
        throw DomainError("error_bound_quartic_gfree requires N, M >= 0");
    PrecisionScope scope(M.precision_digits());
    return sqrt(BigReal(2)) * bound_braces(N + 1, M + 2);
}

BigReal Q2B(const BigReal& alpha)
{
    if (alpha <= 0)
        throw DomainError("Q2B requires alpha > 0");
    return 2 * (2 / alpha + 1) * exp(-1 - alpha / 2 - alpha * alpha / (alpha + 2));
}

BigReal alpha_critical_quartic(int digits)
{
    PrecisionScope scope(digits);
    return bisect([](const BigReal& a) { return Q2B(a) - 1; }, BigReal(0.5), BigReal(1.5), BigReal("1e-10"));
}

BigReal alpha_star_quartic(int digits)
{
    PrecisionScope scope(digits);
    return bisect([](const BigReal& a) { return Q2B(a) - a / (a + 1); }, BigReal(1), BigReal(2), BigReal("1e-10"));
}

BigReal rate_bound_A(const BigReal& alpha)
{
    if (alpha <= alpha_critical_quartic(alpha.precision_digits()))
        throw DomainError("rate_bound_A requires alpha above the critical value");
    return -log10(max(Q2B(alpha), alpha / (alpha + 1)));
}

BigReal dw_critical_order(const BigReal& alpha, const BigReal& g)
{
    if (g <= 0)
        throw DomainError("dw_critical_order requires g > 0");
    if (alpha <= alpha_critical_quartic(alpha.precision_digits()))
        throw DomainError("dw_critical_order requires alpha above the critical value");
    return -sqrt(1 / (16 * g * alpha)) / log(alpha / (alpha + 1));
}

std::pair<BigReal, BigReal> coefficient_peak_indices(int n, const BigReal& K)
{
    if (n < 1 || K <= 0)
        throw DomainError("coefficient_peak_indices requires n >= 1 and K > 0");
    BigReal a = BigReal(4 * n + 1);
    BigReal b = 2 * K - 1;
    BigReal root = sqrt(a * a + b * b - 1);
    BigReal base = a + b - 3;
    return {(base - root) / 4, (base + root) / 4};
}

std::pair<BigReal, BigReal> lnQ_limits(const BigReal& alpha)
{
    if (alpha <= 0)
        throw DomainError("lnQ_limits requires alpha > 0");
    BigReal r = sqrt(alpha * alpha + 4);
    BigReal minus = -(alpha + r + 4 * atanh(alpha / 2 - r / 2)) / 2;
    BigReal plus = -(2 * log(alpha / (r - 2)) + alpha - r) / 2;
    return {minus, plus};
}

BigReal appendix_alpha_critical(int digits)
{
    PrecisionScope scope(digits);
    return bisect([](const BigReal& a) { return lnQ_limits(a).first; }, BigReal(0.5), BigReal(1.5),
                  BigReal("1e-10"));
}

std::pair<BigReal, BigReal> appendix_alpha_star(int digits)
{
    PrecisionScope scope(digits);
    BigReal a = bisect(
        [](const BigReal& x) {
            auto q = lnQ_limits(x);
            return q.first - q.second;
        },
        BigReal(1), BigReal(2), BigReal("1e-10"));
    return {a, -lnQ_limits(a).first / log(BigReal(10))};
}

std::string to_string(PropositionCase c)
{
    switch (c) {
    case PropositionCase::alternating_divergence:
        return "alternating_divergence";
    case PropositionCase::convergent:
        return "convergent";
    case PropositionCase::decays_to_zero:
        return "decays_to_zero";
    case PropositionCase::inconclusive:
        return "inconclusive";
    }
    return "inconclusive";
}

PropositionResult proposition_case_check(const MomentSchedule& schedule, const BigReal& g, int N_max, int N_min,
                                         int target_digits)
{
    if (g <= 0)
        throw DomainError("proposition_case_check requires g > 0");
    PropositionResult res;
    if (N_min < 0)
        N_min = N_max / 3;
    if (N_max < 10 || N_max - N_min < 5) {
        res.summary = "order window too small to classify";
        return res;
    }
    PrecisionPolicy pol = PrecisionPolicy::for_target(target_digits);
    BigReal Z = exact_Z_quartic(g, pol.working_digits);
    std::vector<double> logn, logz, logerr;
    std::vector<int> err_sign;
    for (int N = N_min; N <= N_max; ++N) {
        QuarticSCEParams p;
        p.g = g.at_digits(pol.working_digits);
        p.N = N;
        p.M = schedule.M(N, pol.working_digits);
        p.precision = pol;
        BigReal v = sce_partition_quartic(p).real();
        BigReal ratio = v / Z;
        res.orders.push_back(N);
        res.ratios.push_back(ratio);
        logn.push_back(std::log(static_cast<double>(N)));
        logz.push_back(log10_abs(ratio) * std::log(10.0));
        BigReal e = ratio - 1;
        logerr.push_back(log10_abs(e));
        err_sign.push_back(e.sign());
    }
    size_t L = res.orders.size();
    // Least-squares slope of log|Z^(N)| against log N.
    double mx = 0, my = 0;
    for (size_t i = 0; i < L; ++i) {
        mx += logn[i];
        my += logz[i];
    }
    mx /= L;
    my /= L;
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < L; ++i) {
        sxy += (logn[i] - mx) * (logz[i] - my);
        sxx += (logn[i] - mx) * (logn[i] - mx);
    }
    res.loglog_slope = sxy / sxx;
    int flips = 0;
    for (size_t i = 1; i < L; ++i)
        if (err_sign[i] * err_sign[i - 1] < 0)
            ++flips;
    res.sign_alternation = static_cast<double>(flips) / (L - 1);

    double first_err = logerr.front();
    double last_err = logerr.back();
    double last_ratio = res.ratios.back().to_double();
    bool monotone_down = true;
    for (size_t i = 1; i < L; ++i)
        if (std::fabs(res.ratios[i].to_double()) > std::fabs(res.ratios[i - 1].to_double()))
            monotone_down = false;

    std::ostringstream os;
    if (std::fabs(last_ratio) < 0.9 && monotone_down && res.loglog_slope < -0.02) {
        res.kind = PropositionCase::decays_to_zero;
        os << "Z^(N)/Z decreases monotonically to " << last_ratio << ", log-log slope " << res.loglog_slope;
    } else if (last_err > first_err + 1 && last_err > 0 && res.sign_alternation > 0.8) {
        res.kind = PropositionCase::alternating_divergence;
        os << "error grows from 1e" << first_err << " to 1e" << last_err << " with sign alternation "
           << res.sign_alternation;
    } else if (last_err < first_err - 1 && last_err < -2) {
        res.kind = PropositionCase::convergent;
        os << "relative error falls from 1e" << first_err << " to 1e" << last_err;
    } else {
        os << "no clear trend: error 1e" << first_err << " -> 1e" << last_err << ", ratio " << last_ratio;
    }
    res.summary = os.str();
    return res;
}

}  // namespace sce
