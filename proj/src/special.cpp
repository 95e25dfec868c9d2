#include "sce/special.hpp"

#include <cmath>
#include <map>
#include <vector>

namespace sce {

namespace {

bool is_nonpositive_integer(const BigReal& x) { return x <= 0 && floor(x) == x; }

struct SpougeTable {
    long a = 0;
    std::vector<BigReal> c;  // c[0] = sqrt(2 pi), c[k] for k = 1..a-1
};

int spouge_working_digits(int digits) { return 2 * digits + 20; }

const SpougeTable& spouge_table(int digits)
{
    thread_local std::map<int, SpougeTable> cache;
    auto it = cache.find(digits);
    if (it != cache.end())
        return it->second;

    int wd = spouge_working_digits(digits);
    PrecisionScope scope(wd);
    SpougeTable t;
    // Relative error is below a^(-1/2) (2 pi)^-(a + 1/2).
    t.a = static_cast<long>(std::ceil((digits + 2) * std::log(10.0) / std::log(2 * M_PI))) + 2;
    t.c.reserve(t.a);
    BigReal two_pi = 2 * const_pi(wd);
    t.c.push_back(sqrt(two_pi));
    BigReal fact(1);  // (k-1)!
    for (long k = 1; k < t.a; ++k) {
        if (k > 1)
            fact = fact * (k - 1);
        BigReal base(t.a - k);
        BigReal v = pow(base, BigReal(k) - BigReal(0.5)) * exp(base) / fact;
        if ((k - 1) % 2 == 1)
            v = -v;
        t.c.push_back(v);
    }
    return cache.emplace(digits, std::move(t)).first->second;
}

// Gamma(w + 1) for Re w > -1/2 by the Spouge sum.
BigComplex spouge_shifted(const BigComplex& w, int digits)
{
    const SpougeTable& t = spouge_table(digits);
    int wd = spouge_working_digits(digits);
    BigComplex ww = w.at_digits(wd);
    BigComplex sum(t.c[0]);
    for (long k = 1; k < t.a; ++k)
        sum += BigComplex(t.c[k]) / (ww + BigComplex(BigReal(k).at_digits(wd)));
    BigComplex wa = ww + BigComplex(BigReal(t.a).at_digits(wd));
    BigComplex half(BigReal(0.5).at_digits(wd));
    BigComplex r = pow(wa, ww + half) * exp(-wa) * sum;
    return r.at_digits(digits);
}

}  // namespace

BigReal gamma(const BigReal& x)
{
    if (is_nonpositive_integer(x))
        throw PoleError("gamma pole at " + x.str(20));
    BigReal r = x;
    mpfr_gamma(r.raw(), x.raw(), MPFR_RNDN);
    if (!r.is_finite())
        throw OverflowError("gamma overflow at " + x.str(20));
    return r;
}

BigComplex gamma(const BigComplex& z)
{
    int digits = z.precision_digits();
    if (z.im().is_zero() && is_nonpositive_integer(z.re()))
        throw PoleError("gamma pole at " + z.re().str(20));
    if (z.re() < BigReal(0.5)) {
        int wd = digits + 10;
        BigComplex zz = z.at_digits(wd);
        BigReal pi = const_pi(wd);
        BigComplex one(BigReal(1).at_digits(wd));
        BigComplex refl = BigComplex(pi) / (sin(zz * pi) * gamma(one - zz));
        return refl.at_digits(digits);
    }
    BigComplex one(BigReal(1).at_digits(digits));
    return spouge_shifted(z - one, digits);
}

BigReal spouge_gamma(const BigReal& x)
{
    return gamma(BigComplex(x)).re();
}

BigReal half_gamma_over_factorial(int n, int digits)
{
    PrecisionScope scope(digits);
    BigReal b = sqrt(const_pi(digits));
    for (int k = 1; k <= n; ++k)
        b = b * (2 * k - 1) / (2 * k);
    return b;
}

BigReal bessel_I(const BigReal& nu, const BigReal& x)
{
    if (x <= 0)
        throw DomainError("bessel_I requires x > 0");
    int digits = std::max(x.precision_digits(), nu.precision_digits());
    if (nu < 0 && floor(nu) == nu)
        return bessel_I(-nu, x);
    // Terms are positive for nu > -1; negative orders below that get extra guard.
    int guard = 10 + (nu < -1 ? static_cast<int>(std::ceil(std::fabs(nu.to_double()))) * 2 : 0);
    int wd = digits + guard;
    PrecisionScope scope(wd);
    BigReal xx = x.at_digits(wd);
    BigReal v = nu.at_digits(wd);
    BigReal half = xx / 2;
    BigReal q = half * half;
    BigReal term = pow(half, v) / gamma(v + 1);
    BigReal sum = term;
    BigReal eps = pow(BigReal(10), -static_cast<long>(wd));
    double kmin = x.to_double() / 2 + 2;
    for (long k = 1;; ++k) {
        term = term * q / (BigReal(k) * (v + k));
        sum += term;
        if (k > kmin && abs(term) <= eps * abs(sum))
            break;
        if (k > 10000000)
            throw ConvergenceError("bessel_I series did not converge");
    }
    if (!sum.is_finite())
        throw OverflowError("bessel_I overflow at x = " + x.str(20));
    return sum.at_digits(digits);
}

double bessel_K_crossover(int digits) { return (digits + 5) * std::log(10.0) / 2.0; }

namespace {

BigReal bessel_K_asymptotic_sum(const BigReal& nu, const BigReal& x, int digits)
{
    int wd = digits + 10;
    PrecisionScope scope(wd);
    BigReal xx = x.at_digits(wd);
    BigReal mu = 4 * nu.at_digits(wd) * nu.at_digits(wd);
    BigReal term(1);
    BigReal sum(1);
    BigReal eps = pow(BigReal(10), -static_cast<long>(digits + 2));
    BigReal prev = abs(term);
    for (long k = 1;; ++k) {
        term = term * (mu - BigReal((2 * k - 1) * (2 * k - 1))) / (8 * k * xx);
        sum += term;
        BigReal at = abs(term);
        if (at <= eps * abs(sum))
            break;
        if (at > prev && k > 2)
            throw ConvergenceError("bessel_K asymptotic series stalled before reaching precision");
        prev = at;
    }
    return sqrt(const_pi(wd) / (2 * xx)) * sum;
}

BigReal bessel_K_series(const BigReal& nu, const BigReal& x, int digits)
{
    if (floor(nu) == nu)
        throw DomainError("bessel_K series branch requires a non-integer order");
    // I_{-nu} - I_nu cancels about 2x log10(e) digits.
    int guard = static_cast<int>(std::ceil(2 * x.to_double() * 0.4342944819)) + 10;
    int wd = digits + guard;
    BigReal xx = x.at_digits(wd);
    BigReal v = nu.at_digits(wd);
    BigReal pi = const_pi(wd);
    BigReal diff = bessel_I(-v, xx) - bessel_I(v, xx);
    return (pi / (2 * sin(v * pi)) * diff).at_digits(digits);
}

}  // namespace

BigReal bessel_K_scaled(const BigReal& nu, const BigReal& x, BesselBranch branch)
{
    if (x <= 0)
        throw DomainError("bessel_K requires x > 0");
    int digits = std::max(x.precision_digits(), nu.precision_digits());
    if (branch == BesselBranch::automatic)
        branch = x.to_double() >= bessel_K_crossover(digits) ? BesselBranch::asymptotic : BesselBranch::series;
    int wd = digits + 5;
    if (branch == BesselBranch::asymptotic)
        return bessel_K_asymptotic_sum(nu, x, digits).at_digits(digits);
    BigReal k = bessel_K_series(nu, x, wd);
    return (k * exp(x.at_digits(wd))).at_digits(digits);
}

BigReal bessel_K(const BigReal& nu, const BigReal& x, BesselBranch branch)
{
    if (x <= 0)
        throw DomainError("bessel_K requires x > 0");
    int digits = std::max(x.precision_digits(), nu.precision_digits());
    if (branch == BesselBranch::automatic)
        branch = x.to_double() >= bessel_K_crossover(digits) ? BesselBranch::asymptotic : BesselBranch::series;
    if (branch == BesselBranch::series)
        return bessel_K_series(nu, x, digits);
    int wd = digits + 5;
    BigReal r = bessel_K_asymptotic_sum(nu, x, digits) * exp(-x.at_digits(wd));
    if (r.is_zero())
        throw OverflowError("bessel_K underflows at x = " + x.str(20));
    return r.at_digits(digits);
}

BigReal exp_integral_E1(const BigReal& x)
{
    if (x.is_zero())
        throw DomainError("E1 is singular at 0");
    int digits = x.precision_digits();
    double xd = x.to_double();
    if (xd > 0 && xd > (digits + 5) * std::log(10.0)) {
        // Large-x expansion truncated at its least term.
        int wd = digits + 10;
        PrecisionScope scope(wd);
        BigReal xx = x.at_digits(wd);
        BigReal term(1);
        BigReal sum(1);
        BigReal eps = pow(BigReal(10), -static_cast<long>(digits + 2));
        for (long k = 1; k < xd; ++k) {
            term = -term * k / xx;
            sum += term;
            if (abs(term) <= eps)
                break;
        }
        return (exp(-xx) / xx * sum).at_digits(digits);
    }
    // Series: E1(x) = -gamma - ln|x| - sum_k (-x)^k / (k k!). For x > 0 the
    // alternating terms cancel about x log10(e) digits; for x < 0 they are
    // all positive and the same formula gives the principal value.
    int guard = (xd > 0 ? static_cast<int>(std::ceil(xd * 0.4342944819)) : 0) + 10;
    int wd = digits + guard;
    PrecisionScope scope(wd);
    BigReal xx = x.at_digits(wd);
    BigReal mx = -xx;
    BigReal p(1);  // (-x)^k / k!
    BigReal sum;
    BigReal eps = pow(BigReal(10), -static_cast<long>(wd));
    double kmin = std::fabs(xd) + 2;
    for (long k = 1;; ++k) {
        p = p * mx / k;
        BigReal term = p / k;
        sum += term;
        if (k > kmin && abs(term) <= eps * abs(sum))
            break;
        if (k > 50000000)
            throw ConvergenceError("E1 series did not converge");
    }
    BigReal r = -const_euler(wd) - log(abs(xx)) - sum;
    return r.at_digits(digits);
}

BigComplex airy_reference(const BigComplex& z, int digits)
{
    double az = abs(z).to_double();
    // The two Maclaurin pieces grow like exp((2/3)|z|^1.5) while Ai can be as
    // small as exp(-(2/3)|z|^1.5).
    int guard = static_cast<int>(std::ceil(4.0 / 3.0 * std::pow(az, 1.5) * 0.4342944819)) + 10;
    int wd = digits + guard;
    PrecisionScope scope(wd);
    BigComplex zz = z.at_digits(wd);
    BigComplex z3 = zz * zz * zz;
    BigReal c1 = pow(BigReal(3), BigReal(-2) / 3) / gamma(BigReal(2) / 3);
    BigReal c2 = pow(BigReal(3), BigReal(-1) / 3) / gamma(BigReal(1) / 3);
    BigComplex tf(BigReal(1));
    BigComplex tg = zz;
    BigComplex f = tf;
    BigComplex g = tg;
    BigReal peak = max(BigReal(1), abs(zz));
    BigReal eps = pow(BigReal(10), -static_cast<long>(wd));
    double kmin = std::pow(az, 1.5) / 3 + 2;
    for (long k = 1;; ++k) {
        tf = tf * z3 / ((3 * k - 1) * (3 * k));
        tg = tg * z3 / ((3 * k) * (3 * k + 1));
        f += tf;
        g += tg;
        BigReal m = abs(tf) + abs(tg);
        peak = max(peak, m);
        if (k > kmin && m <= eps * peak)
            break;
        if (k > 10000000)
            throw ConvergenceError("Airy Maclaurin series did not converge");
    }
    BigComplex r = f * c1 - g * c2;
    return r.at_digits(digits);
}

}  // namespace sce
