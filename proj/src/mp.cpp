#include "sce/mp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace sce {

namespace {

thread_local int t_default_digits = 50;

constexpr double kLog2Of10 = 3.321928094887362;

mpfr_prec_t max_bits(const BigReal& a, const BigReal& b) { return std::max(a.bits(), b.bits()); }

}  // namespace

mpfr_prec_t digits_to_bits(int digits)
{
    digits = std::max(digits, kMinDigits);
    return static_cast<mpfr_prec_t>(std::ceil(digits * kLog2Of10)) + 2;
}

int bits_to_digits(mpfr_prec_t bits)
{
    return static_cast<int>(std::floor((static_cast<double>(bits) - 2.0) / kLog2Of10 + 1e-9));
}

int default_digits() { return t_default_digits; }

void set_default_digits(int digits) { t_default_digits = std::max(digits, kMinDigits); }

PrecisionScope::PrecisionScope(int digits) : saved_(t_default_digits) { set_default_digits(digits); }

PrecisionScope::~PrecisionScope() { t_default_digits = saved_; }

BigReal::BigReal(mpfr_prec_t bits, int) { mpfr_init2(v_, bits); }

BigReal::BigReal() : BigReal(digits_to_bits(t_default_digits), 0) { mpfr_set_zero(v_, 1); }

BigReal::BigReal(int v) : BigReal(digits_to_bits(t_default_digits), 0) { mpfr_set_si(v_, v, MPFR_RNDN); }

BigReal::BigReal(long v) : BigReal(digits_to_bits(t_default_digits), 0) { mpfr_set_si(v_, v, MPFR_RNDN); }

BigReal::BigReal(long long v) : BigReal(digits_to_bits(t_default_digits), 0)
{
    mpfr_set_si(v_, static_cast<long>(v), MPFR_RNDN);
}

BigReal::BigReal(unsigned long v) : BigReal(digits_to_bits(t_default_digits), 0)
{
    mpfr_set_ui(v_, v, MPFR_RNDN);
}

BigReal::BigReal(double v) : BigReal(digits_to_bits(t_default_digits), 0) { mpfr_set_d(v_, v, MPFR_RNDN); }

BigReal::BigReal(const std::string& s) : BigReal(s.c_str()) {}

BigReal::BigReal(const char* s) : BigReal(digits_to_bits(t_default_digits), 0)
{
    // The delegated constructor already completed, so the destructor frees v_.
    if (mpfr_set_str(v_, s, 10, MPFR_RNDN) != 0)
        throw DomainError(std::string("not a decimal number: ") + s);
}

BigReal BigReal::with_digits(int digits)
{
    BigReal r(digits_to_bits(digits), 0);
    mpfr_set_zero(r.v_, 1);
    return r;
}

BigReal BigReal::from_string(const std::string& s, int digits)
{
    BigReal r(digits_to_bits(digits), 0);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
        throw DomainError("not a decimal number: " + s);
    return r;
}

BigReal::BigReal(const BigReal& o) : BigReal(o.bits(), 0) { mpfr_set(v_, o.v_, MPFR_RNDN); }

BigReal::BigReal(BigReal&& o) noexcept : BigReal(mpfr_get_prec(o.v_), 0) { mpfr_swap(v_, o.v_); }

BigReal& BigReal::operator=(const BigReal& o)
{
    if (this != &o) {
        mpfr_set_prec(v_, o.bits());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigReal& BigReal::operator=(BigReal&& o) noexcept
{
    mpfr_swap(v_, o.v_);
    return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

BigReal BigReal::at_digits(int digits) const
{
    BigReal r(digits_to_bits(digits), 0);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}

std::string BigReal::str(int digits, bool scientific) const
{
    if (digits <= 0)
        digits = precision_digits();
    char* buf = nullptr;
    if (scientific)
        mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
    else
        mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

BigReal BigReal::operator-() const
{
    BigReal r(bits(), 0);
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

BigReal& BigReal::operator+=(const BigReal& o) { return *this = *this + o; }
BigReal& BigReal::operator-=(const BigReal& o) { return *this = *this - o; }
BigReal& BigReal::operator*=(const BigReal& o) { return *this = *this * o; }
BigReal& BigReal::operator/=(const BigReal& o) { return *this = *this / o; }

BigReal operator+(const BigReal& a, const BigReal& b)
{
    BigReal r(max_bits(a, b), 0);
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigReal operator-(const BigReal& a, const BigReal& b)
{
    BigReal r(max_bits(a, b), 0);
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigReal operator*(const BigReal& a, const BigReal& b)
{
    BigReal r(max_bits(a, b), 0);
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigReal operator/(const BigReal& a, const BigReal& b)
{
    BigReal r(max_bits(a, b), 0);
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigReal operator+(const BigReal& a, long b)
{
    BigReal r(a.bits(), 0);
    mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

BigReal operator-(const BigReal& a, long b)
{
    BigReal r(a.bits(), 0);
    mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

BigReal operator*(const BigReal& a, long b)
{
    BigReal r(a.bits(), 0);
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

BigReal operator/(const BigReal& a, long b)
{
    BigReal r(a.bits(), 0);
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

BigReal operator-(long a, const BigReal& b)
{
    BigReal r(b.bits(), 0);
    mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
}

BigReal operator/(long a, const BigReal& b)
{
    BigReal r(b.bits(), 0);
    mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
    return r;
}

static std::partial_ordering order_from_cmp(int c, bool unordered)
{
    if (unordered)
        return std::partial_ordering::unordered;
    if (c < 0)
        return std::partial_ordering::less;
    if (c > 0)
        return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b)
{
    bool un = mpfr_unordered_p(a.v_, b.v_) != 0;
    return order_from_cmp(un ? 0 : mpfr_cmp(a.v_, b.v_), un);
}

std::partial_ordering operator<=>(const BigReal& a, long b)
{
    bool un = mpfr_nan_p(a.v_) != 0;
    return order_from_cmp(un ? 0 : mpfr_cmp_si(a.v_, b), un);
}

std::partial_ordering operator<=>(const BigReal& a, double b)
{
    bool un = mpfr_nan_p(a.v_) != 0 || std::isnan(b);
    return order_from_cmp(un ? 0 : mpfr_cmp_d(a.v_, b), un);
}

std::ostream& operator<<(std::ostream& os, const BigReal& x)
{
    auto p = os.precision();
    return os << x.str(static_cast<int>(std::max<std::streamsize>(p, 6)));
}

#define SCE_UNARY(name, fn)                         \
    BigReal name(const BigReal& x)                  \
    {                                               \
        BigReal r = BigReal::with_digits(16);       \
        mpfr_set_prec(r.raw(), x.bits());           \
        fn(r.raw(), x.raw(), MPFR_RNDN);            \
        return r;                                   \
    }

SCE_UNARY(abs, mpfr_abs)
SCE_UNARY(sqrt, mpfr_sqrt)
SCE_UNARY(cbrt, mpfr_cbrt)
SCE_UNARY(exp, mpfr_exp)
SCE_UNARY(expm1, mpfr_expm1)
SCE_UNARY(log, mpfr_log)
SCE_UNARY(log1p, mpfr_log1p)
SCE_UNARY(log10, mpfr_log10)
SCE_UNARY(log2, mpfr_log2)
SCE_UNARY(sin, mpfr_sin)
SCE_UNARY(cos, mpfr_cos)
SCE_UNARY(tan, mpfr_tan)
SCE_UNARY(sinh, mpfr_sinh)
SCE_UNARY(cosh, mpfr_cosh)
SCE_UNARY(tanh, mpfr_tanh)
SCE_UNARY(atan, mpfr_atan)
SCE_UNARY(atanh, mpfr_atanh)

#undef SCE_UNARY

BigReal floor(const BigReal& x)
{
    BigReal r = x;
    mpfr_floor(r.raw(), x.raw());
    return r;
}

BigReal ceil(const BigReal& x)
{
    BigReal r = x;
    mpfr_ceil(r.raw(), x.raw());
    return r;
}

BigReal round(const BigReal& x)
{
    BigReal r = x;
    mpfr_round(r.raw(), x.raw());
    return r;
}

BigReal pow(const BigReal& x, const BigReal& y)
{
    BigReal r = BigReal::with_digits(16);
    mpfr_set_prec(r.raw(), std::max(x.bits(), y.bits()));
    mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}

BigReal pow(const BigReal& x, long n)
{
    BigReal r = x;
    mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
    return r;
}

BigReal atan2(const BigReal& y, const BigReal& x)
{
    BigReal r = BigReal::with_digits(16);
    mpfr_set_prec(r.raw(), std::max(x.bits(), y.bits()));
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}

BigReal lgamma_abs(const BigReal& x)
{
    BigReal r = x;
    int sgn = 0;
    mpfr_lgamma(r.raw(), &sgn, x.raw(), MPFR_RNDN);
    return r;
}

BigReal min(const BigReal& a, const BigReal& b) { return (b < a) ? b : a; }

BigReal max(const BigReal& a, const BigReal& b) { return (a < b) ? b : a; }

BigReal ldexp(const BigReal& x, long e)
{
    BigReal r = x;
    mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
    return r;
}

BigReal const_pi(int digits)
{
    BigReal r = BigReal::with_digits(digits > 0 ? digits : default_digits());
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

BigReal const_euler(int digits)
{
    BigReal r = BigReal::with_digits(digits > 0 ? digits : default_digits());
    mpfr_const_euler(r.raw(), MPFR_RNDN);
    return r;
}

BigReal const_ln2(int digits)
{
    BigReal r = BigReal::with_digits(digits > 0 ? digits : default_digits());
    mpfr_const_log2(r.raw(), MPFR_RNDN);
    return r;
}

BigReal factorial(unsigned long n, int digits)
{
    BigReal r = BigReal::with_digits(digits > 0 ? digits : default_digits());
    mpfr_fac_ui(r.raw(), n, MPFR_RNDN);
    return r;
}

double log10_abs(const BigReal& x)
{
    if (x.is_zero())
        return -std::numeric_limits<double>::infinity();
    long e = 0;
    double m = mpfr_get_d_2exp(&e, x.raw(), MPFR_RNDN);
    return std::log10(std::fabs(m)) + static_cast<double>(e) * 0.30102999566398120;
}

BigReal rel_diff(const BigReal& a, const BigReal& b)
{
    if (b.is_zero())
        return abs(a - b);
    return abs((a - b) / b);
}

PrecisionPolicy PrecisionPolicy::for_target(int target)
{
    PrecisionPolicy p;
    p.target_digits = std::max(target, kMinDigits);
    p.working_digits = 3 * p.target_digits;
    return p;
}

PrecisionPolicy PrecisionPolicy::escalated() const
{
    PrecisionPolicy p = *this;
    p.working_digits = std::max(working_digits, 4 * target_digits);
    p.guard_rule = "escalated to 4 x target after cancellation monitor tripped";
    return p;
}

}  // namespace sce
