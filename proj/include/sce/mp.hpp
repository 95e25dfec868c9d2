#pragma once

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>

#include "sce/errors.hpp"

namespace sce {

// Decimal digits <-> binary precision. Every precision below kMinDigits is
// clamped up, so a BigReal never carries fewer than 16 significant digits.
inline constexpr int kMinDigits = 16;
mpfr_prec_t digits_to_bits(int digits);
int bits_to_digits(mpfr_prec_t bits);

// Precision used for values built from literals on this thread.
int default_digits();
void set_default_digits(int digits);

class PrecisionScope {
public:
    explicit PrecisionScope(int digits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    int saved_;
};

class BigReal {
public:
    BigReal();
    BigReal(int v);
    BigReal(long v);
    BigReal(long long v);
    BigReal(unsigned long v);
    BigReal(double v);
    explicit BigReal(const std::string& s);
    explicit BigReal(const char* s);

    static BigReal with_digits(int digits);
    static BigReal from_string(const std::string& s, int digits);

    BigReal(const BigReal& o);
    BigReal(BigReal&& o) noexcept;
    BigReal& operator=(const BigReal& o);
    BigReal& operator=(BigReal&& o) noexcept;
    ~BigReal();

    int precision_digits() const { return bits_to_digits(mpfr_get_prec(v_)); }
    mpfr_prec_t bits() const { return mpfr_get_prec(v_); }

    // Returns a copy rounded to the given precision.
    BigReal at_digits(int digits) const;

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
    std::string str(int digits = 0, bool scientific = true) const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    BigReal operator-() const;
    BigReal& operator+=(const BigReal& o);
    BigReal& operator-=(const BigReal& o);
    BigReal& operator*=(const BigReal& o);
    BigReal& operator/=(const BigReal& o);

    friend BigReal operator+(const BigReal& a, const BigReal& b);
    friend BigReal operator-(const BigReal& a, const BigReal& b);
    friend BigReal operator*(const BigReal& a, const BigReal& b);
    friend BigReal operator/(const BigReal& a, const BigReal& b);
    friend BigReal operator+(const BigReal& a, long b);
    friend BigReal operator-(const BigReal& a, long b);
    friend BigReal operator*(const BigReal& a, long b);
    friend BigReal operator/(const BigReal& a, long b);
    friend BigReal operator+(long a, const BigReal& b) { return b + a; }
    friend BigReal operator-(long a, const BigReal& b);
    friend BigReal operator*(long a, const BigReal& b) { return b * a; }
    friend BigReal operator/(long a, const BigReal& b);
    friend BigReal operator+(const BigReal& a, int b) { return a + long(b); }
    friend BigReal operator-(const BigReal& a, int b) { return a - long(b); }
    friend BigReal operator*(const BigReal& a, int b) { return a * long(b); }
    friend BigReal operator/(const BigReal& a, int b) { return a / long(b); }
    friend BigReal operator+(int a, const BigReal& b) { return b + long(a); }
    friend BigReal operator-(int a, const BigReal& b) { return long(a) - b; }
    friend BigReal operator*(int a, const BigReal& b) { return b * long(a); }
    friend BigReal operator/(int a, const BigReal& b) { return long(a) / b; }

    friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);
    friend bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
    friend std::partial_ordering operator<=>(const BigReal& a, long b);
    friend bool operator==(const BigReal& a, int b) { return a == long(b); }
    friend std::partial_ordering operator<=>(const BigReal& a, int b) { return a <=> long(b); }
    friend bool operator==(const BigReal& a, double b) { return mpfr_cmp_d(a.v_, b) == 0; }
    friend std::partial_ordering operator<=>(const BigReal& a, double b);

private:
    explicit BigReal(mpfr_prec_t bits, int /*tag*/);
    mpfr_t v_;
};

std::ostream& operator<<(std::ostream& os, const BigReal& x);

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal cbrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal expm1(const BigReal& x);
BigReal log(const BigReal& x);
BigReal log1p(const BigReal& x);
BigReal log10(const BigReal& x);
BigReal log2(const BigReal& x);
BigReal pow(const BigReal& x, const BigReal& y);
BigReal pow(const BigReal& x, long n);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
BigReal tan(const BigReal& x);
BigReal sinh(const BigReal& x);
BigReal cosh(const BigReal& x);
BigReal tanh(const BigReal& x);
BigReal atan(const BigReal& x);
BigReal atan2(const BigReal& y, const BigReal& x);
BigReal atanh(const BigReal& x);
BigReal floor(const BigReal& x);
BigReal ceil(const BigReal& x);
BigReal round(const BigReal& x);
BigReal lgamma_abs(const BigReal& x);
BigReal min(const BigReal& a, const BigReal& b);
BigReal max(const BigReal& a, const BigReal& b);
BigReal ldexp(const BigReal& x, long e);

BigReal const_pi(int digits = 0);
BigReal const_euler(int digits = 0);
BigReal const_ln2(int digits = 0);

// n! and binomial coefficients as exact integers converted at the given precision.
BigReal factorial(unsigned long n, int digits = 0);

// log10 of |x|; -infinity for zero.
double log10_abs(const BigReal& x);

// Relative difference |a-b|/|b| (absolute when b == 0).
BigReal rel_diff(const BigReal& a, const BigReal& b);

struct PrecisionPolicy {
    int target_digits = 30;
    int working_digits = 90;
    std::string guard_rule = "working = 3 x target, escalate to 4 x";

    static PrecisionPolicy for_target(int target);
    PrecisionPolicy escalated() const;
};

}  // namespace sce
