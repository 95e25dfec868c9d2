#pragma once

#include <iosfwd>

#include "sce/mp.hpp"

namespace sce {

// Complex scalar on two BigReal parts held at equal precision. Multivalued
// functions (arg, log, sqrt, fractional powers) use the principal branch with
// arg in (-pi, pi] and the cut along the negative real axis.
class BigComplex {
public:
    BigComplex();
    BigComplex(const BigReal& re);
    BigComplex(const BigReal& re, const BigReal& im);
    BigComplex(int re) : BigComplex(BigReal(re)) {}
    BigComplex(long re) : BigComplex(BigReal(re)) {}
    BigComplex(double re) : BigComplex(BigReal(re)) {}

    static BigComplex polar(const BigReal& r, const BigReal& theta);
    static BigComplex i(int digits = 0);

    const BigReal& re() const { return re_; }
    const BigReal& im() const { return im_; }
    int precision_digits() const { return re_.precision_digits(); }
    BigComplex at_digits(int digits) const;
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_finite() const { return re_.is_finite() && im_.is_finite(); }

    BigComplex operator-() const { return {-re_, -im_}; }
    BigComplex& operator+=(const BigComplex& o) { return *this = *this + o; }
    BigComplex& operator-=(const BigComplex& o) { return *this = *this - o; }
    BigComplex& operator*=(const BigComplex& o) { return *this = *this * o; }
    BigComplex& operator/=(const BigComplex& o) { return *this = *this / o; }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator*(const BigComplex& a, const BigReal& b);
    friend BigComplex operator*(const BigReal& a, const BigComplex& b) { return b * a; }
    friend BigComplex operator/(const BigComplex& a, const BigReal& b);
    friend BigComplex operator*(const BigComplex& a, long b);
    friend BigComplex operator*(long a, const BigComplex& b) { return b * a; }
    friend BigComplex operator/(const BigComplex& a, long b);
    friend bool operator==(const BigComplex& a, const BigComplex& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

private:
    void equalize();
    BigReal re_;
    BigReal im_;
};

std::ostream& operator<<(std::ostream& os, const BigComplex& z);

BigReal abs(const BigComplex& z);
BigReal norm(const BigComplex& z);
BigReal arg(const BigComplex& z);
BigComplex conj(const BigComplex& z);
BigComplex sqrt(const BigComplex& z);
BigComplex exp(const BigComplex& z);
BigComplex log(const BigComplex& z);
BigComplex sin(const BigComplex& z);
BigComplex pow(const BigComplex& z, const BigReal& w);
BigComplex pow(const BigComplex& z, const BigComplex& w);
BigComplex pow(const BigComplex& z, long n);
BigReal rel_diff(const BigComplex& a, const BigComplex& b);

}  // namespace sce
