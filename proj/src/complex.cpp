#include "sce/complex.hpp"

#include <algorithm>
#include <ostream>

namespace sce {

BigComplex::BigComplex() : re_(0), im_(0) {}

BigComplex::BigComplex(const BigReal& re) : re_(re), im_(BigReal::with_digits(re.precision_digits())) {}

BigComplex::BigComplex(const BigReal& re, const BigReal& im) : re_(re), im_(im) { equalize(); }

void BigComplex::equalize()
{
    if (re_.bits() == im_.bits())
        return;
    int d = std::max(re_.precision_digits(), im_.precision_digits());
    re_ = re_.at_digits(d);
    im_ = im_.at_digits(d);
}

BigComplex BigComplex::polar(const BigReal& r, const BigReal& theta)
{
    return {r * cos(theta), r * sin(theta)};
}

BigComplex BigComplex::i(int digits)
{
    int d = digits > 0 ? digits : default_digits();
    return {BigReal::with_digits(d), BigReal(1).at_digits(d)};
}

BigComplex BigComplex::at_digits(int digits) const { return {re_.at_digits(digits), im_.at_digits(digits)}; }

BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re_ + b.re_, a.im_ + b.im_}; }

BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re_ - b.re_, a.im_ - b.im_}; }

BigComplex operator*(const BigComplex& a, const BigComplex& b)
{
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
}

BigComplex operator/(const BigComplex& a, const BigComplex& b)
{
    // Scaled division avoids overflow when |b| is extreme.
    if (abs(b.re_) >= abs(b.im_)) {
        BigReal t = b.im_ / b.re_;
        BigReal d = b.re_ + b.im_ * t;
        return {(a.re_ + a.im_ * t) / d, (a.im_ - a.re_ * t) / d};
    }
    BigReal t = b.re_ / b.im_;
    BigReal d = b.re_ * t + b.im_;
    return {(a.re_ * t + a.im_) / d, (a.im_ * t - a.re_) / d};
}

BigComplex operator*(const BigComplex& a, const BigReal& b) { return {a.re_ * b, a.im_ * b}; }

BigComplex operator/(const BigComplex& a, const BigReal& b) { return {a.re_ / b, a.im_ / b}; }

BigComplex operator*(const BigComplex& a, long b) { return {a.re_ * b, a.im_ * b}; }

BigComplex operator/(const BigComplex& a, long b) { return {a.re_ / b, a.im_ / b}; }

std::ostream& operator<<(std::ostream& os, const BigComplex& z)
{
    return os << "(" << z.re() << ", " << z.im() << ")";
}

BigReal abs(const BigComplex& z)
{
    BigReal r = z.re();
    mpfr_hypot(r.raw(), z.re().raw(), z.im().raw(), MPFR_RNDN);
    return r;
}

BigReal norm(const BigComplex& z) { return z.re() * z.re() + z.im() * z.im(); }

BigReal arg(const BigComplex& z)
{
    // atan2 returns values in [-pi, pi]; map -pi (from a negative zero
    // imaginary part) onto +pi to keep the interval half-open.
    BigReal a = atan2(z.im(), z.re());
    if (z.im().is_zero() && z.re() < 0)
        a = const_pi(z.precision_digits());
    return a;
}

BigComplex conj(const BigComplex& z) { return {z.re(), -z.im()}; }

BigComplex sqrt(const BigComplex& z)
{
    if (z.is_zero())
        return z;
    BigReal r = abs(z);
    BigReal a = sqrt((r + abs(z.re())) / 2);
    if (z.re() >= 0)
        return {a, z.im() / (2 * a)};
    BigReal b = z.im().sign() < 0 ? -a : a;
    return {abs(z.im()) / (2 * a), b};
}

BigComplex exp(const BigComplex& z)
{
    BigReal m = exp(z.re());
    return {m * cos(z.im()), m * sin(z.im())};
}

BigComplex log(const BigComplex& z)
{
    if (z.is_zero())
        throw DomainError("log of zero");
    return {log(abs(z)), arg(z)};
}

BigComplex sin(const BigComplex& z)
{
    return {sin(z.re()) * cosh(z.im()), cos(z.re()) * sinh(z.im())};
}

BigComplex pow(const BigComplex& z, const BigReal& w)
{
    if (z.is_zero()) {
        if (w > 0)
            return BigComplex(BigReal::with_digits(z.precision_digits()));
        throw DomainError("zero raised to a non-positive power");
    }
    BigReal r = pow(abs(z), w);
    return BigComplex::polar(r, arg(z) * w);
}

BigComplex pow(const BigComplex& z, const BigComplex& w)
{
    if (z.is_zero())
        throw DomainError("complex power of zero");
    return exp(w * log(z));
}

BigComplex pow(const BigComplex& z, long n)
{
    if (n < 0)
        return BigComplex(BigReal(1).at_digits(z.precision_digits())) / pow(z, -n);
    BigComplex result(BigReal(1).at_digits(z.precision_digits()));
    BigComplex base = z;
    while (n > 0) {
        if (n & 1)
            result *= base;
        n >>= 1;
        if (n > 0)
            base *= base;
    }
    return result;
}

BigReal rel_diff(const BigComplex& a, const BigComplex& b)
{
    BigReal d = abs(a - b);
    if (b.is_zero())
        return d;
    return d / abs(b);
}

}  // namespace sce
