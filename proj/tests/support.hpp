#pragma once

#include "sce/complex.hpp"
#include "sce/mp.hpp"

// Number of matching significant digits between a value and its reference.
inline double agree_digits(const sce::BigReal& a, const sce::BigReal& ref)
{
    return -sce::log10_abs(sce::rel_diff(a, ref));
}

inline double agree_digits(const sce::BigComplex& a, const sce::BigComplex& ref)
{
    return -sce::log10_abs(sce::rel_diff(a, ref));
}
