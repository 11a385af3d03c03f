#pragma once

#include "taylorlab/rational.hpp"

#include <boost/math/special_functions/log1p.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <limits>

namespace taylorlab {

// Internal working precision for every floating computation. The solved
// coefficients are y_i / eps^i, so at eps = 1e-3 and degree 6 any rounding
// in the scaled system is amplified by 1e18. IEEE double cannot carry that;
// 113-bit floats can, with room to spare. Public interfaces stay double.
using Wide = boost::multiprecision::cpp_bin_float_quad;

inline double to_double(const Wide& x) { return x.convert_to<double>(); }

inline Wide wide_from_rational(const Rational& q) { return Wide(q); }

inline Wide wide_eps() { return std::numeric_limits<Wide>::epsilon(); }

inline Wide wide_abs(const Wide& x) { return x < 0 ? Wide(-x) : x; }

inline Wide wide_pow_int(const Wide& base, long exponent) {
    if (exponent == 0) return Wide(1);
    bool negative = exponent < 0;
    unsigned long n = negative ? static_cast<unsigned long>(-exponent)
                               : static_cast<unsigned long>(exponent);
    Wide result(1);
    Wide factor = base;
    while (n > 0) {
        if (n & 1UL) result *= factor;
        factor *= factor;
        n >>= 1UL;
    }
    return negative ? Wide(1) / result : result;
}

inline Wide wide_log1p(const Wide& x) { return boost::math::log1p(x); }

}  // namespace taylorlab
