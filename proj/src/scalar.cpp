#include "taylorlab/scalar.hpp"

#include <charconv>
#include <cmath>

namespace taylorlab {

Scalar Scalar::pow(long exponent) const {
    if (is_exact()) {
        return Scalar(rational_pow(rat(), exponent));
    }
    // Repeated multiplication keeps parity-exact results (e.g. eps^n with
    // integer n) bit-reproducible across platforms, unlike std::pow.
    double base = dbl();
    if (exponent == 0) return Scalar(1.0);
    bool negative = exponent < 0;
    unsigned long n = negative ? static_cast<unsigned long>(-exponent)
                               : static_cast<unsigned long>(exponent);
    double result = 1.0;
    double factor = base;
    while (n > 0) {
        if (n & 1UL) result *= factor;
        factor *= factor;
        n >>= 1UL;
    }
    return Scalar(negative ? 1.0 / result : result);
}

std::string Scalar::str() const {
    if (is_exact()) {
        return rational_to_string(rat());
    }
    return shortest_double_string(dbl());
}

std::string shortest_double_string(double value) {
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc()) {
        return "nan";
    }
    return std::string(buffer, ptr);
}

}  // namespace taylorlab
