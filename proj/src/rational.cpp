#include "taylorlab/rational.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace taylorlab {

Rational rational_pow(const Rational& base, long exponent) {
    if (exponent == 0) {
        return Rational(1);
    }
    if (base == 0 && exponent < 0) {
        throw std::domain_error("rational_pow: zero base with negative exponent");
    }
    Rational result(1);
    Rational factor = base;
    unsigned long n = exponent < 0 ? static_cast<unsigned long>(-exponent)
                                   : static_cast<unsigned long>(exponent);
    while (n > 0) {
        if (n & 1UL) {
            result *= factor;
        }
        factor *= factor;
        n >>= 1UL;
    }
    if (exponent < 0) {
        result = Rational(1) / result;
    }
    return result;
}

Rational rational_abs(const Rational& value) {
    return value < 0 ? Rational(-value) : value;
}

int rational_sign(const Rational& value) {
    if (value < 0) return -1;
    if (value > 0) return 1;
    return 0;
}

double rational_to_double(const Rational& value) {
    return value.convert_to<double>();
}

std::string rational_to_string(const Rational& value) {
    std::ostringstream out;
    out << numerator(value);
    if (denominator(value) != 1) {
        out << '/' << denominator(value);
    }
    return out.str();
}

namespace {

std::optional<BigInt> parse_integer(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }
    if (pos == text.size()) return std::nullopt;
    BigInt value = 0;
    for (; pos < text.size(); ++pos) {
        if (!std::isdigit(static_cast<unsigned char>(text[pos]))) return std::nullopt;
        value = value * 10 + (text[pos] - '0');
    }
    return negative ? BigInt(-value) : value;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
    if (text.empty()) return std::nullopt;

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = parse_integer(text.substr(0, slash));
        auto den = parse_integer(text.substr(slash + 1));
        if (!num || !den || *den == 0) return std::nullopt;
        if (*den < 0) {  // the rational constructor insists on a positive denominator
            *num = -*num;
            *den = -*den;
        }
        return Rational(*num, *den);
    }

    // Decimal form: [sign] digits [. digits] [e|E exponent]
    std::string_view mantissa = text;
    long exponent10 = 0;
    if (auto epos = text.find_first_of("eE"); epos != std::string_view::npos) {
        auto exp_part = parse_integer(text.substr(epos + 1));
        if (!exp_part) return std::nullopt;
        if (*exp_part > 100000 || *exp_part < -100000) return std::nullopt;
        exponent10 = exp_part->convert_to<long>();
        mantissa = text.substr(0, epos);
    }

    std::string digits;
    long frac_digits = 0;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        digits.assign(mantissa.substr(0, dot));
        auto frac = mantissa.substr(dot + 1);
        frac_digits = static_cast<long>(frac.size());
        digits.append(frac);
        if (digits.empty() || digits == "+" || digits == "-") return std::nullopt;
    } else {
        digits.assign(mantissa);
    }

    auto whole = parse_integer(digits);
    if (!whole) return std::nullopt;
    Rational value(*whole);
    long net = exponent10 - frac_digits;
    value *= rational_pow(Rational(10), net);
    return value;
}

}  // namespace taylorlab
