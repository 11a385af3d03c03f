#pragma once

#include "taylorlab/rational.hpp"

#include <stdexcept>
#include <string>
#include <variant>

namespace taylorlab {

enum class NumericMode { float64, exact };

// A real number carried either as an IEEE double or as an exact rational.
// The two modes never mix inside one expression: combining operands of
// different modes throws. Callers pick the mode up front and it propagates
// through every derived quantity.
class Scalar {
  public:
    Scalar() : value_(0.0) {}
    explicit Scalar(double value) : value_(value) {}
    explicit Scalar(Rational value) : value_(std::move(value)) {}

    static Scalar exact(long numerator, long denominator = 1) {
        return Scalar(Rational(numerator, denominator));
    }

    NumericMode mode() const {
        return std::holds_alternative<double>(value_) ? NumericMode::float64
                                                      : NumericMode::exact;
    }
    bool is_exact() const { return mode() == NumericMode::exact; }

    double dbl() const {
        if (!std::holds_alternative<double>(value_)) {
            throw std::logic_error("Scalar::dbl on exact-mode value");
        }
        return std::get<double>(value_);
    }

    const Rational& rat() const {
        if (!std::holds_alternative<Rational>(value_)) {
            throw std::logic_error("Scalar::rat on float-mode value");
        }
        return std::get<Rational>(value_);
    }

    // Lossy view, valid in both modes.
    double to_double() const {
        return is_exact() ? rational_to_double(rat()) : std::get<double>(value_);
    }

    bool is_zero() const {
        return is_exact() ? rat() == 0 : std::get<double>(value_) == 0.0;
    }

    int sign() const {
        if (is_exact()) return rational_sign(rat());
        double d = std::get<double>(value_);
        return d < 0 ? -1 : (d > 0 ? 1 : 0);
    }

    Scalar abs() const {
        return is_exact() ? Scalar(rational_abs(rat()))
                          : Scalar(std::abs(std::get<double>(value_)));
    }

    Scalar pow(long exponent) const;

    Scalar operator-() const {
        return is_exact() ? Scalar(Rational(-rat())) : Scalar(-std::get<double>(value_));
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        check_modes(a, b, "+");
        return a.is_exact() ? Scalar(a.rat() + b.rat()) : Scalar(a.dbl() + b.dbl());
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        check_modes(a, b, "-");
        return a.is_exact() ? Scalar(a.rat() - b.rat()) : Scalar(a.dbl() - b.dbl());
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        check_modes(a, b, "*");
        return a.is_exact() ? Scalar(a.rat() * b.rat()) : Scalar(a.dbl() * b.dbl());
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        check_modes(a, b, "/");
        if (a.is_exact()) {
            if (b.rat() == 0) throw std::domain_error("Scalar: exact division by zero");
            return Scalar(a.rat() / b.rat());
        }
        return Scalar(a.dbl() / b.dbl());
    }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        check_modes(a, b, "==");
        return a.is_exact() ? a.rat() == b.rat() : a.dbl() == b.dbl();
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    friend bool operator<(const Scalar& a, const Scalar& b) {
        check_modes(a, b, "<");
        return a.is_exact() ? a.rat() < b.rat() : a.dbl() < b.dbl();
    }
    friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
    friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }

    // Serialization form: "p/q" in exact mode, shortest round-trip decimal
    // in float mode.
    std::string str() const;

    // A zero (or one) in the same mode as this value.
    Scalar zero_like() const { return is_exact() ? Scalar(Rational(0)) : Scalar(0.0); }
    Scalar one_like() const { return is_exact() ? Scalar(Rational(1)) : Scalar(1.0); }

  private:
    static void check_modes(const Scalar& a, const Scalar& b, const char* op) {
        if (a.mode() != b.mode()) {
            throw std::invalid_argument(std::string("Scalar: mixed-mode arithmetic (") +
                                        op + ")");
        }
    }

    std::variant<double, Rational> value_;
};

// Shortest decimal text that round-trips to the same double.
std::string shortest_double_string(double value);

}  // namespace taylorlab
