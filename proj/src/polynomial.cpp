#include "taylorlab/polynomial.hpp"

#include <cmath>
#include <stdexcept>

namespace taylorlab {

Polynomial::Polynomial(Scalar center, std::vector<Scalar> coeffs)
    : center_(std::move(center)), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
        throw std::invalid_argument("Polynomial: empty coefficient list");
    }
    for (const auto& c : coeffs_) {
        if (c.mode() != center_.mode()) {
            throw std::invalid_argument("Polynomial: mixed-mode coefficients");
        }
        if (!c.is_exact() && !std::isfinite(c.dbl())) {
            throw std::invalid_argument("Polynomial: non-finite coefficient");
        }
    }
}

Scalar Polynomial::eval(const Scalar& x) const {
    Scalar t = x - center_;
    Scalar acc = coeffs_.back();
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
        acc = acc * t + coeffs_[i];
    }
    return acc;
}

Wide Polynomial::eval_wide(const Wide& x) const {
    Wide c0 = center_.is_exact() ? wide_from_rational(center_.rat()) : Wide(center_.dbl());
    Wide t = x - c0;
    Wide acc = coeffs_.back().is_exact() ? wide_from_rational(coeffs_.back().rat())
                                         : Wide(coeffs_.back().dbl());
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
        Wide ci = coeffs_[i].is_exact() ? wide_from_rational(coeffs_[i].rat())
                                        : Wide(coeffs_[i].dbl());
        acc = acc * t + ci;
    }
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() == 1) {
        return Polynomial(center_, {center_.zero_like()});
    }
    std::vector<Scalar> out;
    out.reserve(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
        Scalar factor = center_.is_exact() ? Scalar(Rational(static_cast<long>(i)))
                                           : Scalar(static_cast<double>(i));
        out.push_back(coeffs_[i] * factor);
    }
    return Polynomial(center_, std::move(out));
}

std::vector<Scalar> Polynomial::to_absolute_basis() const {
    // Synthetic expansion: repeatedly multiply by (x - center) and add.
    std::vector<Scalar> abs_coeffs(coeffs_.size(), center_.zero_like());
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        for (std::size_t j = abs_coeffs.size() - 1; j > 0; --j) {
            abs_coeffs[j] = abs_coeffs[j - 1] - center_ * abs_coeffs[j];
        }
        abs_coeffs[0] = coeffs_[i] - center_ * abs_coeffs[0];
    }
    return abs_coeffs;
}

Polynomial Polynomial::recentered(const Rational& new_center) const {
    if (!center_.is_exact()) {
        throw std::logic_error("Polynomial::recentered requires exact mode");
    }
    // c'_j = sum_{i>=j} c_i binom(i, j) (new_center - center)^(i-j)
    Rational shift = new_center - center_.rat();
    const std::size_t n = coeffs_.size();
    std::vector<Rational> out(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        Rational binom(1);
        Rational power(1);
        for (std::size_t j = i + 1; j-- > 0;) {
            out[j] += coeffs_[i].rat() * binom * power;
            if (j > 0) {
                binom = binom * Rational(static_cast<long>(j)) /
                        Rational(static_cast<long>(i - j + 1));
                power *= shift;
            }
        }
    }
    std::vector<Scalar> wrapped;
    wrapped.reserve(n);
    for (auto& c : out) wrapped.emplace_back(std::move(c));
    return Polynomial(Scalar(new_center), std::move(wrapped));
}

Polynomial Polynomial::to_float() const {
    if (!center_.is_exact()) return *this;
    std::vector<Scalar> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.emplace_back(c.to_double());
    return Polynomial(Scalar(center_.to_double()), std::move(out));
}

std::vector<Wide> wide_coeffs(const Polynomial& p) {
    std::vector<Wide> out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) {
        out.push_back(c.is_exact() ? wide_from_rational(c.rat()) : Wide(c.dbl()));
    }
    return out;
}

Wide horner_wide(const std::vector<Wide>& coeffs, const Wide& t) {
    Wide acc = coeffs.back();
    for (std::size_t i = coeffs.size() - 1; i-- > 0;) {
        acc = acc * t + coeffs[i];
    }
    return acc;
}

}  // namespace taylorlab
