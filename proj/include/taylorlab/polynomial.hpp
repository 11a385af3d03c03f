#pragma once

#include "taylorlab/scalar.hpp"
#include "taylorlab/wide.hpp"

#include <vector>

namespace taylorlab {

// Polynomial in the shifted basis: p(x) = sum_i c_i (x - center)^i.
// Coefficients and center share one numeric mode. The shifted form is the
// only one used in computations; the absolute basis exists for display.
class Polynomial {
  public:
    Polynomial(Scalar center, std::vector<Scalar> coeffs);

    static Polynomial constant(Scalar center, Scalar value) {
        return Polynomial(std::move(center), {std::move(value)});
    }

    NumericMode mode() const { return center_.mode(); }
    const Scalar& center() const { return center_; }
    const std::vector<Scalar>& coeffs() const { return coeffs_; }
    const Scalar& coeff(int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }
    int degree_bound() const { return static_cast<int>(coeffs_.size()) - 1; }

    // Horner evaluation in the shifted variable. Modes must match.
    Scalar eval(const Scalar& x) const;
    double eval(double x) const { return eval_wide(Wide(x)).convert_to<double>(); }

    // Evaluation in the internal wide type; works in either mode.
    Wide eval_wide(const Wide& x) const;

    Polynomial derivative() const;

    // Coefficients of the same polynomial written in powers of x.
    std::vector<Scalar> to_absolute_basis() const;

    // Exact change of center (binomial shift); exact mode only.
    Polynomial recentered(const Rational& new_center) const;

    Polynomial to_float() const;

  private:
    Scalar center_;
    std::vector<Scalar> coeffs_;
};

// Coefficient list of the shifted variable t = (x - center), converted to Wide.
std::vector<Wide> wide_coeffs(const Polynomial& p);

Wide horner_wide(const std::vector<Wide>& coeffs, const Wide& t);

}  // namespace taylorlab
