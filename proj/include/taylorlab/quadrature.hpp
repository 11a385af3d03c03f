#pragma once

#include "taylorlab/function_spec.hpp"
#include "taylorlab/polynomial.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace taylorlab {

// Thrown when an integrand sample is not finite; carries the offending node
// (in the original variable).
class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& message, double node)
        : std::runtime_error(message), node_(node) {}
    double node() const { return node_; }

  private:
    double node_;
};

// Gauss-Legendre rule on [-1, 1]: m nodes, exactness degree 2m-1. Nodes are
// strictly increasing and exactly symmetric about 0; weights are positive
// and sum to 2.
class QuadratureRule {
  public:
    static const QuadratureRule& gauss_legendre(int m);  // cached; 1 <= m <= 64

    int size() const { return static_cast<int>(nodes_.size()); }
    std::vector<double> nodes() const;
    std::vector<double> weights() const;
    const std::vector<Wide>& nodes_wide() const { return nodes_; }
    const std::vector<Wide>& weights_wide() const { return weights_; }

  private:
    explicit QuadratureRule(int m);
    std::vector<Wide> nodes_;
    std::vector<Wide> weights_;
};

inline constexpr int kMaxRuleSize = 64;

// Approximates the j-th moment integral of f over [x0-eps, x0+eps] with the
// m-point rule after substituting x = x0 + eps t.
double integrate_moment(const FunctionSpec& f, double x0, double eps, int j, int m);

// Exact moment of a rational polynomial: term-by-term antidifferentiation in
// the shifted variable; odd powers drop out by symmetry.
Rational integrate_moment_exact(const Polynomial& p, const Rational& x0,
                                const Rational& eps, int j);

// Internal wide-precision machinery shared by the solvers.

struct MomentSet {
    std::vector<Wide> values;  // values[j] = integral of f(x) (x-x0)^j, j = 0..jmax
    int rule_size = 0;
    bool converged = false;    // refinement check passed within the rule cap
    double rel_change = 0.0;   // last relative change observed
};

// All moments j = 0..jmax at once. Starts at m = max(16, jmax+8) and doubles
// the rule until successive moment vectors differ by < 1e-12 relative or the
// rule cap is reached; the finest vector is returned either way.
MomentSet integrate_moments(const FunctionSpec& f, double x0, double eps, int jmax);

struct IntegralValue {
    Wide value{0};
    int rule_size = 0;
    bool converged = false;
};

// Same refinement policy for a single scalar integrand given in the scaled
// variable t on [-1, 1]; the result includes the eps jacobian.
IntegralValue integrate_scaled(const std::function<Wide(const Wide&)>& integrand,
                               double eps, int initial_m);

}  // namespace taylorlab
