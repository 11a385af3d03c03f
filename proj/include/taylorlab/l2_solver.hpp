#pragma once

#include "taylorlab/function_spec.hpp"
#include "taylorlab/moment_matrix.hpp"
#include "taylorlab/polynomial.hpp"
#include "taylorlab/quadrature.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace taylorlab {

enum class SolveMethod { normal_equations, legendre_projection };

const char* method_name(SolveMethod method);

// Raised when the symmetric factorization of the scaled system loses its
// pivots; carries the offending degree and interval half-width.
class ConditioningError : public std::runtime_error {
  public:
    ConditioningError(int k, double eps, double pivot_min);
    int degree() const { return k_; }
    double epsilon() const { return eps_; }
    double pivot_min() const { return pivot_min_; }

  private:
    int k_;
    double eps_;
    double pivot_min_;
};

struct ApproxResult {
    Polynomial poly;            // coefficients a_0..a_k about x0
    double epsilon = 0.0;
    SolveMethod method = SolveMethod::normal_equations;
    double residual_l2 = 0.0;
    double pivot_min = 0.0;     // conditioning telemetry; 0 for the projection route
    bool quadrature_converged = true;
};

// Maximum degree accepted on the floating path. The scaled system is
// Hilbert-like, so pivots shrink roughly geometrically with the order; this
// cap keeps the factorization comfortably above the working epsilon.
inline constexpr int kFloatDegreeCap = 12;

// L2 norm of f - p over [x0-eps, x0+eps], by quadrature in the scaled
// variable.
double l2_error(const FunctionSpec& f, const Polynomial& p, double x0, double eps);

// Raw moment vector: w_r = integral of f(x) (x-x0)^(r-1), r = 1..k+1.
std::vector<double> assemble_w(const FunctionSpec& f, double x0, double eps, int k);

// Best L2 polynomial of degree <= k by the normal equations: solves the
// eps-free scaled system 2*normalized * Y = W-scaled by LDL^T, then maps
// a_i = y_i / eps^i.
ApproxResult solve_normal(const FunctionSpec& f, double x0, double eps, int k);

// Same polynomial by projection on the orthogonal basis: coefficients
// b_j = (2j+1)/2 * integral of f(x0 + eps t) L_j(t), expanded back into the
// shifted monomial basis.
ApproxResult solve_legendre(const FunctionSpec& f, double x0, double eps, int k);

struct ExactApprox {
    Polynomial poly;        // exact rational coefficients
    Rational residual_sq;   // exact value of the squared objective
};

// Exact-mode solve for polynomial functions and rational eps; no degree cap.
ExactApprox solve_normal_exact(const Polynomial& f_poly, const Rational& x0,
                               const Rational& eps, int k);

// The coefficient error estimate
//   sum_s |alpha_(i+1)s| * 2M/(s+k+1) * eps^(k+1-i)
// with the empirical remainder bound M sampled on [x0-eps, x0+eps].
double error_bound(const FunctionSpec& f, double x0, double eps, int k, int i);

// Same quantity with M supplied by the caller.
double error_bound_given_m(int k, int i, double eps, double m_bound);

namespace detail {

struct WideApprox {
    std::vector<Wide> coeffs;        // a_i
    std::vector<Wide> scaled_coeffs; // y_i = a_i eps^i
    Wide pivot_min{0};
    bool quad_converged = true;
    int rule_size = 0;
    Wide residual_l2{0};
};

WideApprox solve_core(const FunctionSpec& f, double x0, double eps, int k,
                      SolveMethod method);

// Scaled-frame orthogonality residuals integral of r(t) t^j dt, j = 0..k.
std::vector<Wide> orthogonality_residuals(const FunctionSpec& f, double x0, double eps,
                                          const WideApprox& solution);

// Squared residual via the algebraic identity
//   J = integral f^2 - 2 Y.W + Y.(2*normalized).Y   (scaled frame, times eps)
// used as a cross-check against the quadrature route.
Wide residual_sq_identity(const FunctionSpec& f, double x0, double eps,
                          const WideApprox& solution);

// Monomial coefficient rows of the Legendre polynomials, exact.
const std::vector<std::vector<Rational>>& legendre_rows(int max_degree);

}  // namespace detail

}  // namespace taylorlab
