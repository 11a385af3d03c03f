#pragma once

#include "taylorlab/function_spec.hpp"
#include "taylorlab/polynomial.hpp"

#include <vector>

namespace taylorlab {

struct RemezResult {
    Polynomial poly;
    double max_error = 0.0;
    std::vector<double> alternation_points;  // k+2 increasing abscissae
    // Signed residuals at the alternation points, taken from the final
    // solve at working precision: the equioscillation witness. Re-deriving
    // them from the double-rounded coefficients loses ~1e-17 * |f| absolute,
    // which matters once max_error drops below ~1e-9.
    std::vector<double> alternation_residuals;
    int iterations = 0;
    bool converged = false;
    // de la Vallee Poussin bracket (lower, upper) recorded per iteration:
    // the minimax error lies inside every recorded pair.
    std::vector<std::pair<double, double>> brackets;
};

// Best uniform approximation of degree <= k on [x0-eps, x0+eps] by single
// point exchange from a Chebyshev reference. Stops when the levelled error
// stabilizes to 1e-12 relative or after 50 iterations; a run that hits the
// iteration cap is returned with converged = false rather than thrown.
RemezResult solve_remez(const FunctionSpec& f, double x0, double eps, int k);

// Max of |f - p| over a 4096-point grid, sharpened by a parabolic fit
// around the grid argmax.
double linf_error(const FunctionSpec& f, const Polynomial& p, double x0, double eps);

}  // namespace taylorlab
