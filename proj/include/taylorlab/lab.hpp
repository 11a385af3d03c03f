#pragma once

#include "taylorlab/function_spec.hpp"
#include "taylorlab/l2_solver.hpp"
#include "taylorlab/polynomial.hpp"
#include "taylorlab/remez.hpp"

#include <optional>
#include <string>
#include <vector>

namespace taylorlab {

enum class SweepMethod { normal_equations, legendre_projection, remez };

const char* sweep_method_name(SweepMethod method);

struct SweepRecord {
    double epsilon = 0.0;
    std::vector<double> coefficients;  // a_0..a_k (empty on failure)
    std::vector<double> taylor;        // reference series coefficients
    std::vector<double> coef_errors;   // |a_i - taylor_i|
    std::vector<double> bounds;        // error_bound per index
    std::vector<double> noise_floors;  // below this an error is rounding, not signal
    double residual_l2 = 0.0;
    std::string method;
    bool failed = false;
    std::string failure;
};

// Log-spaced grid, descending from eps_max to eps_min.
std::vector<double> log_spaced_grid(double eps_max, double eps_min, int steps);

// One record per eps on a descending log grid. Solver conditioning failures
// mark the record failed instead of aborting the sweep.
std::vector<SweepRecord> sweep(const FunctionSpec& f, double x0, int k, double eps_max,
                               double eps_min, int steps, SweepMethod method);

struct SlopeFit {
    int index = 0;
    bool fitted = false;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double eps_min = 0.0;
    double eps_max = 0.0;
    int points_used = 0;
    std::string note;
};

// Ordinary least squares through (log eps, log err) per coefficient index.
// Errors at or below rounding level (exact-parity cases) are excluded; an
// index with fewer than five usable points is refused with a note.
std::vector<SlopeFit> fit_slopes(const std::vector<SweepRecord>& records);

enum class ErrorNorm { l2, linf };

struct DuelRow {
    double epsilon = 0.0;
    double err_taylor = 0.0;
    double err_challenger = 0.0;
};

struct DuelReport {
    Polynomial challenger;
    Polynomial taylor;
    std::vector<DuelRow> grid;               // descending eps
    std::optional<double> threshold;         // largest tested eps* such that the
                                             // truncation wins at every tested eps <= eps*
    ErrorNorm norm = ErrorNorm::l2;
};

// Compares the series truncation against a fixed challenger polynomial over
// an eps grid. The challenger must be centered at x0, have degree <= k, and
// differ from the truncation.
DuelReport duel(const FunctionSpec& f, double x0, int k, const Polynomial& challenger,
                const std::vector<double>& eps_grid, ErrorNorm norm);

// Named test functions: exp, sin, cos, log1p, atan, runge, poly:<c0,c1,...>.
// exp/sin/cos/poly carry exact derivative oracles; the rest fall back to
// finite differences. Domains default to [-1, 1] (log1p: [-0.9, 1]).
FunctionSpec registry_lookup(const std::string& name);

std::vector<std::string> registry_names();

}  // namespace taylorlab
