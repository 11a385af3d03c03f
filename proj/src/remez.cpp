#include "taylorlab/remez.hpp"

#include "taylorlab/l2_solver.hpp"
#include "taylorlab/matrix.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace taylorlab {

namespace {

constexpr int kDenseGridSize = 4096;
constexpr int kMaxIterations = 50;

struct GridMax {
    Wide t{0};
    Wide value{0};  // signed residual at the max of |residual|
};

// Grid argmax of |values| sharpened by a parabolic fit through the three
// magnitudes around it; `residual_at` supplies off-grid evaluations.
template <typename ResidualFn>
GridMax refine_max(const std::vector<Wide>& grid, const std::vector<Wide>& values,
                   const ResidualFn& residual_at) {
    std::size_t best = 0;
    Wide best_mag = wide_abs(values[0]);
    for (std::size_t q = 1; q < values.size(); ++q) {
        Wide mag = wide_abs(values[q]);
        if (mag > best_mag) {
            best_mag = mag;
            best = q;
        }
    }
    GridMax out{grid[best], values[best]};
    if (best == 0 || best + 1 == grid.size()) return out;

    Wide y0 = wide_abs(values[best - 1]);
    Wide y1 = wide_abs(values[best]);
    Wide y2 = wide_abs(values[best + 1]);
    Wide denom = y0 - 2 * y1 + y2;
    if (denom == 0) return out;
    Wide shift = (y0 - y2) / (2 * denom);
    if (wide_abs(shift) > 1) return out;  // degenerate fit, keep the grid point
    Wide step = grid[best + 1] - grid[best];
    Wide t_star = grid[best] + shift * step;
    if (t_star < grid.front() || t_star > grid.back()) return out;
    Wide r_star = residual_at(t_star);
    if (wide_abs(r_star) > best_mag) {
        out.t = t_star;
        out.value = r_star;
    }
    return out;
}

}  // namespace

RemezResult solve_remez(const FunctionSpec& f, double x0, double eps, int k) {
    if (k < 0) throw std::invalid_argument("solve_remez: negative degree");
    if (k > kFloatDegreeCap) {
        throw std::invalid_argument("solve_remez: degree exceeds the floating-mode cap");
    }
    if (!(eps > 0)) throw std::invalid_argument("solve_remez: eps must be positive");
    if (!f.domain().contains(x0, eps)) {
        throw std::invalid_argument("solve_remez: interval leaves the domain of " +
                                    f.name());
    }
    f.require_order(k);

    const int n = k + 2;  // reference size
    const Wide w_x0(x0), w_eps(eps);
    const Wide pi = boost::math::constants::pi<Wide>();

    // Dense evaluation grid in the scaled variable; f sampled once.
    std::vector<Wide> grid(kDenseGridSize);
    std::vector<Wide> f_grid(kDenseGridSize);
    Wide f_scale = 0;
    for (int q = 0; q < kDenseGridSize; ++q) {
        grid[static_cast<std::size_t>(q)] = -1 + Wide(2 * q) / (kDenseGridSize - 1);
        f_grid[static_cast<std::size_t>(q)] =
            f(w_x0 + w_eps * grid[static_cast<std::size_t>(q)]);
        f_scale = std::max(f_scale, wide_abs(f_grid[static_cast<std::size_t>(q)]));
    }

    // Chebyshev reference, ascending.
    std::vector<Wide> ref(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        ref[static_cast<std::size_t>(j)] = cos(pi * (n - 1 - j) / (n - 1));
    }

    std::vector<Wide> coeffs(static_cast<std::size_t>(k) + 1, Wide(0));
    std::vector<Wide> solved_ref = ref;  // reference of the most recent solve
    Wide levelled = 0;
    Wide max_err = 0;
    Wide prev_max = -1;
    bool converged = false;
    std::vector<std::pair<double, double>> brackets;

    const Wide degenerate_floor = Wide(1e-30) * std::max(f_scale, Wide(1));

    int iter = 0;
    for (iter = 1; iter <= kMaxIterations; ++iter) {
        // Equioscillation system: p(t_j) + (-1)^j h = g(t_j).
        Mat<Wide> system(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
        std::vector<Wide> rhs(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            Wide power = 1;
            for (int i = 0; i <= k; ++i) {
                system(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = power;
                power *= ref[static_cast<std::size_t>(j)];
            }
            system(static_cast<std::size_t>(j), static_cast<std::size_t>(k + 1)) =
                (j % 2 == 0) ? Wide(1) : Wide(-1);
            rhs[static_cast<std::size_t>(j)] = f(w_x0 + w_eps * ref[static_cast<std::size_t>(j)]);
        }
        auto solved = lu_solve(system, rhs);
        if (!solved) {
            throw std::runtime_error("solve_remez: singular equioscillation system");
        }
        coeffs.assign(solved->begin(), solved->end() - 1);
        levelled = solved->back();
        solved_ref = ref;

        auto residual_at = [&](const Wide& t) {
            return f(w_x0 + w_eps * t) - horner_wide(coeffs, t);
        };
        std::vector<Wide> residual(kDenseGridSize);
        for (int q = 0; q < kDenseGridSize; ++q) {
            residual[static_cast<std::size_t>(q)] =
                f_grid[static_cast<std::size_t>(q)] -
                horner_wide(coeffs, grid[static_cast<std::size_t>(q)]);
        }
        GridMax extremum = refine_max(grid, residual, residual_at);
        max_err = wide_abs(extremum.value);

        brackets.emplace_back(to_double(wide_abs(levelled)), to_double(max_err));

        if (max_err <= degenerate_floor) {
            converged = true;  // residual is identically zero to working precision
            break;
        }
        if (prev_max >= 0 && wide_abs(max_err - prev_max) < Wide(1e-12) * max_err) {
            converged = true;
            break;
        }
        prev_max = max_err;

        // Single-point exchange: swap the extremum into the reference while
        // keeping the residual signs alternating. Signs at reference points
        // are (-1)^j sign(h) by construction.
        int star_sign = extremum.value >= 0 ? 1 : -1;
        auto ref_sign = [&](int j) {
            int h_sign = levelled >= 0 ? 1 : -1;
            return (j % 2 == 0) ? h_sign : -h_sign;
        };
        if (extremum.t <= ref.front()) {
            if (ref_sign(0) == star_sign) {
                ref[0] = extremum.t;
            } else {
                for (std::size_t j = ref.size(); j-- > 1;) ref[j] = ref[j - 1];
                ref[0] = extremum.t;
            }
        } else if (extremum.t >= ref.back()) {
            if (ref_sign(n - 1) == star_sign) {
                ref[static_cast<std::size_t>(n - 1)] = extremum.t;
            } else {
                for (std::size_t j = 0; j + 1 < ref.size(); ++j) ref[j] = ref[j + 1];
                ref[static_cast<std::size_t>(n - 1)] = extremum.t;
            }
        } else {
            int left = 0;
            for (int j = 0; j + 1 < n; ++j) {
                if (ref[static_cast<std::size_t>(j)] <= extremum.t &&
                    extremum.t <= ref[static_cast<std::size_t>(j + 1)]) {
                    left = j;
                    break;
                }
            }
            if (ref_sign(left) == star_sign) {
                ref[static_cast<std::size_t>(left)] = extremum.t;
            } else {
                ref[static_cast<std::size_t>(left + 1)] = extremum.t;
            }
        }
    }
    // Map back: a_i = c_i / eps^i, alternation abscissae to the x variable.
    std::vector<Scalar> out_coeffs;
    out_coeffs.reserve(coeffs.size());
    Wide eps_power = 1;
    for (int i = 0; i <= k; ++i) {
        out_coeffs.emplace_back(to_double(coeffs[static_cast<std::size_t>(i)] / eps_power));
        eps_power *= w_eps;
    }
    RemezResult result{Polynomial(Scalar(x0), std::move(out_coeffs)),
                       to_double(max_err),
                       {},
                       {},
                       std::min(iter, kMaxIterations),
                       converged,
                       std::move(brackets)};
    for (std::size_t j = 0; j < solved_ref.size(); ++j) {
        result.alternation_points.push_back(to_double(w_x0 + w_eps * solved_ref[j]));
        // By construction of the final solve, r(t_j) = (-1)^j h.
        result.alternation_residuals.push_back(
            to_double(j % 2 == 0 ? levelled : -levelled));
    }
    return result;
}

double linf_error(const FunctionSpec& f, const Polynomial& p, double x0, double eps) {
    if (!(eps > 0)) throw std::invalid_argument("linf_error: eps must be positive");
    if (!f.domain().contains(x0, eps)) {
        throw std::invalid_argument("linf_error: interval leaves the domain of " +
                                    f.name());
    }
    const Wide w_x0(x0), w_eps(eps);
    std::vector<Wide> grid(kDenseGridSize);
    std::vector<Wide> values(kDenseGridSize);
    for (int q = 0; q < kDenseGridSize; ++q) {
        grid[static_cast<std::size_t>(q)] = -1 + Wide(2 * q) / (kDenseGridSize - 1);
        Wide x = w_x0 + w_eps * grid[static_cast<std::size_t>(q)];
        values[static_cast<std::size_t>(q)] = f(x) - p.eval_wide(x);
    }
    auto residual_at = [&](const Wide& t) {
        Wide x = w_x0 + w_eps * t;
        return f(x) - p.eval_wide(x);
    };
    GridMax extremum = refine_max(grid, values, residual_at);
    return to_double(wide_abs(extremum.value));
}

}  // namespace taylorlab
