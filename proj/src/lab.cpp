#include "taylorlab/lab.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace taylorlab {

const char* sweep_method_name(SweepMethod method) {
    switch (method) {
        case SweepMethod::normal_equations:
            return "normal_equations";
        case SweepMethod::legendre_projection:
            return "legendre_projection";
        case SweepMethod::remez:
            return "remez";
    }
    return "unknown";
}

std::vector<double> log_spaced_grid(double eps_max, double eps_min, int steps) {
    if (!(eps_min > 0) || !(eps_max >= eps_min)) {
        throw std::invalid_argument("log_spaced_grid: need 0 < eps_min <= eps_max");
    }
    if (steps < 2) throw std::invalid_argument("log_spaced_grid: need at least 2 steps");
    std::vector<double> grid(static_cast<std::size_t>(steps));
    const double lo = std::log(eps_min), hi = std::log(eps_max);
    for (int q = 0; q < steps; ++q) {
        grid[static_cast<std::size_t>(q)] =
            std::exp(hi + (lo - hi) * q / (steps - 1));
    }
    grid.front() = eps_max;
    grid.back() = eps_min;
    return grid;
}

std::vector<SweepRecord> sweep(const FunctionSpec& f, double x0, int k, double eps_max,
                               double eps_min, int steps, SweepMethod method) {
    if (steps < 5) throw std::invalid_argument("sweep: need at least 5 steps");
    double margin = std::min(x0 - f.domain().lo, f.domain().hi - x0);
    if (!(eps_max <= margin)) {
        throw std::invalid_argument("sweep: eps_max exceeds the domain margin of " +
                                    f.name());
    }
    auto grid = log_spaced_grid(eps_max, eps_min, steps);
    auto tau = taylor_coefficients(f, x0, k);

    // Below these magnitudes a coefficient error is arithmetic noise, not a
    // convergence signal. With an exact derivative oracle the reference is
    // good to working precision; the finite-difference fallback resolves the
    // order-i coefficient only to about eps_mach^(2/(i+2)).
    std::vector<double> floors(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i <= k; ++i) {
        double scale = std::max(1.0, std::abs(to_double(tau[static_cast<std::size_t>(i)])));
        double resolution = 1e-16;
        if (!f.has_exact_derivatives()) {
            double fd_noise =
                1e3 * to_double(pow(wide_eps(), Wide(2) / (i + 2)));
            resolution = std::max(resolution, fd_noise);
        }
        floors[static_cast<std::size_t>(i)] = resolution * scale;
    }

    std::vector<SweepRecord> records;
    records.reserve(grid.size());
    for (double eps : grid) {
        SweepRecord rec;
        rec.epsilon = eps;
        rec.method = sweep_method_name(method);
        rec.noise_floors = floors;
        for (const auto& t : tau) rec.taylor.push_back(to_double(t));
        try {
            std::vector<Wide> coeffs;
            if (method == SweepMethod::remez) {
                RemezResult res = solve_remez(f, x0, eps, k);
                coeffs = wide_coeffs(res.poly);
                rec.residual_l2 = l2_error(f, res.poly, x0, eps);
            } else {
                auto core = detail::solve_core(
                    f, x0, eps, k,
                    method == SweepMethod::normal_equations
                        ? SolveMethod::normal_equations
                        : SolveMethod::legendre_projection);
                coeffs = core.coeffs;
                rec.residual_l2 = to_double(core.residual_l2);
            }
            double m_bound = sample_remainder_bound(f, x0, k, eps, 2001);
            for (int i = 0; i <= k; ++i) {
                rec.coefficients.push_back(to_double(coeffs[static_cast<std::size_t>(i)]));
                rec.coef_errors.push_back(
                    to_double(wide_abs(coeffs[static_cast<std::size_t>(i)] -
                                       tau[static_cast<std::size_t>(i)])));
                rec.bounds.push_back(error_bound_given_m(k, i, eps, m_bound));
            }
        } catch (const ConditioningError& err) {
            rec.failed = true;
            rec.failure = err.what();
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<SlopeFit> fit_slopes(const std::vector<SweepRecord>& records) {
    std::size_t usable_records = 0;
    std::size_t width = 0;
    for (const auto& rec : records) {
        if (!rec.failed) {
            ++usable_records;
            width = std::max(width, rec.coef_errors.size());
        }
    }
    if (usable_records < 5) {
        throw std::invalid_argument("fit_slopes: need at least 5 non-failed records");
    }

    std::vector<SlopeFit> fits;
    for (std::size_t i = 0; i < width; ++i) {
        SlopeFit fit;
        fit.index = static_cast<int>(i);
        std::vector<std::pair<double, double>> points;  // (log eps, log err)
        int excluded = 0;
        for (const auto& rec : records) {
            if (rec.failed || i >= rec.coef_errors.size()) continue;
            double err = rec.coef_errors[i];
            double floor = i < rec.noise_floors.size()
                               ? rec.noise_floors[i]
                               : 1e-16 * std::max(1.0, i < rec.taylor.size()
                                                           ? std::abs(rec.taylor[i])
                                                           : 0.0);
            if (err <= floor) {
                ++excluded;  // exact/parity zero or rounding level: log of nothing
                continue;
            }
            points.emplace_back(std::log(rec.epsilon), std::log(err));
        }
        if (points.size() < 5) {
            fit.fitted = false;
            fit.points_used = static_cast<int>(points.size());
            std::ostringstream note;
            note << "fit refused: " << points.size() << " usable points";
            if (excluded > 0) note << " (" << excluded << " at rounding level excluded)";
            fit.note = note.str();
            fits.push_back(std::move(fit));
            continue;
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& [x, y] : points) {
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double n = static_cast<double>(points.size());
        double denom = n * sxx - sx * sx;
        fit.slope = (n * sxy - sx * sy) / denom;
        fit.intercept = (sy - fit.slope * sx) / n;
        double ss_res = 0, ss_tot = 0;
        double mean_y = sy / n;
        for (const auto& [x, y] : points) {
            double pred = fit.intercept + fit.slope * x;
            ss_res += (y - pred) * (y - pred);
            ss_tot += (y - mean_y) * (y - mean_y);
        }
        fit.r_squared = ss_tot == 0 ? (ss_res == 0 ? 1.0 : 0.0) : 1.0 - ss_res / ss_tot;
        fit.points_used = static_cast<int>(points.size());
        double lo = std::exp(points.front().first), hi = lo;
        for (const auto& [x, _] : points) {
            lo = std::min(lo, std::exp(x));
            hi = std::max(hi, std::exp(x));
        }
        fit.eps_min = lo;
        fit.eps_max = hi;
        fit.fitted = true;
        if (excluded > 0) {
            fit.note = std::to_string(excluded) + " rounding-level points excluded";
        }
        fits.push_back(std::move(fit));
    }
    return fits;
}

DuelReport duel(const FunctionSpec& f, double x0, int k, const Polynomial& challenger,
                const std::vector<double>& eps_grid, ErrorNorm norm) {
    if (challenger.degree_bound() > k) {
        throw std::invalid_argument("duel: challenger degree exceeds k");
    }
    if (challenger.mode() != NumericMode::float64) {
        throw std::invalid_argument("duel: challenger must be float mode");
    }
    if (std::abs(challenger.center().dbl() - x0) > 1e-14) {
        throw std::invalid_argument("duel: challenger must be centered at x0");
    }
    if (eps_grid.empty()) throw std::invalid_argument("duel: empty eps grid");

    Polynomial truncation = taylor_truncation(f, x0, k);
    bool identical = true;
    for (int i = 0; i <= k; ++i) {
        double c = i <= challenger.degree_bound() ? challenger.coeff(i).dbl() : 0.0;
        if (std::abs(c - truncation.coeff(i).dbl()) > 1e-14) {
            identical = false;
            break;
        }
    }
    if (identical) {
        throw std::invalid_argument(
            "duel: challenger equals the series truncation; the comparison is vacuous");
    }

    std::vector<double> grid = eps_grid;
    std::sort(grid.begin(), grid.end(), std::greater<double>());

    DuelReport report{challenger, truncation, {}, std::nullopt, norm};
    for (double eps : grid) {
        DuelRow row;
        row.epsilon = eps;
        if (norm == ErrorNorm::l2) {
            row.err_taylor = l2_error(f, truncation, x0, eps);
            row.err_challenger = l2_error(f, challenger, x0, eps);
        } else {
            row.err_taylor = linf_error(f, truncation, x0, eps);
            row.err_challenger = linf_error(f, challenger, x0, eps);
        }
        report.grid.push_back(row);
    }

    // Largest tested eps* such that the truncation wins at every tested
    // eps <= eps*: scan the ascending tail.
    for (auto it = report.grid.rbegin(); it != report.grid.rend(); ++it) {
        if (it->err_taylor < it->err_challenger) {
            report.threshold = it->epsilon;
        } else {
            break;
        }
    }
    return report;
}

namespace {

FunctionSpec make_poly_spec(const std::string& name, const std::string& coeff_list) {
    std::vector<Scalar> coeffs;
    std::stringstream stream(coeff_list);
    std::string piece;
    while (std::getline(stream, piece, ',')) {
        auto value = parse_rational(piece);
        if (!value) {
            throw std::invalid_argument("registry: bad polynomial coefficient '" + piece +
                                        "'");
        }
        coeffs.emplace_back(std::move(*value));
    }
    if (coeffs.empty()) {
        throw std::invalid_argument("registry: polynomial needs at least one coefficient");
    }
    auto poly = std::make_shared<Polynomial>(Scalar(Rational(0)), std::move(coeffs));
    // Derivative chain, exact; order beyond the degree is identically zero.
    auto derivs = std::make_shared<std::vector<Polynomial>>();
    derivs->push_back(*poly);
    for (int i = 1; i <= poly->degree_bound(); ++i) {
        derivs->push_back(derivs->back().derivative());
    }
    auto eval = [poly](const Wide& x) { return poly->eval_wide(x); };
    auto deriv = [derivs](int order, const Wide& x) {
        if (order >= static_cast<int>(derivs->size())) return Wide(0);
        return (*derivs)[static_cast<std::size_t>(order)].eval_wide(x);
    };
    return FunctionSpec(name, eval, Interval{-1.0, 1.0}, deriv, std::nullopt, *poly);
}

}  // namespace

std::vector<std::string> registry_names() {
    return {"exp", "sin", "cos", "log1p", "atan", "runge", "poly:<c0,c1,...>"};
}

FunctionSpec registry_lookup(const std::string& name) {
    if (name == "exp") {
        return FunctionSpec(
            "exp", [](const Wide& x) { return exp(x); }, Interval{-1.0, 1.0},
            [](int, const Wide& x) { return exp(x); });
    }
    if (name == "sin") {
        return FunctionSpec(
            "sin", [](const Wide& x) { return sin(x); }, Interval{-1.0, 1.0},
            [](int order, const Wide& x) {
                switch (order % 4) {
                    case 0: return Wide(sin(x));
                    case 1: return Wide(cos(x));
                    case 2: return Wide(-sin(x));
                    default: return Wide(-cos(x));
                }
            });
    }
    if (name == "cos") {
        return FunctionSpec(
            "cos", [](const Wide& x) { return cos(x); }, Interval{-1.0, 1.0},
            [](int order, const Wide& x) {
                switch (order % 4) {
                    case 0: return Wide(cos(x));
                    case 1: return Wide(-sin(x));
                    case 2: return Wide(-cos(x));
                    default: return Wide(sin(x));
                }
            });
    }
    if (name == "log1p") {
        return FunctionSpec(
            "log1p", [](const Wide& x) { return wide_log1p(x); }, Interval{-0.9, 1.0});
    }
    if (name == "atan") {
        return FunctionSpec(
            "atan", [](const Wide& x) { return atan(x); }, Interval{-1.0, 1.0});
    }
    if (name == "runge") {
        return FunctionSpec(
            "runge", [](const Wide& x) { return Wide(1) / (1 + 25 * x * x); },
            Interval{-1.0, 1.0});
    }
    if (name.rfind("poly:", 0) == 0) {
        return make_poly_spec(name, name.substr(5));
    }
    std::ostringstream message;
    message << "unknown function '" << name << "'; the registry offers:";
    for (const auto& entry : registry_names()) message << ' ' << entry;
    throw std::invalid_argument(message.str());
}

}  // namespace taylorlab
