#include "taylorlab/l2_solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace taylorlab {

const char* method_name(SolveMethod method) {
    switch (method) {
        case SolveMethod::normal_equations:
            return "normal_equations";
        case SolveMethod::legendre_projection:
            return "legendre_projection";
    }
    return "unknown";
}

ConditioningError::ConditioningError(int k, double eps, double pivot_min)
    : std::runtime_error("conditioning failure: degree " + std::to_string(k) +
                         ", eps " + shortest_double_string(eps) + ", pivot_min " +
                         shortest_double_string(pivot_min)),
      k_(k), eps_(eps), pivot_min_(pivot_min) {}

namespace {

void check_solve_preconditions(const FunctionSpec& f, double x0, double eps, int k) {
    if (k < 0) throw std::invalid_argument("solve: negative degree");
    if (k > kFloatDegreeCap) {
        throw std::invalid_argument("solve: degree " + std::to_string(k) +
                                    " exceeds the floating-mode cap " +
                                    std::to_string(kFloatDegreeCap));
    }
    if (!(eps > 0)) throw std::invalid_argument("solve: eps must be positive");
    if (!f.domain().contains(x0, eps)) {
        throw std::invalid_argument("solve: [x0-eps, x0+eps] leaves the domain of " +
                                    f.name());
    }
    f.require_order(k);
}

Mat<Wide> scaled_system(int k) {
    const int n = k + 1;
    Mat<Wide> m(static_cast<std::size_t>(n), static_cast<std::size_t>(n), Wide(0));
    for (int r = 1; r <= n; ++r) {
        for (int s = 1; s <= n; ++s) {
            if ((r + s) % 2 == 0) {
                m(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(s - 1)) =
                    Wide(2) / (r + s - 1);
            }
        }
    }
    return m;
}

// Scaled moments: integral of f(x0 + eps t) t^j dt, j = 0..k.
std::vector<Wide> scaled_moments(const MomentSet& moments, double eps, int k) {
    std::vector<Wide> out(static_cast<std::size_t>(k) + 1);
    Wide scale(eps);
    for (int j = 0; j <= k; ++j) {
        out[static_cast<std::size_t>(j)] = moments.values[static_cast<std::size_t>(j)] / scale;
        scale *= Wide(eps);
    }
    return out;
}

Wide residual_norm_quadrature(const FunctionSpec& f, double x0, double eps,
                              const std::vector<Wide>& scaled_coeffs, int rule_size) {
    const Wide w_x0(x0), w_eps(eps);
    auto integrand = [&](const Wide& t) {
        Wide r = f(w_x0 + w_eps * t) - horner_wide(scaled_coeffs, t);
        return r * r;
    };
    auto value = integrate_scaled(integrand, eps, rule_size);
    Wide v = value.value < 0 ? Wide(0) : value.value;
    return sqrt(v);
}

}  // namespace

namespace detail {

const std::vector<std::vector<Rational>>& legendre_rows(int max_degree) {
    static std::vector<std::vector<Rational>> rows = {{Rational(1)}, {Rational(0), Rational(1)}};
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    while (static_cast<int>(rows.size()) <= max_degree) {
        // (n+1) L_{n+1} = (2n+1) x L_n - n L_{n-1}
        const int n = static_cast<int>(rows.size()) - 1;
        const auto& ln = rows[static_cast<std::size_t>(n)];
        const auto& lm = rows[static_cast<std::size_t>(n - 1)];
        std::vector<Rational> next(static_cast<std::size_t>(n) + 2, Rational(0));
        for (std::size_t i = 0; i < ln.size(); ++i) {
            next[i + 1] += Rational(2 * n + 1) * ln[i];
        }
        for (std::size_t i = 0; i < lm.size(); ++i) {
            next[i] -= Rational(n) * lm[i];
        }
        for (auto& c : next) c /= Rational(n + 1);
        rows.push_back(std::move(next));
    }
    return rows;
}

WideApprox solve_core(const FunctionSpec& f, double x0, double eps, int k,
                      SolveMethod method) {
    check_solve_preconditions(f, x0, eps, k);
    const int n = k + 1;

    MomentSet moments = integrate_moments(f, x0, eps, k);
    std::vector<Wide> w_scaled = scaled_moments(moments, eps, k);

    WideApprox out;
    out.quad_converged = moments.converged;
    out.rule_size = moments.rule_size;

    if (method == SolveMethod::normal_equations) {
        Mat<Wide> system = scaled_system(k);
        auto solved = ldlt_solve(system, w_scaled);
        Wide threshold = Wide(n) * wide_eps() * 2;
        if (!solved.ok || !(solved.pivot_min > threshold)) {
            throw ConditioningError(k, eps, to_double(solved.pivot_min));
        }
        out.pivot_min = solved.pivot_min;
        out.scaled_coeffs = std::move(solved.x);
    } else {
        // Projection route: b_j from one quadrature pass over f * L_j, then
        // an exact basis change back to powers of t.
        const auto& rule = QuadratureRule::gauss_legendre(moments.rule_size);
        const auto& rows = legendre_rows(k);
        std::vector<Wide> b(static_cast<std::size_t>(n), Wide(0));
        const Wide w_x0(x0), w_eps(eps);
        for (int q = 0; q < rule.size(); ++q) {
            const Wide& t = rule.nodes_wide()[static_cast<std::size_t>(q)];
            Wide weighted = rule.weights_wide()[static_cast<std::size_t>(q)] *
                            f(w_x0 + w_eps * t);
            // Legendre values by the three-term recurrence.
            Wide p_prev = 1, p_cur = t;
            for (int j = 0; j <= k; ++j) {
                Wide pj = (j == 0) ? p_prev : (j == 1 ? p_cur : Wide(0));
                if (j >= 2) {
                    Wide p_next = ((2 * (j - 1) + 1) * t * p_cur - (j - 1) * p_prev) / j;
                    p_prev = p_cur;
                    p_cur = p_next;
                    pj = p_cur;
                }
                b[static_cast<std::size_t>(j)] += weighted * pj;
            }
        }
        for (int j = 0; j <= k; ++j) {
            b[static_cast<std::size_t>(j)] *= Wide(2 * j + 1) / 2;
        }
        std::vector<Wide> coeffs_t(static_cast<std::size_t>(n), Wide(0));
        for (int j = 0; j <= k; ++j) {
            const auto& row = rows[static_cast<std::size_t>(j)];
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (row[i] != 0) {
                    coeffs_t[i] += b[static_cast<std::size_t>(j)] * wide_from_rational(row[i]);
                }
            }
        }
        out.scaled_coeffs = std::move(coeffs_t);
    }

    out.coeffs.resize(static_cast<std::size_t>(n));
    Wide eps_power = 1;
    for (int i = 0; i <= k; ++i) {
        out.coeffs[static_cast<std::size_t>(i)] =
            out.scaled_coeffs[static_cast<std::size_t>(i)] / eps_power;
        eps_power *= Wide(eps);
    }
    out.residual_l2 = residual_norm_quadrature(f, x0, eps, out.scaled_coeffs,
                                               moments.rule_size);
    return out;
}

std::vector<Wide> orthogonality_residuals(const FunctionSpec& f, double x0, double eps,
                                          const WideApprox& solution) {
    const int k = static_cast<int>(solution.coeffs.size()) - 1;
    std::vector<Wide> out(static_cast<std::size_t>(k) + 1);
    const Wide w_x0(x0), w_eps(eps);
    const auto& rule = QuadratureRule::gauss_legendre(
        std::min(kMaxRuleSize, std::max(solution.rule_size, 16)));
    std::vector<Wide> sums(static_cast<std::size_t>(k) + 1, Wide(0));
    for (int q = 0; q < rule.size(); ++q) {
        const Wide& t = rule.nodes_wide()[static_cast<std::size_t>(q)];
        Wide r = f(w_x0 + w_eps * t) - horner_wide(solution.scaled_coeffs, t);
        Wide weighted = rule.weights_wide()[static_cast<std::size_t>(q)] * r;
        Wide power = 1;
        for (int j = 0; j <= k; ++j) {
            sums[static_cast<std::size_t>(j)] += weighted * power;
            power *= t;
        }
    }
    for (int j = 0; j <= k; ++j) out[static_cast<std::size_t>(j)] = sums[static_cast<std::size_t>(j)];
    return out;
}

Wide residual_sq_identity(const FunctionSpec& f, double x0, double eps,
                          const WideApprox& solution) {
    const int k = static_cast<int>(solution.coeffs.size()) - 1;
    const Wide w_x0(x0), w_eps(eps);
    auto f_sq = [&](const Wide& t) {
        Wide v = f(w_x0 + w_eps * t);
        return v * v;
    };
    Wide g_norm_sq = integrate_scaled(f_sq, 1.0, solution.rule_size).value;

    MomentSet moments = integrate_moments(f, x0, eps, k);
    std::vector<Wide> w_scaled = scaled_moments(moments, eps, k);

    Mat<Wide> system = scaled_system(k);
    Wide cross = 0, quad_form = 0;
    const auto& y = solution.scaled_coeffs;
    for (int r = 0; r <= k; ++r) {
        cross += y[static_cast<std::size_t>(r)] * w_scaled[static_cast<std::size_t>(r)];
        for (int s = 0; s <= k; ++s) {
            quad_form += y[static_cast<std::size_t>(r)] *
                         system(static_cast<std::size_t>(r), static_cast<std::size_t>(s)) *
                         y[static_cast<std::size_t>(s)];
        }
    }
    return Wide(eps) * (g_norm_sq - 2 * cross + quad_form);
}

}  // namespace detail

double l2_error(const FunctionSpec& f, const Polynomial& p, double x0, double eps) {
    if (!(eps > 0)) throw std::invalid_argument("l2_error: eps must be positive");
    if (!f.domain().contains(x0, eps)) {
        throw std::invalid_argument("l2_error: interval leaves the domain of " + f.name());
    }
    const Wide w_x0(x0), w_eps(eps);
    auto integrand = [&](const Wide& t) {
        Wide x = w_x0 + w_eps * t;
        Wide r = f(x) - p.eval_wide(x);
        return r * r;
    };
    auto value = integrate_scaled(integrand, eps, std::max(16, p.degree_bound() + 8));
    Wide v = value.value < 0 ? Wide(0) : value.value;
    return to_double(sqrt(v));
}

std::vector<double> assemble_w(const FunctionSpec& f, double x0, double eps, int k) {
    if (k < 0) throw std::invalid_argument("assemble_w: negative degree");
    MomentSet moments = integrate_moments(f, x0, eps, k);
    std::vector<double> out;
    out.reserve(moments.values.size());
    for (const auto& v : moments.values) out.push_back(to_double(v));
    return out;
}

namespace {

ApproxResult wrap_result(const FunctionSpec&, double x0, double eps, SolveMethod method,
                         const detail::WideApprox& core) {
    std::vector<Scalar> coeffs;
    coeffs.reserve(core.coeffs.size());
    for (const auto& c : core.coeffs) coeffs.emplace_back(to_double(c));
    ApproxResult out{Polynomial(Scalar(x0), std::move(coeffs)),
                     eps,
                     method,
                     to_double(core.residual_l2),
                     to_double(core.pivot_min),
                     core.quad_converged};
    return out;
}

}  // namespace

ApproxResult solve_normal(const FunctionSpec& f, double x0, double eps, int k) {
    auto core = detail::solve_core(f, x0, eps, k, SolveMethod::normal_equations);
    return wrap_result(f, x0, eps, SolveMethod::normal_equations, core);
}

ApproxResult solve_legendre(const FunctionSpec& f, double x0, double eps, int k) {
    auto core = detail::solve_core(f, x0, eps, k, SolveMethod::legendre_projection);
    return wrap_result(f, x0, eps, SolveMethod::legendre_projection, core);
}

ExactApprox solve_normal_exact(const Polynomial& f_poly, const Rational& x0,
                               const Rational& eps, int k) {
    if (k < 0) throw std::invalid_argument("solve_normal_exact: negative degree");
    if (!(eps > 0)) throw std::invalid_argument("solve_normal_exact: eps must be positive");
    if (f_poly.mode() != NumericMode::exact) {
        throw std::invalid_argument("solve_normal_exact: polynomial must be exact");
    }
    const int n = k + 1;

    // Same scaled route as the floating path: the eps-free doubled
    // normalized matrix against w_r / eps^r, then a_i = y_i / eps^i.
    Mat<Rational> system(static_cast<std::size_t>(n), static_cast<std::size_t>(n),
                         Rational(0));
    for (int r = 1; r <= n; ++r) {
        for (int s = 1; s <= n; ++s) {
            if ((r + s) % 2 == 0) {
                system(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(s - 1)) =
                    Rational(2, r + s - 1);
            }
        }
    }
    std::vector<Rational> w_scaled(static_cast<std::size_t>(n));
    for (int r = 1; r <= n; ++r) {
        w_scaled[static_cast<std::size_t>(r - 1)] =
            integrate_moment_exact(f_poly, x0, eps, r - 1) / rational_pow(eps, r);
    }
    auto y = solve_exact(system, w_scaled);
    if (!y) throw std::runtime_error("solve_normal_exact: singular system");

    std::vector<Scalar> coeffs;
    coeffs.reserve(y->size());
    for (int i = 0; i <= k; ++i) {
        coeffs.emplace_back((*y)[static_cast<std::size_t>(i)] / rational_pow(eps, i));
    }
    Polynomial poly(Scalar(x0), std::move(coeffs));

    // Exact objective: expand (f - p)^2 about x0 and integrate term by term.
    Polynomial f_shifted = f_poly.recentered(x0);
    std::size_t len = std::max(f_shifted.coeffs().size(), poly.coeffs().size());
    std::vector<Rational> diff(len, Rational(0));
    for (std::size_t i = 0; i < f_shifted.coeffs().size(); ++i) {
        diff[i] = f_shifted.coeffs()[i].rat();
    }
    for (std::size_t i = 0; i < poly.coeffs().size(); ++i) {
        diff[i] -= poly.coeffs()[i].rat();
    }
    std::vector<Rational> square(2 * len - 1, Rational(0));
    for (std::size_t i = 0; i < len; ++i) {
        if (diff[i] == 0) continue;
        for (std::size_t j = 0; j < len; ++j) {
            if (diff[j] == 0) continue;
            square[i + j] += diff[i] * diff[j];
        }
    }
    Rational residual_sq(0);
    for (std::size_t p = 0; p < square.size(); ++p) {
        if (p % 2 != 0 || square[p] == 0) continue;
        residual_sq += square[p] * Rational(2, static_cast<long>(p) + 1) *
                       rational_pow(eps, static_cast<long>(p) + 1);
    }
    return ExactApprox{std::move(poly), std::move(residual_sq)};
}

namespace {

const Mat<Rational>& cached_alpha(int k) {
    static std::map<int, Mat<Rational>> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(k);
    if (it == cache.end()) {
        it = cache.emplace(k, alpha_table_exact(k)).first;
    }
    return it->second;
}

}  // namespace

double error_bound_given_m(int k, int i, double eps, double m_bound) {
    if (i < 0 || i > k) throw std::invalid_argument("error_bound: index out of range");
    const auto& alpha = cached_alpha(k);
    Wide total = 0;
    for (int s = 1; s <= k + 1; ++s) {
        Wide a = wide_abs(wide_from_rational(
            alpha(static_cast<std::size_t>(i), static_cast<std::size_t>(s - 1))));
        total += a * 2 * Wide(m_bound) / (s + k + 1);
    }
    total *= wide_pow_int(Wide(eps), k + 1 - i);
    return to_double(total);
}

double error_bound(const FunctionSpec& f, double x0, double eps, int k, int i) {
    double m_bound = sample_remainder_bound(f, x0, k, eps, 2001);
    return error_bound_given_m(k, i, eps, m_bound);
}

}  // namespace taylorlab
