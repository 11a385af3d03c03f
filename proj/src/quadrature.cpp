#include "taylorlab/quadrature.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <map>
#include <mutex>

namespace taylorlab {

namespace {

// Legendre P_m and its derivative at x, by the three-term recurrence.
std::pair<Wide, Wide> legendre_with_derivative(int m, const Wide& x) {
    Wide p_prev = 1;
    Wide p = x;
    if (m == 0) return {p_prev, Wide(0)};
    for (int n = 1; n < m; ++n) {
        Wide p_next = ((2 * n + 1) * x * p - n * p_prev) / (n + 1);
        p_prev = p;
        p = p_next;
    }
    Wide dp = m * (x * p - p_prev) / (x * x - 1);
    return {p, dp};
}

}  // namespace

QuadratureRule::QuadratureRule(int m) {
    nodes_.assign(static_cast<std::size_t>(m), Wide(0));
    weights_.assign(static_cast<std::size_t>(m), Wide(0));
    const Wide pi = boost::math::constants::pi<Wide>();
    const Wide tol = 8 * wide_eps();

    // Roots come in +/- pairs; solve the positive half and mirror so the
    // symmetry is exact by construction.
    for (int i = 0; i < m / 2; ++i) {
        // Chebyshev-based initial guess for the i-th largest root.
        Wide x = cos(pi * (4 * (i + 1) - 1) / (4 * m + 2));
        for (int iter = 0; iter < 80; ++iter) {
            auto [p, dp] = legendre_with_derivative(m, x);
            Wide step = p / dp;
            x -= step;
            if (wide_abs(step) <= tol * wide_abs(x)) break;
        }
        auto [p, dp] = legendre_with_derivative(m, x);
        (void)p;
        Wide w = 2 / ((1 - x * x) * dp * dp);
        std::size_t hi = static_cast<std::size_t>(m - 1 - i);
        std::size_t lo = static_cast<std::size_t>(i);
        nodes_[hi] = x;
        nodes_[lo] = -x;
        weights_[hi] = w;
        weights_[lo] = w;
    }
    if (m % 2 == 1) {
        std::size_t mid = static_cast<std::size_t>(m / 2);
        auto [p, dp] = legendre_with_derivative(m, Wide(0));
        (void)p;
        nodes_[mid] = 0;
        weights_[mid] = 2 / (dp * dp);
    }
}

const QuadratureRule& QuadratureRule::gauss_legendre(int m) {
    if (m < 1 || m > kMaxRuleSize) {
        throw std::invalid_argument("gauss_legendre: node count must be in [1, 64]");
    }
    static std::map<int, QuadratureRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(m);
    if (it == cache.end()) {
        it = cache.emplace(m, QuadratureRule(m)).first;
    }
    return it->second;
}

std::vector<double> QuadratureRule::nodes() const {
    std::vector<double> out;
    out.reserve(nodes_.size());
    for (const auto& x : nodes_) out.push_back(to_double(x));
    return out;
}

std::vector<double> QuadratureRule::weights() const {
    std::vector<double> out;
    out.reserve(weights_.size());
    for (const auto& w : weights_) out.push_back(to_double(w));
    return out;
}

namespace {

// One pass of sum_q w_q f(x0 + eps t_q) t_q^j for all j at once; every f
// sample is taken exactly once.
std::vector<Wide> moment_pass(const FunctionSpec& f, double x0, double eps, int jmax,
                              int m) {
    const auto& rule = QuadratureRule::gauss_legendre(m);
    std::vector<Wide> sums(static_cast<std::size_t>(jmax) + 1, Wide(0));
    const Wide w_x0(x0), w_eps(eps);
    for (int q = 0; q < rule.size(); ++q) {
        const Wide& t = rule.nodes_wide()[static_cast<std::size_t>(q)];
        Wide sample = f(w_x0 + w_eps * t);
        if (!isfinite(sample)) {
            throw QuadratureError("integrand sample is not finite",
                                  to_double(w_x0 + w_eps * t));
        }
        Wide weighted = rule.weights_wide()[static_cast<std::size_t>(q)] * sample;
        Wide power = 1;
        for (int j = 0; j <= jmax; ++j) {
            sums[static_cast<std::size_t>(j)] += weighted * power;
            power *= t;
        }
    }
    // Jacobian eps and the (eps t)^j scaling.
    Wide scale = w_eps;
    for (int j = 0; j <= jmax; ++j) {
        sums[static_cast<std::size_t>(j)] *= scale;
        scale *= w_eps;
    }
    return sums;
}

double relative_vector_change(const std::vector<Wide>& a, const std::vector<Wide>& b) {
    Wide scale = 0;
    for (const auto& v : b) scale = std::max(scale, wide_abs(v));
    if (scale == 0) return 0.0;
    Wide worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, wide_abs(a[i] - b[i]));
    }
    return to_double(worst / scale);
}

}  // namespace

MomentSet integrate_moments(const FunctionSpec& f, double x0, double eps, int jmax) {
    if (jmax < 0) throw std::invalid_argument("integrate_moments: negative moment order");
    if (!(eps > 0)) throw std::invalid_argument("integrate_moments: eps must be positive");
    if (!f.domain().contains(x0, eps)) {
        throw std::invalid_argument("integrate_moments: interval leaves the domain of " +
                                    f.name());
    }
    MomentSet out;
    int m = std::max(16, jmax + 8);
    std::vector<Wide> current = moment_pass(f, x0, eps, jmax, m);
    while (true) {
        int next = m * 2;
        if (next > kMaxRuleSize) {
            out.converged = false;
            break;
        }
        std::vector<Wide> refined = moment_pass(f, x0, eps, jmax, next);
        out.rel_change = relative_vector_change(current, refined);
        current = std::move(refined);
        m = next;
        if (out.rel_change < 1e-12) {
            out.converged = true;
            break;
        }
    }
    out.values = std::move(current);
    out.rule_size = m;
    return out;
}

IntegralValue integrate_scaled(const std::function<Wide(const Wide&)>& integrand,
                               double eps, int initial_m) {
    IntegralValue out;
    int m = std::min(std::max(initial_m, 16), kMaxRuleSize);
    auto pass = [&](int nodes) {
        const auto& rule = QuadratureRule::gauss_legendre(nodes);
        Wide sum = 0;
        for (int q = 0; q < rule.size(); ++q) {
            const Wide& t = rule.nodes_wide()[static_cast<std::size_t>(q)];
            Wide sample = integrand(t);
            if (!isfinite(sample)) {
                throw QuadratureError("integrand sample is not finite", to_double(t));
            }
            sum += rule.weights_wide()[static_cast<std::size_t>(q)] * sample;
        }
        return sum * Wide(eps);
    };
    Wide current = pass(m);
    while (true) {
        int next = m * 2;
        if (next > kMaxRuleSize) {
            out.converged = false;
            break;
        }
        Wide refined = pass(next);
        Wide scale = std::max(wide_abs(refined), Wide(1e-300));
        bool close = wide_abs(refined - current) / scale < Wide(1e-12);
        current = refined;
        m = next;
        if (close) {
            out.converged = true;
            break;
        }
    }
    out.value = current;
    out.rule_size = m;
    return out;
}

double integrate_moment(const FunctionSpec& f, double x0, double eps, int j, int m) {
    if (j < 0) throw std::invalid_argument("integrate_moment: negative moment order");
    if (!(eps > 0)) throw std::invalid_argument("integrate_moment: eps must be positive");
    if (!f.domain().contains(x0, eps)) {
        throw std::invalid_argument("integrate_moment: interval leaves the domain of " +
                                    f.name());
    }
    const auto& rule = QuadratureRule::gauss_legendre(m);
    Wide sum = 0;
    const Wide w_x0(x0), w_eps(eps);
    for (int q = 0; q < rule.size(); ++q) {
        const Wide& t = rule.nodes_wide()[static_cast<std::size_t>(q)];
        Wide sample = f(w_x0 + w_eps * t);
        if (!isfinite(sample)) {
            throw QuadratureError("integrand sample is not finite",
                                  to_double(w_x0 + w_eps * t));
        }
        sum += rule.weights_wide()[static_cast<std::size_t>(q)] * sample *
               wide_pow_int(t, j);
    }
    return to_double(sum * wide_pow_int(w_eps, j + 1));
}

Rational integrate_moment_exact(const Polynomial& p, const Rational& x0,
                                const Rational& eps, int j) {
    if (j < 0) throw std::invalid_argument("integrate_moment_exact: negative moment order");
    if (!(eps > 0)) {
        throw std::invalid_argument("integrate_moment_exact: eps must be positive");
    }
    if (p.mode() != NumericMode::exact) {
        throw std::invalid_argument("integrate_moment_exact: polynomial must be exact");
    }
    // Work in s = x - x0: integral of sum_i c_i s^(i+j) over [-eps, eps].
    Polynomial shifted = p.recentered(x0);
    Rational total(0);
    for (int i = 0; i <= shifted.degree_bound(); ++i) {
        int power = i + j;
        if (power % 2 != 0) continue;  // odd powers cancel by symmetry
        total += shifted.coeff(i).rat() * Rational(2, power + 1) *
                 rational_pow(eps, power + 1);
    }
    return total;
}

}  // namespace taylorlab
