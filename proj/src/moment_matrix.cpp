#include "taylorlab/moment_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace taylorlab {

MomentMatrix::MomentMatrix(int order, Scalar epsilon, bool normalized, Mat<Scalar> entries)
    : order_(order), epsilon_(std::move(epsilon)), normalized_(normalized),
      entries_(std::move(entries)) {
    if (order_ <= 0) throw std::invalid_argument("MomentMatrix: order must be positive");
    if (entries_.rows() != static_cast<std::size_t>(order_) ||
        entries_.cols() != static_cast<std::size_t>(order_)) {
        throw std::invalid_argument("MomentMatrix: entry grid shape mismatch");
    }
}

const Scalar& MomentMatrix::entry(int r, int s) const {
    if (r < 1 || r > order_ || s < 1 || s > order_) {
        throw std::out_of_range("MomentMatrix::entry: 1-based index out of range");
    }
    return entries_(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(s - 1));
}

Mat<Rational> MomentMatrix::exact_entries() const {
    Mat<Rational> out(entries_.rows(), entries_.cols());
    for (std::size_t i = 0; i < entries_.rows(); ++i)
        for (std::size_t j = 0; j < entries_.cols(); ++j) out(i, j) = entries_(i, j).rat();
    return out;
}

Mat<double> MomentMatrix::float_entries() const {
    Mat<double> out(entries_.rows(), entries_.cols());
    for (std::size_t i = 0; i < entries_.rows(); ++i)
        for (std::size_t j = 0; j < entries_.cols(); ++j)
            out(i, j) = entries_(i, j).to_double();
    return out;
}

MomentMatrix build_moment(int k, const Scalar& eps) {
    if (k < 0) throw std::invalid_argument("build_moment: negative degree");
    if (!(eps.sign() > 0)) throw std::invalid_argument("build_moment: eps must be positive");
    const int n = k + 1;
    Mat<Scalar> entries(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int r = 1; r <= n; ++r) {
        for (int s = 1; s <= n; ++s) {
            int p = r + s - 1;
            Scalar value = eps.zero_like();
            if (p % 2 == 1) {  // r+s even: the two endpoint powers add up
                Scalar denom = eps.is_exact() ? Scalar(Rational(p)) : Scalar(double(p));
                value = (eps.pow(p) - (-eps).pow(p)) / denom;
            }
            entries(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(s - 1)) = value;
        }
    }
    return MomentMatrix(n, eps, false, std::move(entries));
}

MomentMatrix normalize(const MomentMatrix& a) {
    const int n = a.order();
    const bool exact = a.mode() == NumericMode::exact;
    Mat<Scalar> entries(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int r = 1; r <= n; ++r) {
        for (int s = 1; s <= n; ++s) {
            int p = r + s - 1;
            Scalar value = exact ? Scalar(Rational(0)) : Scalar(0.0);
            if (p % 2 == 1) {
                value = exact ? Scalar(Rational(1, p)) : Scalar(1.0 / p);
            }
            entries(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(s - 1)) = value;
        }
    }
    return MomentMatrix(n, a.epsilon().one_like(), true, std::move(entries));
}

namespace {

double det_float(Mat<double> m) {
    const std::size_t n = m.rows();
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        double best = std::abs(m(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(m(i, k)) > best) {
                best = std::abs(m(i, k));
                pivot = i;
            }
        }
        if (best == 0.0) return 0.0;
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(pivot, j));
            det = -det;
        }
        det *= m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            double factor = m(i, k) / m(k, k);
            for (std::size_t j = k; j < n; ++j) m(i, j) -= factor * m(k, j);
        }
    }
    return det;
}

}  // namespace

Scalar det_via_factorization(int k, const Scalar& eps) {
    if (k < 0) throw std::invalid_argument("det_via_factorization: negative degree");
    if (!(eps.sign() > 0)) {
        throw std::invalid_argument("det_via_factorization: eps must be positive");
    }
    MomentMatrix normalized = normalize(build_moment(k, eps));
    long n = k + 1;
    Scalar two = eps.is_exact() ? Scalar(Rational(2)) : Scalar(2.0);
    Scalar prefactor = two.pow(n) * eps.pow(n * n);
    if (eps.is_exact()) {
        return prefactor * Scalar(det_bareiss(normalized.exact_entries()));
    }
    return prefactor * Scalar(det_float(normalized.float_entries()));
}

Scalar det_direct(int k, const Scalar& eps) {
    MomentMatrix a = build_moment(k, eps);
    if (eps.is_exact()) {
        return Scalar(det_gauss(a.exact_entries()));
    }
    return Scalar(det_float(a.float_entries()));
}

BlockDecomposition block_decompose(int k) {
    if (k < 0) throw std::invalid_argument("block_decompose: negative degree");
    BlockDecomposition out;
    int u = (k % 2 == 0) ? k / 2 : (k + 1) / 2;
    int v = (k % 2 == 0) ? k / 2 + 1 : (k + 1) / 2;
    out.shape.u = u;
    out.shape.v = v;
    out.shape.permutation.reserve(static_cast<std::size_t>(k) + 1);
    for (int p = 1; p <= u; ++p) out.shape.permutation.push_back(2 * p);
    for (int p = 1; p <= v; ++p) out.shape.permutation.push_back(2 * p - 1);

    out.b_block = Mat<Rational>(static_cast<std::size_t>(u), static_cast<std::size_t>(u));
    for (int p = 1; p <= u; ++p)
        for (int q = 1; q <= u; ++q)
            out.b_block(static_cast<std::size_t>(p - 1), static_cast<std::size_t>(q - 1)) =
                Rational(1, 2 * p + 2 * q - 1);

    out.c_block = Mat<Rational>(static_cast<std::size_t>(v), static_cast<std::size_t>(v));
    for (int p = 1; p <= v; ++p)
        for (int q = 1; q <= v; ++q)
            out.c_block(static_cast<std::size_t>(p - 1), static_cast<std::size_t>(q - 1)) =
                Rational(1, 2 * p + 2 * q - 3);
    return out;
}

Mat<Rational> permuted_normalized(int k) {
    MomentMatrix normalized = normalize(build_moment(k, Scalar(Rational(1))));
    auto blocks = block_decompose(k);
    const auto& sigma = blocks.shape.permutation;
    const std::size_t n = sigma.size();
    Mat<Rational> out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out(i, j) = normalized
                            .entry(sigma[i], sigma[j])
                            .rat();
        }
    }
    return out;
}

Mat<Rational> cauchy_matrix(const CauchySpec& spec) {
    if (spec.i < 1 || spec.t < 0) {
        throw std::invalid_argument("cauchy_matrix: require i >= 1, t >= 0");
    }
    const std::size_t n = static_cast<std::size_t>(spec.t) + 1;
    Mat<Rational> m(n, n);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            m(p, q) = Rational(1, spec.i + 2 * (static_cast<long>(p) + static_cast<long>(q)));
    return m;
}

Rational cauchy_det_closed_form(const CauchySpec& spec) {
    if (spec.i < 1 || spec.t < 0) {
        throw std::invalid_argument("cauchy_det_closed_form: require i >= 1, t >= 0");
    }
    // Parameters a_p = i + 2(p-1), b_q = 2(q-1), entries 1/(a_p + b_q).
    const long n = spec.t + 1;
    BigInt numerator_prod = 1;
    for (long p = 1; p <= n; ++p) {
        for (long q = p + 1; q <= n; ++q) {
            BigInt da = 2 * (p - q);  // a_p - a_q == b_p - b_q == 2(p-q)
            numerator_prod *= da * da;
        }
    }
    BigInt denominator_prod = 1;
    for (long p = 1; p <= n; ++p) {
        for (long q = 1; q <= n; ++q) {
            denominator_prod *= BigInt(spec.i + 2 * (p - 1) + 2 * (q - 1));
        }
    }
    return Rational(numerator_prod, denominator_prod);
}

Rational cauchy_det_elimination(const CauchySpec& spec) {
    return det_bareiss(cauchy_matrix(spec));
}

InverseStructure inverse_structure(int k, const std::vector<Scalar>& eps_list) {
    if (k < 0) throw std::invalid_argument("inverse_structure: negative degree");
    if (eps_list.size() < 2) {
        throw std::invalid_argument("inverse_structure: need at least two eps values");
    }
    const NumericMode mode = eps_list.front().mode();
    for (const auto& e : eps_list) {
        if (e.mode() != mode) {
            throw std::invalid_argument("inverse_structure: mixed-mode eps list");
        }
        if (!(e.sign() > 0)) {
            throw std::invalid_argument("inverse_structure: eps must be positive");
        }
    }
    bool distinct = false;
    for (std::size_t i = 1; i < eps_list.size() && !distinct; ++i) {
        distinct = !(eps_list[i] == eps_list.front());
    }
    if (!distinct) {
        throw std::invalid_argument("inverse_structure: eps values must not all coincide");
    }

    const int n = k + 1;
    InverseStructure out;
    out.k = k;
    std::vector<Mat<Scalar>> tables;
    for (const auto& eps : eps_list) {
        MomentMatrix a = build_moment(k, eps);
        Mat<Scalar> alpha(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
        if (mode == NumericMode::exact) {
            auto inv = invert_exact(a.exact_entries());
            if (!inv) throw std::runtime_error("inverse_structure: singular matrix");
            for (int r = 1; r <= n; ++r)
                for (int s = 1; s <= n; ++s)
                    alpha(r - 1, s - 1) =
                        Scalar((*inv)(r - 1, s - 1) * rational_pow(eps.rat(), r + s - 1));
        } else {
            auto inv = invert_float(a.float_entries());
            if (!inv) throw std::runtime_error("inverse_structure: singular matrix");
            for (int r = 1; r <= n; ++r)
                for (int s = 1; s <= n; ++s)
                    alpha(r - 1, s - 1) =
                        Scalar((*inv)(r - 1, s - 1) * eps.pow(r + s - 1).dbl());
        }
        tables.push_back(std::move(alpha));
    }

    out.alpha = tables.front();
    out.cross_epsilon_agree = true;
    const double float_tol = 1e-10;
    for (std::size_t t = 1; t < tables.size(); ++t) {
        for (int r = 0; r < n; ++r) {
            for (int s = 0; s < n; ++s) {
                const Scalar& a0 = out.alpha(r, s);
                const Scalar& a1 = tables[t](r, s);
                bool same = (mode == NumericMode::exact)
                                ? a0 == a1
                                : std::abs(a0.dbl() - a1.dbl()) <=
                                      float_tol * std::max(1.0, std::abs(a0.dbl()));
                if (!same) {
                    out.cross_epsilon_agree = false;
                    out.note = "alpha tables disagree across eps; implementation bug";
                }
            }
        }
    }

    out.parity_zeros = true;
    const double zero_tol = 1e-10;
    for (int r = 1; r <= n; ++r) {
        for (int s = 1; s <= n; ++s) {
            if ((r + s) % 2 != 1) continue;
            const Scalar& a = out.alpha(r - 1, s - 1);
            bool zero = (mode == NumericMode::exact) ? a.rat() == 0
                                                     : std::abs(a.dbl()) <= zero_tol;
            if (!zero) out.parity_zeros = false;
        }
    }
    if (!out.cross_epsilon_agree) {
        throw std::runtime_error("inverse_structure: " + out.note);
    }
    return out;
}

Mat<Rational> alpha_table_exact(int k) {
    // At eps = 1 the raw matrix is the doubled normalized matrix, so its
    // inverse is the alpha table itself.
    MomentMatrix a = build_moment(k, Scalar(Rational(1)));
    auto inv = invert_exact(a.exact_entries());
    if (!inv) throw std::runtime_error("alpha_table_exact: singular matrix");
    return *inv;
}

std::vector<Scalar> moment_leading_minors(const MomentMatrix& a) {
    if (a.mode() == NumericMode::exact) {
        auto minors = leading_principal_minors(a.exact_entries());
        std::vector<Scalar> out;
        out.reserve(minors.size());
        for (auto& m : minors) out.emplace_back(std::move(m));
        return out;
    }
    // Float mode: determinants of the leading blocks.
    std::vector<Scalar> out;
    Mat<double> full = a.float_entries();
    for (std::size_t m = 1; m <= full.rows(); ++m) {
        Mat<double> sub(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) sub(i, j) = full(i, j);
        out.emplace_back(det_float(sub));
    }
    return out;
}

}  // namespace taylorlab
