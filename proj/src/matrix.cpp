#include "taylorlab/matrix.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace taylorlab {

namespace {

using boost::multiprecision::gcd;
using boost::multiprecision::lcm;

// Scales each row of a rational matrix to integers. Returns the integer
// matrix and the product of the row multipliers.
std::pair<Mat<BigInt>, BigInt> scale_to_integers(const Mat<Rational>& a) {
    const std::size_t n = a.rows();
    Mat<BigInt> m(n, a.cols());
    BigInt scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        BigInt row_lcm = 1;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            row_lcm = lcm(row_lcm, denominator(a(i, j)));
        }
        for (std::size_t j = 0; j < a.cols(); ++j) {
            m(i, j) = numerator(a(i, j)) * (row_lcm / denominator(a(i, j)));
        }
        scale *= row_lcm;
    }
    return {std::move(m), std::move(scale)};
}

}  // namespace

Rational det_bareiss(Mat<Rational> a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("det_bareiss: not square");
    if (n == 0) return Rational(1);

    auto [m, scale] = scale_to_integers(a);
    int sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m(swap_row, k) == 0) ++swap_row;
            if (swap_row == n) return Rational(0);
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap_row, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                // Fraction-free step: the division is exact.
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    Rational det(m(n - 1, n - 1), scale);
    return sign < 0 ? Rational(-det) : det;
}

Rational det_gauss(Mat<Rational> a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("det_gauss: not square");
    if (n == 0) return Rational(1);

    Rational det(1);
    for (std::size_t k = 0; k < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && a(swap_row, k) == 0) ++swap_row;
            if (swap_row == n) return Rational(0);
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(swap_row, j));
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            Rational factor = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j) a(i, j) -= factor * a(k, j);
        }
    }
    return det;
}

std::vector<Rational> leading_principal_minors(const Mat<Rational>& a) {
    const std::size_t n = a.rows();
    std::vector<Rational> minors;
    minors.reserve(n);
    // Elimination without row swaps; the pivot at step k is the ratio of the
    // k-th and (k-1)-th leading minors, so their running product recovers
    // every minor. A zero pivot means a zero minor; later minors are then
    // computed directly.
    Mat<Rational> m = a;
    Rational product(1);
    bool clean = true;
    for (std::size_t k = 0; k < n; ++k) {
        if (clean && m(k, k) != 0) {
            product *= m(k, k);
            minors.push_back(product);
            for (std::size_t i = k + 1; i < n; ++i) {
                if (m(i, k) == 0) continue;
                Rational factor = m(i, k) / m(k, k);
                for (std::size_t j = k; j < n; ++j) m(i, j) -= factor * m(k, j);
            }
        } else {
            clean = false;
            Mat<Rational> sub(k + 1, k + 1);
            for (std::size_t i = 0; i <= k; ++i)
                for (std::size_t j = 0; j <= k; ++j) sub(i, j) = a(i, j);
            minors.push_back(det_gauss(sub));
        }
    }
    return minors;
}

std::optional<Mat<Rational>> invert_exact(const Mat<Rational>& a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("invert_exact: not square");
    Mat<Rational> m = a;
    Mat<Rational> inv = Mat<Rational>::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && m(pivot, k) == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(k, j), m(pivot, j));
                std::swap(inv(k, j), inv(pivot, j));
            }
        }
        Rational diag = m(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            m(k, j) /= diag;
            inv(k, j) /= diag;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || m(i, k) == 0) continue;
            Rational factor = m(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) -= factor * m(k, j);
                inv(i, j) -= factor * inv(k, j);
            }
        }
    }
    return inv;
}

std::optional<std::vector<Rational>> solve_exact(const Mat<Rational>& a,
                                                 const std::vector<Rational>& rhs) {
    const std::size_t n = a.rows();
    if (a.cols() != n || rhs.size() != n) {
        throw std::invalid_argument("solve_exact: shape mismatch");
    }
    Mat<Rational> m = a;
    std::vector<Rational> b = rhs;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && m(pivot, k) == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(pivot, j));
            std::swap(b[k], b[pivot]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k) == 0) continue;
            Rational factor = m(i, k) / m(k, k);
            for (std::size_t j = k; j < n; ++j) m(i, j) -= factor * m(k, j);
            b[i] -= factor * b[k];
        }
    }
    std::vector<Rational> x(n, Rational(0));
    for (std::size_t ii = n; ii-- > 0;) {
        Rational v = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) v -= m(ii, j) * x[j];
        x[ii] = v / m(ii, ii);
    }
    return x;
}

}  // namespace taylorlab
