#pragma once

#include "taylorlab/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace taylorlab {

// Dense row-major matrix, sized for the small structured systems this
// project works with (orders well under 20). Indices are 0-based here;
// the moment-matrix layer exposes the 1-based view.
template <typename T>
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols, T fill = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n, T(0));
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool operator==(const Mat& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

// Exact determinant by fraction-free (Bareiss) elimination: each row is
// scaled to integers first so that every intermediate value stays integral.
Rational det_bareiss(Mat<Rational> a);

// Exact determinant by plain Gaussian elimination over the rationals
// (product of pivots). Algorithmically independent of det_bareiss; the two
// cross-check each other.
Rational det_gauss(Mat<Rational> a);

// Leading principal minors det(A_1x1), det(A_2x2), ... via exact elimination.
std::vector<Rational> leading_principal_minors(const Mat<Rational>& a);

// Exact inverse via Gauss-Jordan with pivot search; nullopt when singular.
std::optional<Mat<Rational>> invert_exact(const Mat<Rational>& a);

// Exact linear solve; nullopt when singular.
std::optional<std::vector<Rational>> solve_exact(const Mat<Rational>& a,
                                                 const std::vector<Rational>& rhs);

// Floating-point helpers templated over the working real type.

template <typename T>
struct LdltSolve {
    bool ok = false;
    T pivot_min = T(0);
    std::vector<T> x;
};

// Solves a symmetric positive definite system via LDL^T (no pivoting; PD is
// certified by every pivot staying positive). pivot_min reports the smallest
// diagonal pivot seen, the conditioning telemetry the callers surface.
template <typename T>
LdltSolve<T> ldlt_solve(const Mat<T>& a, const std::vector<T>& rhs) {
    const std::size_t n = a.rows();
    if (a.cols() != n || rhs.size() != n) {
        throw std::invalid_argument("ldlt_solve: shape mismatch");
    }
    LdltSolve<T> out;
    Mat<T> l(n, n, T(0));
    std::vector<T> d(n, T(0));
    for (std::size_t j = 0; j < n; ++j) {
        T dj = a(j, j);
        for (std::size_t p = 0; p < j; ++p) dj -= l(j, p) * l(j, p) * d[p];
        if (!(dj > T(0))) {
            out.ok = false;
            out.pivot_min = dj;
            return out;
        }
        d[j] = dj;
        if (j == 0 || dj < out.pivot_min) out.pivot_min = dj;
        l(j, j) = T(1);
        for (std::size_t i = j + 1; i < n; ++i) {
            T v = a(i, j);
            for (std::size_t p = 0; p < j; ++p) v -= l(i, p) * l(j, p) * d[p];
            l(i, j) = v / dj;
        }
    }
    // Forward, diagonal, backward sweeps.
    std::vector<T> y(rhs);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t p = 0; p < i; ++p) y[i] -= l(i, p) * y[p];
    }
    for (std::size_t i = 0; i < n; ++i) y[i] /= d[i];
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t p = ii + 1; p < n; ++p) y[ii] -= l(p, ii) * y[p];
    }
    out.ok = true;
    out.x = std::move(y);
    return out;
}

// Partial-pivot LU solve for general square systems (the equioscillation
// system in the minimax solver is not symmetric).
template <typename T>
std::optional<std::vector<T>> lu_solve(Mat<T> a, std::vector<T> rhs) {
    const std::size_t n = a.rows();
    if (a.cols() != n || rhs.size() != n) {
        throw std::invalid_argument("lu_solve: shape mismatch");
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        T best = a(k, k) < T(0) ? T(-a(k, k)) : a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            T cand = a(i, k) < T(0) ? T(-a(i, k)) : a(i, k);
            if (cand > best) {
                best = cand;
                pivot = i;
            }
        }
        if (best == T(0)) return std::nullopt;
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
            std::swap(rhs[k], rhs[pivot]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            T factor = a(i, k) / a(k, k);
            a(i, k) = T(0);
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= factor * a(k, j);
            rhs[i] -= factor * rhs[k];
        }
    }
    std::vector<T> x(n, T(0));
    for (std::size_t ii = n; ii-- > 0;) {
        T v = rhs[ii];
        for (std::size_t j = ii + 1; j < n; ++j) v -= a(ii, j) * x[j];
        x[ii] = v / a(ii, ii);
    }
    return x;
}

// Gauss-Jordan inverse for floating types.
template <typename T>
std::optional<Mat<T>> invert_float(Mat<T> a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("invert_float: not square");
    Mat<T> inv = Mat<T>::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        T best = a(k, k) < T(0) ? T(-a(k, k)) : a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            T cand = a(i, k) < T(0) ? T(-a(i, k)) : a(i, k);
            if (cand > best) {
                best = cand;
                pivot = i;
            }
        }
        if (best == T(0)) return std::nullopt;
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(k, j), a(pivot, j));
                std::swap(inv(k, j), inv(pivot, j));
            }
        }
        T diag = a(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            a(k, j) /= diag;
            inv(k, j) /= diag;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            T factor = a(i, k);
            if (factor == T(0)) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= factor * a(k, j);
                inv(i, j) -= factor * inv(k, j);
            }
        }
    }
    return inv;
}

}  // namespace taylorlab
