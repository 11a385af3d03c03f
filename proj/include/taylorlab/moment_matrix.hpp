#pragma once

#include "taylorlab/matrix.hpp"
#include "taylorlab/scalar.hpp"

#include <string>
#include <vector>

namespace taylorlab {

// Gram matrix of the shifted monomials 1, (x-x0), ..., (x-x0)^k on a
// symmetric interval of half-width eps:
//   entry(r, s) = [eps^(r+s-1) - (-eps)^(r+s-1)] / (r+s-1),  r, s = 1..k+1.
// Entries vanish exactly whenever r+s is odd. The normalized form drops the
// eps powers and the factor 2: entry(r, s) = (1 - (-1)^(r+s-1)) / (2(r+s-1)).
// Row/column indices are 1-based everywhere in this interface.
class MomentMatrix {
  public:
    MomentMatrix(int order, Scalar epsilon, bool normalized, Mat<Scalar> entries);

    int order() const { return order_; }           // k+1
    int degree() const { return order_ - 1; }      // k
    const Scalar& epsilon() const { return epsilon_; }
    bool normalized() const { return normalized_; }
    NumericMode mode() const { return entries_(0, 0).mode(); }

    const Scalar& entry(int r, int s) const;       // 1-based

    Mat<Rational> exact_entries() const;           // requires exact mode
    Mat<double> float_entries() const;

  private:
    int order_;
    Scalar epsilon_;
    bool normalized_;
    Mat<Scalar> entries_;
};

MomentMatrix build_moment(int k, const Scalar& eps);

// The eps-free normalization; idempotent, mode-preserving.
MomentMatrix normalize(const MomentMatrix& a);

// det(A_{k+1}) via the factorization 2^(k+1) eps^((k+1)^2) det(normalized),
// with the normalized determinant computed by fraction-free elimination in
// exact mode (plain elimination in float mode).
Scalar det_via_factorization(int k, const Scalar& eps);

// Independent determinant route: elimination directly on the raw matrix.
Scalar det_direct(int k, const Scalar& eps);

struct BlockShape {
    int u = 0;
    int v = 0;
    std::vector<int> permutation;  // 1-based image of positions 1..k+1
};

struct BlockDecomposition {
    BlockShape shape;
    Mat<Rational> b_block;  // u x u, entries 1/(2p+2q-1)
    Mat<Rational> c_block;  // v x v, entries 1/(2p+2q-3)
};

// Symmetric permutation splitting the normalized matrix into the even-index
// and odd-index blocks: positions (1..k+1) -> (2, 4, ..., 2u, 1, 3, ..., 2v-1).
BlockDecomposition block_decompose(int k);

// Applies the block permutation to rows and columns of the normalized matrix
// by index remapping (no copy of the underlying data order).
Mat<Rational> permuted_normalized(int k);

struct CauchySpec {
    int i = 1;  // >= 1
    int t = 0;  // >= 0
};

// The (t+1)x(t+1) matrix with entry(p, q) = 1 / (i + 2(p + q - 2)).
Mat<Rational> cauchy_matrix(const CauchySpec& spec);

// Exact determinant from the two-parameter product formula with
// a_p = i + 2(p-1), b_q = 2(q-1).
Rational cauchy_det_closed_form(const CauchySpec& spec);

// Exact determinant by fraction-free elimination; must agree with the
// closed form and stay strictly positive.
Rational cauchy_det_elimination(const CauchySpec& spec);

struct InverseStructure {
    int k = 0;
    Mat<Scalar> alpha;              // alpha(r, s) = inv(A)(r, s) * eps^(r+s-1)
    bool parity_zeros = false;      // alpha(r, s) == 0 whenever r+s odd
    bool cross_epsilon_agree = false;
    std::string note;
};

// Inverts the raw matrix for each listed eps and certifies that the
// eps-scaled entries form one table independent of eps, with exact zeros at
// odd r+s. At least two distinct eps values are required.
InverseStructure inverse_structure(int k, const std::vector<Scalar>& eps_list);

// alpha table computed once in exact arithmetic (the eps = 1 inverse).
Mat<Rational> alpha_table_exact(int k);

// Leading principal minors of the raw matrix (positive definiteness check).
std::vector<Scalar> moment_leading_minors(const MomentMatrix& a);

}  // namespace taylorlab
