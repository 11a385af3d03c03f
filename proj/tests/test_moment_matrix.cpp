#include "taylorlab/moment_matrix.hpp"

#include <doctest.h>

using namespace taylorlab;

namespace {

// Accumulated entry formula, written independently of the builder: the
// endpoint-power difference divided by the exponent.
Rational entry_oracle(int r, int s, const Rational& eps) {
    long p = r + s - 1;
    return (rational_pow(eps, p) - rational_pow(-eps, p)) / Rational(p);
}

}  // namespace

TEST_CASE("moment matrix entries match the closed form") {
    Rational eps(3, 2);
    MomentMatrix a = build_moment(4, Scalar(eps));
    // Spot values from the displayed 5x5 pattern.
    CHECK(a.entry(1, 1).rat() == Rational(3));                              // 2 eps
    CHECK(a.entry(1, 2).rat() == Rational(0));
    CHECK(a.entry(3, 5).rat() == Rational(2) * rational_pow(eps, 7) / 7);   // 2 eps^7 / 7
    CHECK(a.entry(2, 2).rat() == Rational(2) * rational_pow(eps, 3) / 3);
    CHECK(a.entry(5, 5).rat() == Rational(2) * rational_pow(eps, 9) / 9);
    for (int r = 1; r <= 5; ++r) {
        for (int s = 1; s <= 5; ++s) {
            CHECK(a.entry(r, s).rat() == entry_oracle(r, s, eps));
            CHECK(a.entry(r, s).rat() == a.entry(s, r).rat());
        }
    }
}

TEST_CASE("small closed-form cases") {
    MomentMatrix a0 = build_moment(0, Scalar(Rational(1)));
    CHECK(a0.entry(1, 1).rat() == Rational(2));

    MomentMatrix a1 = build_moment(1, Scalar(Rational(2)));
    CHECK(a1.entry(1, 1).rat() == Rational(4));
    CHECK(a1.entry(1, 2).rat() == Rational(0));
    CHECK(a1.entry(2, 1).rat() == Rational(0));
    CHECK(a1.entry(2, 2).rat() == Rational(16, 3));
}

TEST_CASE("zero pattern is exact in both modes") {
    for (int k : {3, 6, 8}) {
        MomentMatrix exact = build_moment(k, Scalar(Rational(5, 7)));
        MomentMatrix floating = build_moment(k, Scalar(0.37));
        for (int r = 1; r <= k + 1; ++r) {
            for (int s = 1; s <= k + 1; ++s) {
                bool odd = (r + s) % 2 == 1;
                CHECK(exact.entry(r, s).is_zero() == odd);
                CHECK(floating.entry(r, s).is_zero() == odd);
            }
        }
    }
}

TEST_CASE("build_moment rejects nonpositive eps") {
    CHECK_THROWS_AS(build_moment(2, Scalar(Rational(0))), std::invalid_argument);
    CHECK_THROWS_AS(build_moment(2, Scalar(-1.0)), std::invalid_argument);
}

TEST_CASE("normalization drops eps and is idempotent") {
    MomentMatrix a = build_moment(4, Scalar(Rational(9, 4)));
    MomentMatrix norm = normalize(a);
    CHECK(norm.entry(1, 1).rat() == Rational(1));
    CHECK(norm.entry(1, 3).rat() == Rational(1, 3));
    CHECK(norm.entry(5, 5).rat() == Rational(1, 9));
    CHECK(norm.entry(1, 2).rat() == Rational(0));

    MomentMatrix other = normalize(build_moment(4, Scalar(Rational(1, 12))));
    MomentMatrix again = normalize(norm);
    for (int r = 1; r <= 5; ++r) {
        for (int s = 1; s <= 5; ++s) {
            CHECK(norm.entry(r, s).rat() == other.entry(r, s).rat());
            CHECK(norm.entry(r, s).rat() == again.entry(r, s).rat());
        }
    }

    MomentMatrix n0 = normalize(build_moment(0, Scalar(Rational(7))));
    CHECK(n0.entry(1, 1).rat() == Rational(1));
}

TEST_CASE("determinant factorization equals direct elimination") {
    CHECK(det_via_factorization(0, Scalar(Rational(5, 3))).rat() == Rational(10, 3));
    CHECK(det_via_factorization(1, Scalar(Rational(1))).rat() == Rational(4, 3));

    for (int k = 0; k <= 8; ++k) {
        for (const auto& eps : {Rational(1, 3), Rational(2), Rational(5, 7)}) {
            CHECK(det_via_factorization(k, Scalar(eps)).rat() ==
                  det_direct(k, Scalar(eps)).rat());
        }
    }
}

TEST_CASE("bareiss and gauss determinants agree on dense rational matrices") {
    Mat<Rational> m(4, 4);
    long seed = 17;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            seed = (seed * 131 + 7) % 101;
            m(i, j) = Rational(seed - 50, (seed % 9) + 1);
        }
    }
    CHECK(det_bareiss(m) == det_gauss(m));
}

TEST_CASE("block decomposition shapes and entries") {
    auto b4 = block_decompose(4);
    CHECK(b4.shape.u == 2);
    CHECK(b4.shape.v == 3);
    CHECK(b4.shape.permutation == std::vector<int>{2, 4, 1, 3, 5});
    CHECK(b4.b_block(0, 0) == Rational(1, 3));
    CHECK(b4.b_block(0, 1) == Rational(1, 5));
    CHECK(b4.b_block(1, 1) == Rational(1, 7));
    CHECK(b4.c_block(0, 0) == Rational(1));
    CHECK(b4.c_block(0, 2) == Rational(1, 5));
    CHECK(b4.c_block(2, 2) == Rational(1, 9));

    auto b0 = block_decompose(0);
    CHECK(b0.shape.u == 0);
    CHECK(b0.shape.v == 1);
    CHECK(b0.b_block.rows() == 0);
    CHECK(b0.c_block(0, 0) == Rational(1));
}

TEST_CASE("block shape bookkeeping holds through degree 10") {
    for (int k = 0; k <= 10; ++k) {
        auto blocks = block_decompose(k);
        CHECK(blocks.shape.u + blocks.shape.v == k + 1);
        if (k % 2 == 0) {
            CHECK(blocks.shape.u == k / 2);
            CHECK(blocks.shape.v == k / 2 + 1);
        } else {
            CHECK(blocks.shape.u == blocks.shape.v);
        }
        std::vector<bool> seen(static_cast<std::size_t>(k) + 2, false);
        for (int image : blocks.shape.permutation) {
            CHECK(image >= 1);
            CHECK(image <= k + 1);
            CHECK(!seen[static_cast<std::size_t>(image)]);
            seen[static_cast<std::size_t>(image)] = true;
        }
    }
}

TEST_CASE("permuting the normalized matrix yields the block diagonal") {
    for (int k = 0; k <= 10; ++k) {
        auto blocks = block_decompose(k);
        Mat<Rational> permuted = permuted_normalized(k);
        const int u = blocks.shape.u;
        for (std::size_t i = 0; i < permuted.rows(); ++i) {
            for (std::size_t j = 0; j < permuted.cols(); ++j) {
                Rational expected(0);
                if (i < static_cast<std::size_t>(u) && j < static_cast<std::size_t>(u)) {
                    expected = blocks.b_block(i, j);
                } else if (i >= static_cast<std::size_t>(u) &&
                           j >= static_cast<std::size_t>(u)) {
                    expected = blocks.c_block(i - static_cast<std::size_t>(u),
                                              j - static_cast<std::size_t>(u));
                }
                CHECK(permuted(i, j) == expected);
            }
        }
    }
}

TEST_CASE("blocks are the structured submatrices") {
    for (int k = 0; k <= 10; ++k) {
        auto blocks = block_decompose(k);
        if (blocks.shape.u > 0) {
            Mat<Rational> d3 = cauchy_matrix({3, blocks.shape.u - 1});
            CHECK(blocks.b_block == d3);
        }
        Mat<Rational> d1 = cauchy_matrix({1, blocks.shape.v - 1});
        CHECK(blocks.c_block == d1);
    }
}

TEST_CASE("normalized determinant splits over the blocks") {
    for (int k = 0; k <= 8; ++k) {
        auto blocks = block_decompose(k);
        Rational det_norm =
            det_bareiss(normalize(build_moment(k, Scalar(Rational(1)))).exact_entries());
        CHECK(det_norm == det_bareiss(blocks.b_block) * det_bareiss(blocks.c_block));
    }
}

TEST_CASE("structured determinants: closed form values") {
    for (int i = 1; i <= 9; ++i) {
        CHECK(cauchy_det_closed_form({i, 0}) == Rational(1, i));
        Rational expected = Rational(1, static_cast<long>(i) * (i + 4)) -
                            Rational(1, static_cast<long>(i + 2) * (i + 2));
        CHECK(cauchy_det_closed_form({i, 1}) == expected);
    }
    CHECK(cauchy_det_closed_form({1, 1}) == Rational(4, 45));
    CHECK(cauchy_det_elimination({3, 1}) == Rational(4, 525));
}

TEST_CASE("the two determinant engines agree and stay positive") {
    for (int i = 1; i <= 9; ++i) {
        for (int t = 0; t <= 6; ++t) {
            Rational closed = cauchy_det_closed_form({i, t});
            Rational eliminated = cauchy_det_elimination({i, t});
            CHECK(closed == eliminated);
            CHECK(closed > 0);
        }
    }
}

TEST_CASE("inverse structure certifies the eps scaling") {
    auto inv0 = inverse_structure(0, {Scalar(Rational(1, 2)), Scalar(Rational(3))});
    CHECK(inv0.alpha(0, 0).rat() == Rational(1, 2));
    CHECK(inv0.parity_zeros);
    CHECK(inv0.cross_epsilon_agree);

    auto inv1 = inverse_structure(1, {Scalar(Rational(1, 2)), Scalar(Rational(3))});
    CHECK(inv1.alpha(0, 1).rat() == Rational(0));
    CHECK(inv1.alpha(1, 0).rat() == Rational(0));
    CHECK(inv1.alpha(1, 1).rat() == Rational(3, 2));

    auto inv4 = inverse_structure(
        4, {Scalar(Rational(1, 2)), Scalar(Rational(1)), Scalar(Rational(3))});
    CHECK(inv4.cross_epsilon_agree);
    CHECK(inv4.parity_zeros);
}

TEST_CASE("inverse structure input validation") {
    CHECK_THROWS_AS(inverse_structure(2, {Scalar(Rational(1))}), std::invalid_argument);
    CHECK_THROWS_AS(inverse_structure(2, {Scalar(Rational(1)), Scalar(Rational(1))}),
                    std::invalid_argument);
    CHECK_THROWS_AS(inverse_structure(2, {Scalar(Rational(1)), Scalar(0.5)}),
                    std::invalid_argument);
}

TEST_CASE("alpha table frozen oracle for degree two") {
    // Independently computed inverse of the doubled normalized 3x3 matrix.
    Mat<Rational> alpha = alpha_table_exact(2);
    CHECK(alpha(0, 0) == Rational(9, 8));
    CHECK(alpha(0, 1) == Rational(0));
    CHECK(alpha(0, 2) == Rational(-15, 8));
    CHECK(alpha(1, 1) == Rational(3, 2));
    CHECK(alpha(2, 2) == Rational(45, 8));
}

TEST_CASE("floating-mode inverse structure agrees within tolerance") {
    auto inv = inverse_structure(3, {Scalar(0.5), Scalar(1.0), Scalar(2.0)});
    CHECK(inv.cross_epsilon_agree);
    CHECK(inv.parity_zeros);
    Mat<Rational> exact = alpha_table_exact(3);
    for (int r = 0; r <= 3; ++r) {
        for (int s = 0; s <= 3; ++s) {
            CHECK(inv.alpha(static_cast<std::size_t>(r), static_cast<std::size_t>(s)).dbl() ==
                  doctest::Approx(rational_to_double(exact(static_cast<std::size_t>(r),
                                                           static_cast<std::size_t>(s))))
                      .epsilon(1e-10));
        }
    }
}

TEST_CASE("positive definiteness through the leading minors") {
    for (int k = 0; k <= 8; ++k) {
        for (const auto& eps : {Rational(1, 3), Rational(1), Rational(2)}) {
            auto minors = moment_leading_minors(build_moment(k, Scalar(eps)));
            REQUIRE(minors.size() == static_cast<std::size_t>(k) + 1);
            for (const auto& minor : minors) {
                CHECK(minor.rat() > 0);
            }
        }
    }
}

TEST_CASE("floating-mode positive definiteness via the factorization pivots") {
    MomentMatrix a = build_moment(6, Scalar(0.5));
    Mat<double> entries = a.float_entries();
    double max_entry = 0.0;
    for (std::size_t i = 0; i < entries.rows(); ++i)
        for (std::size_t j = 0; j < entries.cols(); ++j)
            max_entry = std::max(max_entry, std::abs(entries(i, j)));
    std::vector<double> rhs(entries.rows(), 1.0);
    auto solved = ldlt_solve(entries, rhs);
    CHECK(solved.ok);
    CHECK(solved.pivot_min >
          static_cast<double>(a.order()) * 2.22e-16 * max_entry);
}
