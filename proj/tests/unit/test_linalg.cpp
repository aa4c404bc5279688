#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sandpile/error.hpp"
#include "sandpile/graph.hpp"
#include "sandpile/linalg.hpp"
#include "support/corpus.hpp"

using namespace sandpile;
namespace t = sandpile::testing;

namespace {

IntegerMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    IntegerMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
    return m;
}

void expect_valid_snf(const IntegerMatrix& m, const SnfDecomposition& snf) {
    ASSERT_EQ(snf.U * m * snf.V, snf.S);
    EXPECT_EQ(abs(determinant(snf.U)), 1);
    EXPECT_EQ(abs(determinant(snf.V)), 1);
    EXPECT_EQ(snf.U * snf.U_inverse, IntegerMatrix::identity(m.rows()));
    for (std::size_t i = 0; i < snf.S.rows(); ++i)
        for (std::size_t j = 0; j < snf.S.cols(); ++j)
            if (i != j) EXPECT_EQ(snf.S(i, j), 0);
    const IntegerVector d = snf.invariant_factors();
    for (std::size_t i = 0; i < d.size(); ++i) {
        EXPECT_GE(d[i], 0);
        if (i + 1 < d.size()) {
            if (d[i] == 0) EXPECT_EQ(d[i + 1], 0);
            else EXPECT_TRUE(mpz_divisible_p(d[i + 1].get_mpz_t(), d[i].get_mpz_t()));
        }
    }
}

} // namespace

TEST(Determinant, Examples) {
    EXPECT_EQ(determinant(IntegerMatrix{{2, -1}, {-1, 2}}), 3);
    EXPECT_EQ(determinant(IntegerMatrix::identity(4)), 1);
    const Multigraph k4 = t::complete_graph(4);
    for (Vertex q = 0; q < 4; ++q) EXPECT_EQ(determinant(reduced_laplacian(k4, q)), 16);
    EXPECT_EQ(determinant(IntegerMatrix{{0, 1}, {1, 0}}), -1);
    EXPECT_EQ(determinant(IntegerMatrix{{1, 2}, {2, 4}}), 0);
    EXPECT_THROW(determinant(IntegerMatrix(2, 3)), Error);
}

TEST(Determinant, MatchesCofactorExpansion) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + trial % 5;
        const IntegerMatrix m = random_matrix(rng, n, n, trial % 3 == 0 ? 1 : 9);
        EXPECT_EQ(determinant(m), t::cofactor_determinant(m)) << to_string(m);
    }
}

TEST(SmithNormalForm, Examples) {
    EXPECT_EQ(smith_normal_form(IntegerMatrix{{2, -1}, {-1, 2}}).S, (IntegerMatrix{{1, 0}, {0, 3}}));
    EXPECT_EQ(smith_normal_form(IntegerMatrix::identity(5)).S, IntegerMatrix::identity(5));
    EXPECT_EQ(smith_normal_form(IntegerMatrix{{2}}).S, (IntegerMatrix{{2}}));
    // K5 reduced Laplacian: Jac(K5) = (Z/5)^3.
    const SnfDecomposition k5 = smith_normal_form(reduced_laplacian(t::complete_graph(5), 0));
    EXPECT_EQ(k5.invariant_factors(), (IntegerVector{1, 5, 5, 5}));
}

TEST(SmithNormalForm, RandomSquareAndRectangular) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t rows = 1 + trial % 5;
        const std::size_t cols = trial % 4 == 0 ? 1 + (trial / 4) % 5 : rows;
        const IntegerMatrix m = random_matrix(rng, rows, cols, 6);
        const SnfDecomposition snf = smith_normal_form(m);
        expect_valid_snf(m, snf);
        if (m.square()) {
            Integer product = 1;
            for (const auto& d : snf.invariant_factors()) product *= d;
            EXPECT_EQ(product, abs(determinant(m)));
        }
    }
}

TEST(SmithNormalForm, ZeroMatrix) {
    const IntegerMatrix zero(3, 2);
    const SnfDecomposition snf = smith_normal_form(zero);
    expect_valid_snf(zero, snf);
    EXPECT_EQ(snf.rank(), 0u);
}

TEST(SmithNormalForm, CorpusLaplacians) {
    for (const auto& [name, g] : t::corpus()) {
        SCOPED_TRACE(name);
        const IntegerMatrix q = laplacian(g);
        const SnfDecomposition full = smith_normal_form(q);
        expect_valid_snf(q, full);
        EXPECT_EQ(full.rank(), g.vertex_count() - 1);
        expect_valid_snf(reduced_laplacian(g, 0), smith_normal_form(reduced_laplacian(g, 0)));
    }
}

TEST(ExactInverse, Examples) {
    const RationalMatrix inv = exact_inverse(IntegerMatrix{{2, -1}, {-1, 2}});
    EXPECT_EQ(inv(0, 0), Rational(2, 3));
    EXPECT_EQ(inv(0, 1), Rational(1, 3));
    EXPECT_EQ(inv(1, 0), Rational(1, 3));
    EXPECT_EQ(inv(1, 1), Rational(2, 3));
    EXPECT_EQ(exact_inverse(IntegerMatrix{{2}})(0, 0), Rational(1, 2));
    try {
        exact_inverse(IntegerMatrix{{1, 1}, {1, 1}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Singular);
    }
}

TEST(ExactInverse, RandomProductIsIdentity) {
    std::mt19937_64 rng(13);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 6;
        const IntegerMatrix m = random_matrix(rng, n, n, 7);
        if (determinant(m) == 0) continue;
        ++checked;
        const RationalMatrix inv = exact_inverse(m);
        EXPECT_EQ(to_rational(m) * inv, RationalMatrix::identity(n));
        for (const auto& x : inv.data()) EXPECT_GT(x.get_den(), 0);
    }
    EXPECT_GT(checked, 100);
}

TEST(GeneralizedInverse, K3Block) {
    const RationalMatrix l = generalized_inverse_lq(laplacian(t::complete_graph(3)), 0);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(l(0, i), 0);
        EXPECT_EQ(l(i, 0), 0);
    }
    EXPECT_EQ(l(1, 1), Rational(2, 3));
    EXPECT_EQ(l(1, 2), Rational(1, 3));
    EXPECT_EQ(l(2, 2), Rational(2, 3));
}

TEST(GeneralizedInverse, IdentitiesOnCorpus) {
    for (const auto& [name, g] : t::corpus()) {
        const std::size_t n = g.vertex_count();
        const RationalMatrix q = to_rational(laplacian(g));
        for (Vertex base = 0; base < n; ++base) {
            const RationalMatrix l = generalized_inverse_lq(laplacian(g), base);
            EXPECT_EQ(q * l * q, q) << name;
            // Q L = I + R with R = -1 across row `base`.
            RationalMatrix expected = RationalMatrix::identity(n);
            for (std::size_t j = 0; j < n; ++j) expected(base, j) -= 1;
            EXPECT_EQ(q * l, expected) << name << " q=" << base;
        }
    }
}

TEST(SolveInteger, Examples) {
    const IntegerMatrix q = laplacian(t::complete_graph(3));
    auto zero = solve_integer(q, {0, 0, 0});
    ASSERT_TRUE(zero);
    EXPECT_EQ(q * *zero, (IntegerVector{0, 0, 0}));

    auto three = solve_integer(q, {-3, 3, 0});
    ASSERT_TRUE(three);
    EXPECT_EQ(q * *three, (IntegerVector{-3, 3, 0}));

    EXPECT_FALSE(solve_integer(q, {-1, 1, 0}));
    EXPECT_FALSE(t::brute_force_solve(q, {-1, 1, 0}, 3));
    EXPECT_THROW(solve_integer(q, {1, 2}), Error);
}

TEST(SolveInteger, AgreesWithBruteForce) {
    std::mt19937_64 rng(14);
    std::uniform_int_distribution<long> small(-3, 3);
    int unsolvable = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = 1 + trial % 3;
        const IntegerMatrix m = random_matrix(rng, n, n, 4);
        IntegerVector b(n);
        for (auto& x : b) x = small(rng);
        auto x = solve_integer(m, b);
        if (x) {
            EXPECT_EQ(m * *x, b);
        } else {
            ++unsolvable;
            EXPECT_FALSE(t::brute_force_solve(m, b, 20)) << to_string(m);
        }
    }
    EXPECT_GT(unsolvable, 0);
}

TEST(FloorRationalVector, RoundsTowardNegativeInfinity) {
    EXPECT_EQ(floor_rational_vector({Rational(7, 2)}), (IntegerVector{3}));
    EXPECT_EQ(floor_rational_vector({Rational(-1, 3)}), (IntegerVector{-1}));
    EXPECT_EQ(floor_rational_vector({Rational(5), Rational(-5)}), (IntegerVector{5, -5}));
    EXPECT_EQ(floor_rational_vector({Rational(-7, 2), Rational(0)}), (IntegerVector{-4, 0}));
}

TEST(SmallestEigenvalue, Examples) {
    EXPECT_NEAR(smallest_reduced_eigenvalue(IntegerMatrix{{2}}), 2.0, 2e-9);
    EXPECT_NEAR(smallest_reduced_eigenvalue(IntegerMatrix{{2, -1}, {-1, 2}}), 1.0, 1e-9);
    EXPECT_NEAR(smallest_reduced_eigenvalue(reduced_laplacian(t::complete_graph(4), 0)), 1.0, 1e-9);
    EXPECT_TRUE(std::isinf(smallest_reduced_eigenvalue(IntegerMatrix(0, 0))));
    try {
        smallest_reduced_eigenvalue(IntegerMatrix{{1, 2}, {0, 1}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotSymmetric);
    }
}

TEST(SmallestEigenvalue, PositiveOnCorpus) {
    for (const auto& [name, g] : t::corpus())
        for (Vertex q = 0; q < g.vertex_count(); ++q) EXPECT_GT(smallest_reduced_eigenvalue(reduced_laplacian(g, q)), 0.0) << name;
}
