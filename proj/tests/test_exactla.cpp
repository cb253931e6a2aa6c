#include "trophodge/exactla.hpp"
#include "trophodge/lp.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace trophodge;

namespace {

QMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi)
{
    std::uniform_int_distribution<int> d(lo, hi);
    QMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = d(rng);
    return m;
}

// gcd of all k x k minors of a 2 x 2 integer matrix, k = 1, 2
std::pair<Integer, Integer> determinantal_divisors(const ZMatrix& m)
{
    Integer g1 = 0;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            mpz_gcd(g1.get_mpz_t(), g1.get_mpz_t(), Integer(abs(m(i, j))).get_mpz_t());
    Integer det = abs(Integer(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)));
    return {g1, det};
}

}  // namespace

TEST(ExactLA, RankOfSmallMatrices)
{
    EXPECT_EQ(rank(QMatrix{{1, 2}, {2, 4}}), 1u);
    EXPECT_EQ(rank(QMatrix{{1, 0}, {0, 1}}), 2u);
    EXPECT_EQ(rank(QMatrix(3, 4)), 0u);
}

TEST(ExactLA, KernelOfRankOneMatrix)
{
    QSubspace k = kernel_basis(QMatrix{{1, 1}});
    ASSERT_EQ(k.dim(), 1u);
    EXPECT_TRUE(k.contains(QVec{Rational(1), Rational(-1)}));
}

TEST(ExactLA, RankNullityOnRandomMatrices)
{
    std::mt19937 rng(7);
    for (int t = 0; t < 40; ++t) {
        std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
        QMatrix m = random_matrix(rng, r, c, -3, 3);
        QSubspace k = kernel_basis(m);
        EXPECT_EQ(rank(m) + k.dim(), c);
        for (std::size_t i = 0; i < k.dim(); ++i)
            EXPECT_TRUE(is_zero(m * k.vector(i)));
    }
}

TEST(ExactLA, DeterminantAndInverse)
{
    QMatrix m{{2, 1}, {7, 4}};
    EXPECT_EQ(determinant(m), Rational(1));
    EXPECT_TRUE(m * inverse(m) == QMatrix::identity(2));
    EXPECT_THROW(inverse(QMatrix{{1, 2}, {2, 4}}), LinearAlgebraError);
}

TEST(ExactLA, QuotientDimension)
{
    QSubspace v = QSubspace::full(3);
    QSubspace w = QSubspace::span(3, {QVec{Rational(1), Rational(1), Rational(0)}});
    EXPECT_EQ(quotient_dim(v, w), 2u);
    EXPECT_EQ(intersect(w, QSubspace::span(3, {QVec{Rational(1), Rational(0), Rational(0)}})).dim(), 0u);
}

TEST(ExactLA, SmithFormOfDiag23)
{
    ZMatrix m{{2, 0}, {0, 3}};
    auto s = smith_normal_form(m);
    EXPECT_EQ(s.D(0, 0), 1);
    EXPECT_EQ(s.D(1, 1), 6);
    EXPECT_EQ(s.D(0, 1), 0);
    EXPECT_EQ(s.D(1, 0), 0);
}

TEST(ExactLA, SmithFormMatchesDeterminantalDivisors)
{
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int t = 0; t < 60; ++t) {
        ZMatrix m{{d(rng), d(rng)}, {d(rng), d(rng)}};
        auto s = smith_normal_form(m);
        auto [g1, g2] = determinantal_divisors(m);
        EXPECT_EQ(s.D(0, 0), g1);
        if (g1 != 0)
            EXPECT_EQ(s.D(0, 0) * s.D(1, 1), g2);
        // U m V = D
        ZMatrix prod(2, 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                Integer acc = 0;
                for (std::size_t a = 0; a < 2; ++a)
                    for (std::size_t b = 0; b < 2; ++b)
                        acc += s.U(i, a) * m(a, b) * s.V(b, j);
                EXPECT_EQ(acc, s.D(i, j));
            }
        EXPECT_EQ(abs(determinant(s.U)), 1);
        EXPECT_EQ(abs(determinant(s.V)), 1);
    }
}

TEST(ExactLA, ElementaryDivisorsOfNonsmoothCone)
{
    auto e = elementary_divisors(ZMatrix::from_columns({{1, 0}, {1, 2}}, 2));
    ASSERT_EQ(e.size(), 2u);
    EXPECT_EQ(e[0], 1);
    EXPECT_EQ(e[1], 2);
}

TEST(ExactLA, HermiteRowsOfKernelLattice)
{
    auto h = hermite_rows({{2, -2}, {3, -3}}, 2);
    ASSERT_EQ(h.size(), 1u);
    EXPECT_EQ(h[0], (IntVec{1, -1}));
}

TEST(ExactLA, WedgeOfTwoVectors)
{
    QSubspace v = QSubspace::span(3, {QVec{Rational(1), Rational(0), Rational(0)},
                                      QVec{Rational(0), Rational(1), Rational(1)}});
    QSubspace w = wedge_power(v, 2);
    ASSERT_EQ(w.dim(), 1u);
    // lex order e1^e2, e1^e3, e2^e3
    EXPECT_TRUE(w.contains(QVec{Rational(1), Rational(1), Rational(0)}));
}

TEST(ExactLA, WedgeIsAlternating)
{
    QVec a{Rational(1), Rational(2), Rational(3)}, b{Rational(0), Rational(1), Rational(5)};
    QVec ab = wedge(std::vector<QVec>{a, b}, 3), ba = wedge(std::vector<QVec>{b, a}, 3);
    for (std::size_t i = 0; i < ab.size(); ++i)
        EXPECT_EQ(ab[i], -ba[i]);
    EXPECT_TRUE(is_zero(wedge(std::vector<QVec>{a, a}, 3)));
}

TEST(ExactLA, WedgeMapIsFunctorial)
{
    std::mt19937 rng(3);
    for (int t = 0; t < 10; ++t) {
        QMatrix a = random_matrix(rng, 4, 4, -2, 2), b = random_matrix(rng, 4, 4, -2, 2);
        for (std::size_t p = 0; p <= 4; ++p)
            EXPECT_TRUE(wedge_map(a * b, p) == wedge_map(a, p) * wedge_map(b, p));
    }
}

TEST(ExactLA, ContractionSquaresToZero)
{
    QVec x{Rational(1), Rational(-2), Rational(3), Rational(1)};
    for (std::size_t p = 2; p <= 4; ++p)
        EXPECT_TRUE((contraction(x, p - 1) * contraction(x, p)).is_zero());
}

TEST(ExactLA, BinomialsAndSubsets)
{
    EXPECT_EQ(binomial(5, 2), 10u);
    EXPECT_EQ(binomial(3, 4), 0u);
    auto s = subsets(4, 2);
    ASSERT_EQ(s.size(), 6u);
    for (std::size_t i = 0; i < s.size(); ++i)
        EXPECT_EQ(subset_index(s[i], 4), i);
}

TEST(ExactLA, PrimitiveVectors)
{
    EXPECT_EQ(primitive(IntVec{4, -6}), (IntVec{2, -3}));
    EXPECT_EQ(primitive(QVec{Rational(1, 2), Rational(1, 3)}), (IntVec{3, 2}));
}

TEST(ExactLA, RationalParsing)
{
    EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
    EXPECT_EQ(to_string(Rational(4, 2)), "2");
    EXPECT_THROW(parse_rational("1/0"), LinearAlgebraError);
    EXPECT_THROW(parse_rational("x"), LinearAlgebraError);
}

TEST(ExactLP, NonnegativeFeasibility)
{
    QMatrix a{{1, 0}, {0, 1}};
    EXPECT_TRUE(nonnegative_solution_exists(a, QVec{Rational(1), Rational(2)}));
    EXPECT_FALSE(nonnegative_solution_exists(a, QVec{Rational(-1), Rational(2)}));
    QMatrix b{{1, -1}};
    EXPECT_TRUE(nonnegative_solution_exists(b, QVec{Rational(-5)}));
}
