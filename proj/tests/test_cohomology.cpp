#include "checks.hpp"

#include <gtest/gtest.h>

using namespace trophodge;

namespace {

BettiTable diagonal(std::size_t n)
{
    BettiTable h(n + 1, std::vector<std::size_t>(n + 1, 0));
    for (std::size_t i = 0; i <= n; ++i)
        h[i][i] = 1;
    return h;
}

TropComplex tropical_line()
{
    auto base = std::make_shared<const Fan>(torus(2));
    return TropComplex(base, {{0, {}}, {0, {{1, 0}}}, {0, {{0, 1}}}, {0, {{-1, -1}}}}, Support::cells);
}

// cells whose sedentarity cone contains the ray
std::vector<bool> boundary_of_ray(const TropComplex& cx, std::size_t ray)
{
    const Fan& f = cx.base_fan();
    std::vector<bool> mask(cx.size());
    for (std::size_t c = 0; c < cx.size(); ++c)
        mask[c] = f.is_face(f.ray_cone(ray), cx.cell(c).sedentarity);
    return mask;
}

}  // namespace

TEST(Cohomology, CochainBlocksOfP1)
{
    TropComplex cx = tautological_complex(projective_space(1));
    auto c = build_cochain_complex(cx, 1);
    EXPECT_EQ(c.dim(0), 1u);
    EXPECT_EQ(c.dim(1), 2u);
    EXPECT_EQ(c.delta(0).rows(), 2u);
    EXPECT_EQ(c.delta(0).cols(), 1u);
}

TEST(Cohomology, CochainBlocksOfTropicalLine)
{
    auto c = build_cochain_complex(tropical_line(), 1);
    EXPECT_EQ(c.dim(0), 2u);
    EXPECT_EQ(c.dim(1), 3u);
}

TEST(Cohomology, DeltaSquaresToZero)
{
    for (const auto& name : zoo_names())
        EXPECT_TRUE(checks::delta_squared_zero_all(tautological_complex(builtin(name)))) << name;
}

TEST(Cohomology, ProjectiveLineAndPlane)
{
    EXPECT_EQ(betti_table(tautological_complex(projective_space(1))), diagonal(1));
    EXPECT_EQ(betti_table(tautological_complex(projective_space(2))), diagonal(2));
    EXPECT_EQ(cohomology(tautological_complex(projective_space(2)), 1, 2).dim, 0u);
}

TEST(Cohomology, TorusRowIsBinomial)
{
    for (std::size_t n = 1; n <= 3; ++n) {
        BettiTable h = betti_table(tautological_complex(torus(n)));
        for (std::size_t p = 0; p <= n; ++p)
            for (std::size_t q = 0; q <= n; ++q)
                EXPECT_EQ(h[p][q], q == 0 ? binomial(n, p) : 0u);
    }
}

TEST(Cohomology, AffineSpaceIsContractible)
{
    BettiTable h = betti_table(tautological_complex(affine_space(2)));
    for (std::size_t p = 0; p <= 2; ++p)
        for (std::size_t q = 0; q <= 2; ++q)
            EXPECT_EQ(h[p][q], p == 0 && q == 0 ? 1u : 0u);
}

TEST(Cohomology, CechOracleAgrees)
{
    for (const auto& name : {"p1", "projective_space(2)", "product(p1,p1)", "hirzebruch(3)", "torus(3)",
                             "affine_space(2)"})
        EXPECT_TRUE(checks::cech_agrees(tautological_complex(builtin(name)))) << name;
}

TEST(Cohomology, TropicalLineUsesOrderComplex)
{
    TropComplex line = tropical_line();
    auto r = cohomology(line, 1, 0);
    EXPECT_EQ(r.model, Model::order_complex);
    EXPECT_EQ(r.dim, cech_oracle(line, 1, 0));
    EXPECT_EQ(r.dim, 2u);
    EXPECT_EQ(cohomology(line, 0, 0).dim, 1u);
}

TEST(Cohomology, OrderComplexSizeLimit)
{
    EXPECT_THROW(OrderComplex(tautological_complex(projective_space(3)), 0), CohomologyError);
}

TEST(Cohomology, RelativeToPointsAtInfinity)
{
    Fan p1 = projective_space(1);
    TropComplex cx = tautological_complex(p1);
    std::vector<std::size_t> pts;
    for (std::size_t r = 0; r < 2; ++r)
        pts.push_back(*cx.tautological_cell(p1.ray_cone(r), p1.ray_cone(r)));
    auto mask = cell_mask(cx, pts);
    EXPECT_EQ(relative_cohomology(cx, mask, 1, 1).dim, 1u);
    EXPECT_EQ(relative_cohomology(cx, mask, 0, 1).dim, 1u);
    EXPECT_EQ(relative_cohomology(cx, mask, 0, 0).dim, 0u);
}

TEST(Cohomology, RelativeNeedsClosedSubcomplex)
{
    Fan p1 = projective_space(1);
    TropComplex cx = tautological_complex(p1);
    auto mask = cell_mask(cx, {*cx.tautological_cell(0, p1.ray_cone(0))});
    EXPECT_THROW(relative_cohomology(cx, mask, 0, 0), CohomologyError);
}

TEST(Cohomology, LongExactSequenceOfToricBoundary)
{
    for (const auto& name : {"p1", "projective_space(2)", "hirzebruch(1)", "affine_space(2)"}) {
        TropComplex cx = tautological_complex(builtin(name));
        for (std::size_t r = 0; r < cx.base_fan().rays().size(); ++r)
            for (std::size_t p = 0; p <= cx.base_fan().rank(); ++p)
                EXPECT_TRUE(long_exact_sequence(cx, boundary_of_ray(cx, r), p).exact) << name;
    }
}

TEST(Cohomology, RefinementInvariance)
{
    std::vector<std::pair<Fan, IntVec>> cases = {
        {projective_space(2), {1, 1}}, {projective_space(2), {1, 3}}, {hirzebruch(1), {1, 1}},
        {affine_space(2), {2, 1}},     {projective_space(3), {1, 1, 0}}};
    for (const auto& [f, v] : cases) {
        TropComplex r = checks::refined(f, v);
        EXPECT_TRUE(checks::delta_squared_zero_all(r));
        EXPECT_EQ(betti_table(r), betti_table(tautological_complex(f))) << format_vec(v);
    }
}

TEST(Cohomology, RefinementInvarianceRandomRay)
{
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> d(-4, 4);
    Fan f = hirzebruch(2);
    IntVec v;
    do
        v = {d(rng), d(rng)};
    while (v == IntVec{0, 0});
    v = primitive(v);
    TropComplex r = checks::refined(f, v);
    EXPECT_EQ(betti_table(r), betti_table(tautological_complex(f))) << format_vec(v);
    if (r.size() <= OrderComplex::max_cells)
        EXPECT_TRUE(checks::cech_agrees(r));
}

TEST(Cohomology, SubdividingTheBaseFanChangesTheVariety)
{
    // blowing up P² is not a refinement of Trop(P²): h^{1,1} grows
    BettiTable before = betti_table(tautological_complex(projective_space(2)));
    BettiTable after = betti_table(tautological_complex(star_subdivision(projective_space(2), {1, 1})));
    EXPECT_EQ(before[1][1], 1u);
    EXPECT_EQ(after[1][1], 2u);
}

TEST(Cohomology, ThreadCapDoesNotChangeResults)
{
    TropComplex cx = tautological_complex(hirzebruch(2));
    BettiTable full = betti_table(cx);
    setenv("TROPHODGE_THREADS", "1", 1);
    BettiTable serial = betti_table(cx);
    unsetenv("TROPHODGE_THREADS");
    EXPECT_EQ(full, serial);
}

TEST(Cohomology, RepresentativesAreCocycles)
{
    TropComplex cx = tautological_complex(product(projective_space(1), projective_space(1)));
    auto c = build_cochain_complex(cx, 1);
    auto r = cohomology(c, 1);
    ASSERT_EQ(r.representatives.size(), 2u);
    for (const auto& v : r.representatives)
        EXPECT_TRUE(is_zero(c.delta(1) * v));
}
