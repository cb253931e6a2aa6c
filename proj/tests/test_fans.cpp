#include "trophodge/fans.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace trophodge;

namespace {

// a planar fan is complete iff every ray lies in exactly two 2-cones
bool complete_2d_oracle(const Fan& f)
{
    auto two = f.cones_of_dim(2);
    std::map<std::size_t, int> deg;
    for (auto c : two)
        for (auto r : f.cone_rays(c))
            ++deg[r];
    if (two.empty())
        return false;
    for (std::size_t r = 0; r < f.rays().size(); ++r)
        if (deg[r] != 2)
            return false;
    return true;
}

}  // namespace

TEST(Fans, FaceCountOfOrthant)
{
    Cone c(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    EXPECT_EQ(faces(c).size(), 8u);
}

TEST(Fans, NonsmoothCone)
{
    EXPECT_FALSE(is_smooth(Cone(2, {{1, 0}, {1, 2}})));
    EXPECT_TRUE(is_smooth(Cone(2, {{1, 0}, {1, 1}})));
}

TEST(Fans, RejectsBadRays)
{
    EXPECT_THROW(Cone(2, {{2, 0}}), FanError);
    EXPECT_THROW(Cone(2, {{0, 0}}), FanError);
    EXPECT_THROW(Cone(2, {{1, 0, 0}}), FanError);
}

TEST(Fans, RejectsOverlappingCones)
{
    EXPECT_THROW(Fan(2, {{1, 0}, {0, 1}, {1, 1}}, {{0, 1}, {0, 2}}), FanError);
}

TEST(Fans, RejectsNonPointedCone)
{
    EXPECT_THROW(Fan(1, {{1}, {-1}}, {{0, 1}}), FanError);
}

TEST(Fans, ProjectiveSpaceIsComplete)
{
    Fan p2 = projective_space(2);
    EXPECT_TRUE(is_complete(p2));
    EXPECT_TRUE(p2.is_smooth());
    EXPECT_EQ(p2.f_vector(), (std::vector<std::size_t>{1, 3, 3}));
    EXPECT_EQ(p2.num_cones(), 7u);
}

TEST(Fans, OrbitLatticeOfDiagonalRay)
{
    Fan f(2, {{1, 1}}, {{0}});
    const auto& lat = f.lattice(f.ray_cone(0));
    ASSERT_EQ(lat.m_perp_basis.size(), 1u);
    IntVec b = lat.m_perp_basis[0];
    EXPECT_TRUE(b == (IntVec{1, -1}) || b == (IntVec{-1, 1}));
    EXPECT_EQ(lat.project({1, 1}), (IntVec{0}));
}

TEST(Fans, OrbitLatticeIsSaturated)
{
    // a Z-basis of M ∩ σ⊥ has trivial elementary divisors
    for (const auto& f : {projective_space(3), hirzebruch(3), blowup_p2()})
        for (std::size_t c = 0; c < f.num_cones(); ++c) {
            const auto& lat = f.lattice(c);
            if (lat.n_sigma_rank == 0)
                continue;
            std::vector<IntVec> cols = lat.m_perp_basis;
            for (auto e : elementary_divisors(ZMatrix::from_columns(cols, f.rank())))
                EXPECT_EQ(e, 1);
            for (auto r : f.cone_rays(c))
                EXPECT_TRUE(is_zero(lat.projection * to_qvec(f.rays()[r])));
        }
}

TEST(Fans, StarSubdivisionOfAffinePlane)
{
    Fan g = star_subdivision(affine_space(2), {1, 1});
    EXPECT_EQ(g.maximal_cones().size(), 2u);
    EXPECT_TRUE(g.is_smooth());
    EXPECT_FALSE(is_complete(g));
}

TEST(Fans, StarSubdivisionOfP2)
{
    Fan g = star_subdivision(projective_space(2), {1, 1});
    EXPECT_EQ(g.rays().size(), 4u);
    EXPECT_EQ(g.maximal_cones().size(), 4u);
    EXPECT_TRUE(g.is_smooth());
    EXPECT_TRUE(is_complete(g));
}

TEST(Fans, StarSubdivisionAtExistingRayIsIdentity)
{
    Fan p2 = projective_space(2);
    Fan g = star_subdivision(p2, {1, 0});
    EXPECT_EQ(g.num_cones(), p2.num_cones());
}

TEST(Fans, CarrierCone)
{
    Fan p2 = projective_space(2);
    auto c = carrier_cone(p2, {2, 1});
    ASSERT_TRUE(c);
    EXPECT_EQ(p2.cone_dim(*c), 2u);
    EXPECT_FALSE(carrier_cone(affine_space(2), {-1, 0}));
}

TEST(Fans, HirzebruchIsSmoothComplete)
{
    for (int a = 0; a <= 3; ++a) {
        Fan h = hirzebruch(a);
        EXPECT_TRUE(h.is_smooth());
        EXPECT_TRUE(is_complete(h));
    }
}

TEST(Fans, CompletenessAgreesWithOracleIn2d)
{
    std::vector<Fan> fans = {projective_space(2), hirzebruch(2), blowup_p2(), affine_space(2),
                             star_subdivision(affine_space(2), {1, 1}), complement_fan(projective_space(2), 0)};
    for (const auto& f : fans)
        EXPECT_EQ(is_complete(f), complete_2d_oracle(f));
}

TEST(Fans, RandomStarSubdivisionsStayComplete)
{
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-3, 3);
    Fan f = projective_space(2);
    for (int t = 0; t < 4; ++t) {
        IntVec v{d(rng), d(rng)};
        if (v == IntVec{0, 0})
            continue;
        f = star_subdivision(f, v);
        EXPECT_TRUE(is_complete(f));
        EXPECT_TRUE(f.is_simplicial());
    }
}

TEST(Fans, StarAndComplement)
{
    Fan p2 = projective_space(2);
    Fan s = star_fan(p2, p2.ray_cone(0));
    EXPECT_EQ(s.rank(), 1u);
    EXPECT_TRUE(is_complete(s));
    Fan c = complement_fan(p2, 0);
    EXPECT_EQ(c.maximal_cones().size(), 1u);
    EXPECT_EQ(c.num_cones() + s.num_cones(), p2.num_cones());
}

TEST(Fans, BuiltinZoo)
{
    EXPECT_EQ(builtin("p1").f_vector(), (std::vector<std::size_t>{1, 2}));
    EXPECT_EQ(builtin("product(p1,product(p1,p1))").f_vector(), (std::vector<std::size_t>{1, 6, 12, 8}));
    EXPECT_EQ(builtin("torus(3)").num_cones(), 1u);
    EXPECT_EQ(builtin("affine_space(3)").f_vector(), (std::vector<std::size_t>{1, 3, 3, 1}));
    EXPECT_EQ(builtin("blowup_p2").rays().size(), 4u);
    EXPECT_THROW(builtin("grassmannian(2,4)"), FanError);
    EXPECT_THROW(builtin("projective_space(x)"), FanError);
}
