#include "checks.hpp"

#include <gtest/gtest.h>

using namespace trophodge;

namespace {

// one cell per pair σ ⪯ τ
std::size_t face_pairs(const Fan& f)
{
    std::size_t n = 0;
    for (std::size_t s = 0; s < f.num_cones(); ++s)
        for (std::size_t t = 0; t < f.num_cones(); ++t)
            n += f.is_face(s, t);
    return n;
}

TropComplex tropical_line()
{
    auto base = std::make_shared<const Fan>(torus(2));
    return TropComplex(base, {{0, {}}, {0, {{1, 0}}}, {0, {{0, 1}}}, {0, {{-1, -1}}}}, Support::cells);
}

}  // namespace

TEST(TropSpace, CellCountsOfP1AndP2)
{
    EXPECT_EQ(tautological_complex(projective_space(1)).size(), 5u);
    EXPECT_EQ(tautological_complex(projective_space(2)).size(), 19u);
}

TEST(TropSpace, CellCountMatchesFacePairs)
{
    for (const auto& name : zoo_names()) {
        Fan f = builtin(name);
        EXPECT_EQ(tautological_complex(f).size(), face_pairs(f)) << name;
    }
}

TEST(TropSpace, CellDimensions)
{
    Fan p2 = projective_space(2);
    TropComplex cx = tautological_complex(p2);
    for (std::size_t s = 0; s < p2.num_cones(); ++s)
        for (std::size_t t = 0; t < p2.num_cones(); ++t)
            if (p2.is_face(s, t)) {
                auto c = cx.tautological_cell(s, t);
                ASSERT_TRUE(c);
                EXPECT_EQ(cx.cell(*c).dim(), p2.cone_dim(t) - p2.cone_dim(s));
                EXPECT_EQ(cx.cell(*c).sedentarity, s);
            }
}

TEST(TropSpace, TautologicalComplexIsCompact)
{
    for (const auto& name : zoo_names())
        EXPECT_TRUE(tautological_complex(builtin(name)).is_compact()) << name;
}

TEST(TropSpace, TropicalLineMultiTangents)
{
    TropComplex line = tropical_line();
    auto vertex = line.find(0, {});
    ASSERT_TRUE(vertex);
    EXPECT_EQ(f_lower(line, *vertex, 1).dim(), 2u);
    EXPECT_EQ(f_lower(line, *vertex, 2).dim(), 0u);
    auto ray = line.find(0, {{1, 0}});
    ASSERT_TRUE(ray);
    EXPECT_EQ(f_lower(line, *ray, 1).dim(), 1u);
    EXPECT_FALSE(line.is_bounded(*ray));
    EXPECT_FALSE(line.is_compact());
}

TEST(TropSpace, UpperAndLowerDimensionsAgree)
{
    TropComplex line = tropical_line();
    for (std::size_t c = 0; c < line.size(); ++c)
        for (std::size_t p = 0; p <= 2; ++p) {
            auto t = f_lower(line, c, p);
            EXPECT_EQ(t.dim(), t.upper_dim());
        }
}

TEST(TropSpace, FaceCasesInP2)
{
    Fan p2 = projective_space(2);
    TropComplex cx = tautological_complex(p2);
    std::size_t rho = p2.ray_cone(0);
    std::size_t tau = p2.maximal_cones().front();
    ASSERT_TRUE(p2.is_face(rho, tau));
    std::size_t top = *cx.tautological_cell(0, tau);
    std::size_t edge_at_infinity = *cx.tautological_cell(rho, tau);
    std::size_t ray_cell = *cx.tautological_cell(0, rho);
    std::size_t point_at_infinity = *cx.tautological_cell(rho, rho);

    EXPECT_EQ(cx.face_case(ray_cell, top), FaceCase::same_sedentarity);
    EXPECT_EQ(cx.face_case(point_at_infinity, ray_cell), FaceCase::boundary_stratum);
    EXPECT_EQ(cx.face_case(edge_at_infinity, top), FaceCase::boundary_stratum);
    EXPECT_TRUE(cx.is_face(point_at_infinity, top));
}

TEST(TropSpace, CompositeMapFactorsThroughBoundary)
{
    Fan p2 = projective_space(2);
    TropComplex cx = tautological_complex(p2);
    bool seen = false;
    for (std::size_t c = 0; c < cx.size(); ++c)
        for (auto a : cx.faces(c))
            if (a != c && cx.face_case(a, c) == FaceCase::composite) {
                seen = true;
                std::size_t q = cx.via(a, c);
                EXPECT_EQ(cx.face_case(q, c), FaceCase::boundary_stratum);
                EXPECT_EQ(cx.face_case(a, q), FaceCase::same_sedentarity);
                for (std::size_t p = 0; p <= 2; ++p)
                    EXPECT_TRUE(face_map(cx, a, c, p) == face_map(cx, a, q, p) * face_map(cx, q, c, p));
            }
    EXPECT_TRUE(seen);
}

TEST(TropSpace, ProjectionToBoundaryStratum)
{
    Fan p1 = projective_space(1);
    TropComplex cx = tautological_complex(p1);
    std::size_t rho = p1.ray_cone(0);
    auto m = face_map(cx, *cx.tautological_cell(rho, rho), *cx.tautological_cell(0, rho), 1);
    EXPECT_EQ(m.rows(), 0u);
    EXPECT_EQ(m.cols(), 1u);
}

TEST(TropSpace, FunctorialityOnZoo)
{
    for (const auto& name : {"p1", "projective_space(2)", "hirzebruch(2)", "blowup_p2", "affine_space(3)",
                             "torus(2)"})
        EXPECT_TRUE(checks::functorial(tautological_complex(builtin(name)))) << name;
    EXPECT_TRUE(checks::functorial(tropical_line()));
}

TEST(TropSpace, FacetIncidencesCarrySigns)
{
    TropComplex cx = tautological_complex(projective_space(1));
    for (const auto& inc : cx.incidences()) {
        EXPECT_TRUE(inc.sign == 1 || inc.sign == -1);
        EXPECT_EQ(cx.cell(inc.face).dim() + 1, cx.cell(inc.coface).dim());
    }
}

TEST(TropSpace, RejectsMissingFaces)
{
    auto base = std::make_shared<const Fan>(torus(2));
    EXPECT_THROW(TropComplex(base, {{0, {{1, 0}}}}, Support::cells), ComplexError);
}

TEST(TropSpace, RefinedComplexCoversSameSpace)
{
    Fan p2 = projective_space(2);
    TropComplex r = checks::refined(p2, {1, 1});
    EXPECT_GT(r.size(), tautological_complex(p2).size());
    EXPECT_TRUE(r.is_compact());
    EXPECT_TRUE(checks::functorial(r));
}
