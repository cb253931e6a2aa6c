// Property checks shared by the unit tests and the acceptance binary.
#pragma once

#include "trophodge/verify.hpp"

#include <optional>
#include <random>

namespace trophodge::checks {

/// i_{A⊂C} = i_{A⊂B} ∘ i_{B⊂C} for every chain A ⊂ B ⊂ C and every p.
inline bool functorial(const TropComplex& cx)
{
    for (std::size_t p = 0; p <= cx.base_fan().rank(); ++p) {
        auto table = tangent_table(cx, p);
        for (std::size_t c = 0; c < cx.size(); ++c)
            for (auto b : cx.faces(c))
                for (auto a : cx.faces(b)) {
                    if (!cx.is_face(a, c))
                        return false;
                    if (!(face_map(cx, table, a, c) == face_map(cx, table, a, b) * face_map(cx, table, b, c)))
                        return false;
                }
    }
    return true;
}

inline bool delta_squared_zero_all(const TropComplex& cx)
{
    for (std::size_t p = 0; p <= cx.base_fan().rank(); ++p)
        if (!delta_squared_zero(build_cochain_complex(cx, p)))
            return false;
    return true;
}

inline bool cech_agrees(const TropComplex& cx)
{
    const std::size_t n = cx.base_fan().rank();
    for (std::size_t p = 0; p <= n; ++p) {
        OrderComplex oc(cx, p);
        auto c = build_cochain_complex(cx, p);
        for (std::size_t q = 0; q <= n; ++q) {
            std::size_t expected = oc.cohomology(q).dim;
            std::size_t got = cx.is_compact() ? cohomology(c, q).dim : cohomology(cx, p, q).dim;
            if (got != expected)
                return false;
        }
    }
    return true;
}

/// Sum of the rays of a maximal cone of dimension at least 2, if there is one.
inline std::optional<IntVec> subdivision_ray(const Fan& f)
{
    for (auto c : f.maximal_cones()) {
        if (f.cone_dim(c) < 2)
            continue;
        IntVec v(f.rank(), 0);
        for (auto r : f.cone_rays(c))
            for (std::size_t i = 0; i < v.size(); ++i)
                v[i] += f.rays()[r][i];
        return primitive(v);
    }
    return std::nullopt;
}

/// The tautological complex of f with cells cut by star_subdivision(f, v).
inline TropComplex refined(const Fan& f, const IntVec& v)
{
    return refined_complex(std::make_shared<const Fan>(f), star_subdivision(f, v));
}

/// Adding random coboundaries to H^{1,1} representatives leaves their pairings with
/// every divisor cycle unchanged.
inline bool pairing_invariant(const Fan& f, int trials, std::mt19937& rng)
{
    TropComplex cx = tautological_complex(f);
    const std::size_t k = f.rank() - 1;
    auto c = build_cochain_complex(cx, k);
    auto h = cohomology(c, k);
    std::vector<TropCycle> cycles;
    for (std::size_t r = 0; r < f.rays().size(); ++r)
        cycles.push_back(divisor_cycle(cx, r));
    std::uniform_int_distribution<int> coeff(-5, 5);
    QMatrix d = c.delta(k - 1);
    for (int t = 0; t < trials; ++t)
        for (const auto& rep : h.representatives) {
            QVec x(c.dim(k - 1));
            for (auto& e : x)
                e = coeff(rng);
            QVec dx = d * x;
            QVec perturbed = rep;
            for (std::size_t i = 0; i < perturbed.size(); ++i)
                perturbed[i] += dx[i];
            for (const auto& z : cycles)
                if (pair(perturbed, z) != pair(rep, z))
                    return false;
        }
    return true;
}

inline std::vector<std::string> surface_names()
{
    return {"projective_space(2)", "product(p1,p1)", "hirzebruch(0)", "hirzebruch(1)",
            "hirzebruch(2)",       "hirzebruch(3)",  "blowup_p2"};
}

}  // namespace trophodge::checks
