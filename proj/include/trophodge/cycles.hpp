// Minkowski weights, tropical cycle classes in the tautological complex,
// the cohomology/homology pairing and toric surface intersection numbers.
#pragma once

#include "trophodge/cohomology.hpp"

namespace trophodge {

class CycleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rational weights on the cones of dimension n - codim.
struct MinkowskiWeight {
    std::shared_ptr<const Fan> fan;
    std::size_t codim = 0;
    std::map<std::size_t, Rational> weights;  // cone index -> weight

    std::size_t cone_dim() const { return fan->rank() - codim; }
};

inline MinkowskiWeight make_weight(std::shared_ptr<const Fan> fan, std::size_t codim,
                                   const std::vector<std::pair<RaySet, Rational>>& entries)
{
    if (codim > fan->rank())
        throw CycleError("codimension exceeds the fan rank");
    MinkowskiWeight w;
    w.fan = std::move(fan);
    w.codim = codim;
    for (const auto& [rays, value] : entries) {
        auto c = w.fan->find(rays);
        if (!c)
            throw CycleError("weighted cone " + format_vec(rays) + " is not a cone of the fan");
        if (w.fan->cone_dim(*c) != w.cone_dim())
            throw CycleError("weighted cone " + format_vec(rays) + " has the wrong dimension");
        if (!w.weights.emplace(*c, value).second)
            throw CycleError("cone " + format_vec(rays) + " weighted twice");
    }
    for (auto c : w.fan->cones_of_dim(w.cone_dim()))
        if (!w.weights.count(c))
            throw CycleError("missing weight on cone " + format_vec(w.fan->cone_rays(c)));
    return w;
}

struct BalancingViolation {
    std::size_t cone = 0;  // codim-(p+1) cone
    QVec sum;              // nonzero element of N_γ
};

struct BalancingResult {
    bool balanced = true;
    std::vector<BalancingViolation> violations;
};

/// For a cone γ ⊂ τ with one extra ray, the primitive generator of the image of τ in N_γ.
inline IntVec relative_normal(const Fan& f, std::size_t gamma, std::size_t tau)
{
    const auto& g = f.cone_rays(gamma);
    for (auto r : f.cone_rays(tau))
        if (!std::binary_search(g.begin(), g.end(), r))
            return primitive(f.lattice(gamma).project(f.rays()[r]));
    throw CycleError("relative normal of a cone with itself");
}

/// Rows: the coordinates of N_γ for each codim-(p+1) cone γ; columns: codim-p cones.
inline QMatrix balancing_matrix(const Fan& f, std::size_t codim, std::vector<std::size_t>& columns)
{
    if (!f.is_simplicial())
        throw CycleError("balancing is implemented for simplicial fans");
    const std::size_t n = f.rank();
    columns = f.cones_of_dim(n - codim);
    std::vector<std::size_t> lows = codim == n ? std::vector<std::size_t>{} : f.cones_of_dim(n - codim - 1);
    std::size_t rows = 0;
    for (auto g : lows)
        rows += f.lattice(g).n_sigma_rank;
    QMatrix m(rows, columns.size());
    std::size_t r0 = 0;
    for (auto g : lows) {
        for (std::size_t j = 0; j < columns.size(); ++j)
            if (f.is_face(g, columns[j])) {
                IntVec nv = relative_normal(f, g, columns[j]);
                for (std::size_t i = 0; i < nv.size(); ++i)
                    m(r0 + i, j) = static_cast<long>(nv[i]);
            }
        r0 += f.lattice(g).n_sigma_rank;
    }
    return m;
}

inline BalancingResult balancing_check(const MinkowskiWeight& w)
{
    const Fan& f = *w.fan;
    BalancingResult res;
    if (w.codim == f.rank())
        return res;
    for (auto g : f.cones_of_dim(w.cone_dim() - 1)) {
        QVec sum(f.lattice(g).n_sigma_rank);
        for (const auto& [tau, c] : w.weights) {
            if (!f.is_face(g, tau))
                continue;
            IntVec nv = relative_normal(f, g, tau);
            for (std::size_t i = 0; i < nv.size(); ++i)
                sum[i] += c * Rational(static_cast<long>(nv[i]));
        }
        if (!is_zero(sum)) {
            res.balanced = false;
            res.violations.push_back({g, sum});
        }
    }
    return res;
}

inline void require_smooth_complete(const Fan& f)
{
    if (!f.is_smooth())
        throw CycleError("expected a smooth fan");
    if (!is_complete(f))
        throw CycleError("expected a complete fan");
}

/// dim of the space of balanced weights in codimension p, the Chow group CH^p ⊗ Q.
inline std::size_t chow_dim(const Fan& f, std::size_t p)
{
    require_smooth_complete(f);
    if (p > f.rank())
        return 0;
    std::vector<std::size_t> cols;
    return kernel_basis(balancing_matrix(f, p, cols)).dim();
}

/// A k-chain with F_k coefficients: entries in the block layout of C^{k,k}.
struct TropCycle {
    std::size_t k = 0;
    QVec chain;
};

inline std::vector<Block> chain_layout(const TropComplex& cx, const TangentTable& table, std::size_t q)
{
    std::vector<Block> out;
    std::size_t off = 0;
    for (std::size_t c = 0; c < cx.size(); ++c)
        if (cx.cell(c).dim() == q) {
            out.push_back({c, off, table.at(c).dim()});
            off += table.at(c).dim();
        }
    return out;
}

/// (-1)^{k(k-1)/2} times the primitive volume element of the cell, in F_k coordinates.
inline QVec cell_volume(const TropComplex& cx, const TangentTable& table, std::size_t c)
{
    const auto& cell = cx.cell(c);
    const std::size_t k = cell.dim();
    QVec v = to_qvec(primitive(wedge(cell.rays, cx.stratum_rank(c))));
    if ((k * (k - 1) / 2) % 2 == 1)
        for (auto& x : v)
            x = -x;
    return table.at(c).lower.coordinates(v);
}

inline TropCycle weighted_cells(const TropComplex& cx, const TangentTable& table, std::size_t k,
                                const std::map<std::size_t, Rational>& cell_weights)
{
    TropCycle z;
    z.k = k;
    auto layout = chain_layout(cx, table, k);
    z.chain.assign(layout.empty() ? 0 : layout.back().offset + layout.back().dim, Rational(0));
    for (const auto& b : layout) {
        auto it = cell_weights.find(b.cell);
        if (it == cell_weights.end() || sgn(it->second) == 0)
            continue;
        QVec v = cell_volume(cx, table, b.cell);
        for (std::size_t i = 0; i < b.dim; ++i)
            z.chain[b.offset + i] += it->second * v[i];
    }
    return z;
}

/// The tropical cycle of a balanced weight: weight times volume element on each cell C_{0,τ}.
inline TropCycle cycle_class(const TropComplex& cx, const MinkowskiWeight& w)
{
    auto bal = balancing_check(w);
    if (!bal.balanced)
        throw CycleError("weight is not balanced");
    std::map<std::size_t, Rational> cw;
    for (const auto& [tau, c] : w.weights) {
        auto cell = cx.tautological_cell(0, tau);
        if (!cell)
            throw CycleError("weighted cone has no cell in the complex");
        cw[*cell] = c;
    }
    const std::size_t k = w.cone_dim();
    return weighted_cells(cx, tangent_table(cx, k), k, cw);
}

/// The closure of the stratum of a ray: cells C_{ρ,τ} with τ maximal, weight 1.
inline TropCycle divisor_cycle(const TropComplex& cx, std::size_t ray)
{
    const Fan& f = cx.base_fan();
    auto rho = f.ray_cone(ray);
    const std::size_t k = f.rank() - 1;
    std::map<std::size_t, Rational> cw;
    for (auto tau : f.star(rho))
        if (f.cone_dim(tau) == f.rank()) {
            auto cell = cx.tautological_cell(rho, tau);
            if (!cell)
                throw CycleError("divisor cell missing from the complex");
            cw[*cell] = 1;
        }
    return weighted_cells(cx, tangent_table(cx, k), k, cw);
}

inline TropCycle divisor_combination(const TropComplex& cx, const std::vector<Rational>& coeffs)
{
    const Fan& f = cx.base_fan();
    if (coeffs.size() != f.rays().size())
        throw CycleError("need one divisor coefficient per ray");
    TropCycle z;
    z.k = f.rank() - 1;
    for (std::size_t r = 0; r < coeffs.size(); ++r) {
        TropCycle d = divisor_cycle(cx, r);
        if (z.chain.empty())
            z.chain.assign(d.chain.size(), Rational(0));
        for (std::size_t i = 0; i < d.chain.size(); ++i)
            z.chain[i] += coeffs[r] * d.chain[i];
    }
    return z;
}

/// ∂ = transpose of δ in the complex with F^k coefficients.
inline QMatrix boundary_matrix(const CochainComplex& c, std::size_t q)
{
    if (q == 0)
        return QMatrix(0, c.dim(0));
    return c.delta(q - 1).transpose();
}

inline bool is_cycle(const CochainComplex& c, const TropCycle& z)
{
    return is_zero(boundary_matrix(c, z.k) * z.chain);
}

/// True iff z = ∂x for some (k+1)-chain x, i.e. z is zero in H_{k,k}.
inline bool is_boundary(const CochainComplex& c, const TropCycle& z)
{
    return column_space(boundary_matrix(c, z.k + 1)).contains(z.chain);
}

inline Rational pair(const QVec& cocycle, const TropCycle& z)
{
    if (cocycle.size() != z.chain.size())
        throw CycleError("pairing degree mismatch");
    return dot(cocycle, z.chain);
}

/// Kernel of a ∈ Q^{#rays} -> class of Σ a_ρ D_ρ in H_{n-1,n-1}.
inline QSubspace divisor_class_kernel(const TropComplex& cx)
{
    const Fan& f = cx.base_fan();
    const std::size_t k = f.rank() - 1;
    auto c = build_cochain_complex(cx, k);
    QSubspace b = column_space(boundary_matrix(c, k + 1));
    std::vector<QVec> cols;
    for (std::size_t r = 0; r < f.rays().size(); ++r)
        cols.push_back(b.reduce(divisor_cycle(cx, r).chain));
    return kernel_basis(QMatrix::from_columns(cols, c.dim(k)));
}

inline void require_surface(const Fan& f)
{
    require_smooth_complete(f);
    if (f.rank() != 2)
        throw CycleError("intersection matrices are implemented for surfaces only");
}

/// D_i · D_j on a smooth complete toric surface.
inline QMatrix surface_intersection_matrix(const Fan& f)
{
    require_surface(f);
    const std::size_t r = f.rays().size();
    QMatrix m(r, r);
    std::vector<std::vector<std::size_t>> nbrs(r);
    for (auto c : f.cones_of_dim(2)) {
        const auto& rs = f.cone_rays(c);
        m(rs[0], rs[1]) = 1;
        m(rs[1], rs[0]) = 1;
        nbrs[rs[0]].push_back(rs[1]);
        nbrs[rs[1]].push_back(rs[0]);
    }
    for (std::size_t i = 0; i < r; ++i) {
        if (nbrs[i].size() != 2)
            throw CycleError("ray without exactly two neighbours");
        const auto& v = f.rays()[i];
        IntVec s = f.rays()[nbrs[i][0]];
        for (std::size_t t = 0; t < s.size(); ++t)
            s[t] += f.rays()[nbrs[i][1]][t];
        // s = b v
        std::size_t piv = v[0] != 0 ? 0 : 1;
        Rational b = Rational(static_cast<long>(s[piv])) / Rational(static_cast<long>(v[piv]));
        for (std::size_t t = 0; t < 2; ++t)
            if (Rational(static_cast<long>(s[t])) != b * Rational(static_cast<long>(v[t])))
                throw CycleError("neighbour sum is not a multiple of the ray");
        m(i, i) = -b;
    }
    return m;
}

struct NumericalReport {
    QSubspace cycle_kernel;
    QSubspace intersection_kernel;
    bool pass() const { return cycle_kernel == intersection_kernel; }
};

inline NumericalReport numerical_kernel_check(const Fan& f)
{
    require_surface(f);
    NumericalReport rep;
    rep.cycle_kernel = divisor_class_kernel(tautological_complex(f));
    rep.intersection_kernel = kernel_basis(surface_intersection_matrix(f));
    return rep;
}

}  // namespace trophodge
