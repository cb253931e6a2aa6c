// Weight spectral sequence of a smooth toric variety from its fan:
//   E_1^{p,q} = ⊕_{dim σ = p} ∧^{q-p} (M ∩ σ^⊥)_Q,   d_1 = contraction with ray normals.
#pragma once

#include "trophodge/cohomology.hpp"

namespace trophodge {

class WeightError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct D1Options {
    /// Negates the first nonzero (σ, τ) block; a negative control for the d_1^2 = 0 checks.
    bool corrupt_sign = false;
};

struct SSPage {
    int level = 1;
    std::size_t n = 0;
    std::vector<std::vector<std::size_t>> dims;                            // [p][q]
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Block>> layout;  // cone blocks
    std::map<std::pair<std::size_t, std::size_t>, QMatrix> differentials;    // level 1 only

    std::size_t dim(std::size_t p, std::size_t q) const { return p <= n && q <= n ? dims[p][q] : 0; }
};

inline void require_smooth(const Fan& f)
{
    if (!f.is_smooth())
        throw WeightError("the weight spectral sequence needs a smooth fan");
}

inline std::vector<Block> e1_layout(const Fan& f, std::size_t p, std::size_t q)
{
    std::vector<Block> out;
    if (q < p)
        return out;
    std::size_t off = 0;
    for (auto s : f.cones_of_dim(p)) {
        std::size_t d = binomial(f.lattice(s).n_sigma_rank, q - p);
        out.push_back({s, off, d});
        off += d;
    }
    return out;
}

inline std::size_t layout_dim(const std::vector<Block>& l)
{
    return l.empty() ? 0 : l.back().offset + l.back().dim;
}

/// The block ∧^l (M∩σ^⊥) -> ∧^{l-1} (M∩τ^⊥) for τ = σ + ρ.
inline QMatrix residue_block(const Fan& f, std::size_t sigma, std::size_t tau, std::size_t l)
{
    const auto& ls = f.lattice(sigma);
    const auto& lt = f.lattice(tau);
    std::size_t ray = f.rays().size();
    for (auto r : f.cone_rays(tau))
        if (!std::binary_search(f.cone_rays(sigma).begin(), f.cone_rays(sigma).end(), r))
            ray = r;
    QVec normal = to_qvec(ls.project(f.rays().at(ray)));
    QMatrix c = contraction(normal, l);
    // M∩τ^⊥ sits in M∩σ^⊥ through the transpose of N_σ -> N_τ
    QMatrix incl = wedge_map(projection_between(ls, lt).transpose(), l - 1);
    QMatrix gram_inv = inverse(incl.transpose() * incl);
    QMatrix out = gram_inv * incl.transpose() * c;
    if (!(incl * out == c))
        throw WeightError("contraction does not land in the orbit lattice of the larger cone");
    return out;
}

inline QMatrix d1(const Fan& f, std::size_t p, std::size_t q, const D1Options& opt = {})
{
    require_smooth(f);
    auto src = e1_layout(f, p, q);
    auto dst = e1_layout(f, p + 1, q);
    QMatrix d(layout_dim(dst), layout_dim(src));
    if (q < p + 1)
        return d;
    bool corrupted = false;
    for (const auto& a : src)
        for (const auto& b : dst) {
            if (!f.is_face(a.cell, b.cell))
                continue;
            QMatrix blk = residue_block(f, a.cell, b.cell, q - p);
            if (opt.corrupt_sign && !corrupted && !blk.is_zero()) {
                blk *= Rational(-1);
                corrupted = true;
            }
            d.set_block(b.offset, a.offset, blk);
        }
    return d;
}

inline SSPage e1_page(const Fan& f, const D1Options& opt = {})
{
    require_smooth(f);
    SSPage page;
    page.level = 1;
    page.n = f.rank();
    page.dims.assign(page.n + 1, std::vector<std::size_t>(page.n + 1, 0));
    for (std::size_t p = 0; p <= page.n; ++p)
        for (std::size_t q = 0; q <= page.n; ++q) {
            page.layout[{p, q}] = e1_layout(f, p, q);
            page.dims[p][q] = layout_dim(page.layout[{p, q}]);
        }
    for (std::size_t p = 0; p <= page.n; ++p)
        for (std::size_t q = 0; q <= page.n; ++q)
            page.differentials[{p, q}] = d1(f, p, q, opt);
    return page;
}

inline bool d1_squared_zero(const SSPage& e1)
{
    for (const auto& [key, d] : e1.differentials) {
        auto next = e1.differentials.find({key.first + 1, key.second});
        if (next == e1.differentials.end())
            continue;
        if (!(next->second * d).is_zero())
            return false;
    }
    return true;
}

inline QMatrix page_differential(const SSPage& e1, std::size_t p, std::size_t q)
{
    auto it = e1.differentials.find({p, q});
    if (it != e1.differentials.end())
        return it->second;
    return QMatrix(e1.dim(p + 1, q), e1.dim(p, q));
}

inline SSPage e2_page(const SSPage& e1)
{
    SSPage page;
    page.level = 2;
    page.n = e1.n;
    page.layout = e1.layout;
    page.dims.assign(page.n + 1, std::vector<std::size_t>(page.n + 1, 0));
    for (std::size_t p = 0; p <= page.n; ++p)
        for (std::size_t q = 0; q <= page.n; ++q) {
            QMatrix in = p == 0 ? QMatrix(e1.dim(0, q), 0) : page_differential(e1, p - 1, q);
            QSubspace z = kernel_basis(page_differential(e1, p, q));
            QSubspace b = column_space(in);
            if (!z.contains(b))
                throw WeightError("d_1 does not square to zero at (" + std::to_string(p - 1) + "," +
                                  std::to_string(q) + ")");
            page.dims[p][q] = z.dim() - b.dim();
        }
    return page;
}

inline SSPage e2_page(const Fan& f, const D1Options& opt = {}) { return e2_page(e1_page(f, opt)); }

/// E_2 representatives of ker d_1 / im d_1 at (p, q), in E_1 block coordinates.
inline std::vector<QVec> e2_representatives(const SSPage& e1, std::size_t p, std::size_t q)
{
    std::size_t dim = 0;
    QMatrix in = p == 0 ? QMatrix(e1.dim(0, q), 0) : page_differential(e1, p - 1, q);
    return quotient_representatives(page_differential(e1, p, q), in, dim);
}

struct ComparisonEntry {
    std::size_t p = 0, q = 0;
    std::size_t e2 = 0;    // dim E_2^{p,q}
    std::size_t trop = 0;  // h^{q,p}_Trop
    bool pass() const { return e2 == trop; }
};

struct ComparisonReport {
    std::vector<ComparisonEntry> entries;
    bool pass() const
    {
        return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass(); });
    }
};

inline ComparisonReport compare_with_trop(const SSPage& e2, const BettiTable& h)
{
    ComparisonReport rep;
    for (std::size_t p = 0; p <= e2.n; ++p)
        for (std::size_t q = 0; q <= e2.n; ++q)
            rep.entries.push_back({p, q, e2.dim(p, q), h.at(q).at(p)});
    return rep;
}

inline ComparisonReport compare_with_trop(const Fan& f, const D1Options& opt = {})
{
    return compare_with_trop(e2_page(f, opt), betti_table(tautological_complex(f)));
}

/// Betti numbers b_0..b_{2n} of a smooth complete toric variety from the h-vector of its fan.
inline std::vector<std::size_t> h_vector_betti(const Fan& f)
{
    if (!is_complete(f))
        throw WeightError("Betti numbers from the h-vector need a complete fan");
    const std::size_t n = f.rank();
    auto fv = f.f_vector();
    std::vector<std::size_t> b(2 * n + 1, 0);
    for (std::size_t i = 0; i <= n; ++i) {
        Integer h = 0;
        for (std::size_t j = i; j <= n; ++j) {
            Integer term = Integer(static_cast<unsigned long>(binomial(j, i))) *
                           Integer(static_cast<unsigned long>(fv.at(n - j)));
            h += (j - i) % 2 == 0 ? term : Integer(-term);
        }
        if (h < 0)
            throw WeightError("negative h-vector entry");
        b[2 * i] = h.get_ui();
    }
    return b;
}

struct EulerReport {
    std::vector<std::size_t> e2_totals;  // Σ_{p+q=k} dim E_2^{p,q}
    std::vector<std::size_t> betti;      // from the h-vector
    bool pass() const { return e2_totals == betti; }
};

inline EulerReport euler_consistency(const Fan& f, const SSPage& e2)
{
    EulerReport rep;
    rep.betti = h_vector_betti(f);
    rep.e2_totals.assign(2 * e2.n + 1, 0);
    for (std::size_t p = 0; p <= e2.n; ++p)
        for (std::size_t q = 0; q <= e2.n; ++q)
            rep.e2_totals[p + q] += e2.dim(p, q);
    return rep;
}

inline EulerReport euler_consistency(const Fan& f) { return euler_consistency(f, e2_page(f)); }

}  // namespace trophodge
