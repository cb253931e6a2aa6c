// The partial compactification Trop(T_Σ) = ⊔_σ N_{σ,R} as a cell complex.
//
// A cell is a simplicial cone living in one stratum N_σ (its sedentarity),
// written in the coordinates of OrbitLattice(σ). Faces of a cell are either
// faces in the same stratum or faces of its closure in a deeper stratum.
#pragma once

#include "trophodge/exactla.hpp"
#include "trophodge/fans.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>

namespace trophodge {

class ComplexError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Where the multi-tangent spaces F_p come from.
///   cells:  sums of wedge powers of spans of the cofaces in the complex
///   strata: the complex covers a closed subset B of Trop(T_Σ) and F_p is taken
///           with respect to all of Trop(T_Σ), so F_p(P) is the full p-th
///           exterior power of N_{σ_P}
enum class Support { cells, strata };

enum class FaceCase : int {
    same_sedentarity = 1,  // inclusion
    boundary_stratum = 2,  // P2 = P1 ∩ closure of the deeper stratum; projection
    composite = 3,         // through Q = P1 ∩ Trop(O(σ_{P2}))
};

struct CellSpec {
    std::size_t sedentarity = 0;  // cone index in the base fan
    std::vector<IntVec> rays;     // in N_σ coordinates
};

struct Cell {
    std::size_t id = 0;
    std::size_t sedentarity = 0;
    std::vector<IntVec> rays;  // sorted, primitive, linearly independent
    std::size_t dim() const { return rays.size(); }
};

struct Incidence {
    std::size_t face = 0;
    std::size_t coface = 0;
    FaceCase kind = FaceCase::same_sedentarity;
    int sign = 1;
};

class TropComplex {
public:
    TropComplex(std::shared_ptr<const Fan> base, const std::vector<CellSpec>& specs, Support support)
        : base_(std::move(base)), support_(support)
    {
        if (!base_)
            throw ComplexError("complex without base fan");
        for (const auto& s : specs)
            add_cell(s);
        compute_faces();
    }

    const Fan& base_fan() const { return *base_; }
    std::shared_ptr<const Fan> base_fan_ptr() const { return base_; }
    Support support() const { return support_; }
    std::size_t size() const { return cells_.size(); }
    const Cell& cell(std::size_t i) const { return cells_.at(i); }
    const std::vector<Cell>& cells() const { return cells_; }
    const OrbitLattice& stratum(std::size_t cell_id) const { return base_->lattice(cells_.at(cell_id).sedentarity); }
    std::size_t stratum_rank(std::size_t cell_id) const { return stratum(cell_id).n_sigma_rank; }

    std::size_t dim() const
    {
        std::size_t d = 0;
        for (const auto& c : cells_)
            d = std::max(d, c.dim());
        return d;
    }

    std::vector<std::size_t> cells_of_dim(std::size_t d) const
    {
        std::vector<std::size_t> out;
        for (const auto& c : cells_)
            if (c.dim() == d)
                out.push_back(c.id);
        return out;
    }

    std::optional<std::size_t> find(std::size_t sedentarity, std::vector<IntVec> rays) const
    {
        std::sort(rays.begin(), rays.end());
        auto it = index_.find({sedentarity, rays});
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    /// All faces of a cell, itself included.
    std::vector<std::size_t> faces(std::size_t c) const
    {
        std::vector<std::size_t> out;
        for (const auto& [f, info] : face_info_.at(c))
            out.push_back(f);
        return out;
    }

    bool is_face(std::size_t face, std::size_t coface) const { return face_info_.at(coface).count(face) > 0; }

    FaceCase face_case(std::size_t face, std::size_t coface) const { return info(face, coface).kind; }

    /// The cell Q = coface ∩ Trop(O(σ_face)) through which a composite face map factors.
    std::size_t via(std::size_t face, std::size_t coface) const { return info(face, coface).via; }

    /// Facet incidences with their orientation signs.
    const std::vector<Incidence>& incidences() const { return incidences_; }

    /// Span of the cell inside N_{σ_P} ⊗ Q.
    QSubspace span(std::size_t c) const
    {
        std::vector<QVec> v;
        for (const auto& r : cells_.at(c).rays)
            v.push_back(to_qvec(r));
        return QSubspace::span(stratum_rank(c), v);
    }

    /// Records the cone pair (σ, τ) of a tautological cell.
    void set_tautological_label(std::size_t c, std::size_t sigma, std::size_t tau) { taut_[{sigma, tau}] = c; }

    std::optional<std::size_t> tautological_cell(std::size_t sigma, std::size_t tau) const
    {
        auto it = taut_.find({sigma, tau});
        if (it == taut_.end())
            return std::nullopt;
        return it->second;
    }

    /// The cell lies in one cone of the star of its stratum, so its closure is compact.
    bool is_bounded(std::size_t c) const { return bounded_.at(c); }

    bool is_compact() const
    {
        for (std::size_t c = 0; c < cells_.size(); ++c)
            if (!is_bounded(c))
                return false;
        return true;
    }

    bool closed_under_faces(const std::vector<bool>& mask) const
    {
        for (std::size_t c = 0; c < cells_.size(); ++c)
            if (mask.at(c))
                for (auto f : faces(c))
                    if (!mask[f])
                        return false;
        return true;
    }

private:
    struct FaceInfo {
        FaceCase kind;
        std::size_t via;
    };

    const FaceInfo& info(std::size_t face, std::size_t coface) const
    {
        auto it = face_info_.at(coface).find(face);
        if (it == face_info_.at(coface).end())
            throw ComplexError("cell " + std::to_string(face) + " is not a face of cell " + std::to_string(coface));
        return it->second;
    }

    void add_cell(const CellSpec& s)
    {
        if (s.sedentarity >= base_->num_cones())
            throw ComplexError("sedentarity cone index out of range");
        const std::size_t m = base_->lattice(s.sedentarity).n_sigma_rank;
        Cell c;
        c.id = cells_.size();
        c.sedentarity = s.sedentarity;
        c.rays = s.rays;
        for (const auto& r : c.rays) {
            if (r.size() != m)
                throw ComplexError("cell ray " + format_vec(r) + " does not live in a stratum of rank " +
                                   std::to_string(m));
            if (gcd_of(r) != 1)
                throw ComplexError("cell ray " + format_vec(r) + " is not primitive");
        }
        std::sort(c.rays.begin(), c.rays.end());
        if (trophodge::rank(ray_matrix(c.rays, m)) != c.rays.size())
            throw ComplexError("cells must be simplicial cones (linearly independent rays)");
        if (!index_.emplace(std::make_pair(c.sedentarity, c.rays), c.id).second)
            throw ComplexError("duplicate cell");
        cells_.push_back(std::move(c));
    }

    /// Whether the cone on the killed rays of p meets the relative interior of cone(gens),
    /// i.e. whether the closure of p meets the corresponding deeper stratum.
    static bool reaches(const Cell& p, const std::vector<std::size_t>& killed, const std::vector<QVec>& gens)
    {
        const std::size_t m = gens.front().size();
        QMatrix s = QMatrix::from_columns(gens, m);
        QMatrix a(m, killed.size() + gens.size());
        QVec b(m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < killed.size(); ++j)
                a(i, j) = static_cast<long>(p.rays[killed[j]][i]);
            for (std::size_t j = 0; j < gens.size(); ++j) {
                a(i, killed.size() + j) = -gens[j][i];
                b[i] += gens[j][i];
            }
        }
        if (!nonnegative_solution_exists(a, b))
            return false;
        for (auto k : killed)
            if (!nonnegative_solution_exists(s, to_qvec(p.rays[k])))
                throw ComplexError("cell " + std::to_string(p.id) + " crosses the boundary of a stratum cone");
        return true;
    }

    void compute_faces()
    {
        face_info_.assign(cells_.size(), {});
        bounded_.assign(cells_.size(), false);
        for (const auto& p : cells_) {
            bounded_[p.id] = p.rays.empty();
            const auto& lat = base_->lattice(p.sedentarity);
            const auto& srays = base_->cone_rays(p.sedentarity);
            for (auto deeper : base_->star(p.sedentarity)) {
                std::size_t q = p.id;
                std::vector<std::size_t> killed;  // positions in p.rays of the rays sent to infinity
                if (deeper != p.sedentarity) {
                    // the cone of the deeper stratum seen from N_σ
                    std::vector<QVec> gens;
                    for (auto r : base_->cone_rays(deeper))
                        if (!std::binary_search(srays.begin(), srays.end(), r))
                            gens.push_back(to_qvec(primitive(lat.project(base_->rays()[r]))));
                    QMatrix proj = projection_between(lat, base_->lattice(deeper));
                    std::vector<IntVec> induced;
                    for (std::size_t k = 0; k < p.rays.size(); ++k) {
                        QVec img = proj * to_qvec(p.rays[k]);
                        if (is_zero(img))
                            killed.push_back(k);
                        else
                            induced.push_back(primitive(img));
                    }
                    if (!bounded_[p.id]) {
                        QMatrix sm = QMatrix::from_columns(gens, lat.n_sigma_rank);
                        bounded_[p.id] = std::all_of(p.rays.begin(), p.rays.end(), [&](const IntVec& r) {
                            return nonnegative_solution_exists(sm, to_qvec(r));
                        });
                    }
                    if (killed.empty() || !reaches(p, killed, gens))
                        continue;
                    auto found = find(deeper, induced);
                    if (!found)
                        throw ComplexError("cell " + std::to_string(p.id) +
                                           " reaches a deeper stratum whose intersection cell is missing");
                    q = *found;
                    face_info_[p.id][q] = {FaceCase::boundary_stratum, q};
                    if (killed.size() == 1) {
                        auto sorted = cells_[q].rays;
                        int sign = (killed[0] % 2 == 0 ? 1 : -1) * permutation_sign(induced, sorted);
                        incidences_.push_back({q, p.id, FaceCase::boundary_stratum, sign});
                    }
                }
                const auto& qr = cells_[q].rays;
                for (std::size_t size = 0; size <= qr.size(); ++size)
                    for (const auto& sub : subsets(qr.size(), size)) {
                        if (q != p.id && size == qr.size())
                            continue;
                        std::vector<IntVec> fr;
                        for (auto i : sub)
                            fr.push_back(qr[i]);
                        auto f = find(deeper, fr);
                        if (!f)
                            throw ComplexError("complex is not closed under faces (cell " + std::to_string(q) + ")");
                        FaceCase kind = q == p.id ? FaceCase::same_sedentarity : FaceCase::composite;
                        face_info_[p.id][*f] = {kind, q};
                        if (q == p.id && size + 1 == qr.size()) {
                            std::size_t missing = 0;
                            while (missing < sub.size() && sub[missing] == missing)
                                ++missing;
                            int sign = missing % 2 == 0 ? -1 : 1;
                            incidences_.push_back({*f, p.id, FaceCase::same_sedentarity, sign});
                        }
                    }
            }
        }
    }

    std::shared_ptr<const Fan> base_;
    Support support_;
    std::vector<Cell> cells_;
    std::map<std::pair<std::size_t, std::vector<IntVec>>, std::size_t> index_;
    std::vector<std::map<std::size_t, FaceInfo>> face_info_;
    std::vector<Incidence> incidences_;
    std::vector<bool> bounded_;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> taut_;
};

/// Cells C_{σ,τ} for all pairs σ ⪯ τ: the closure of τ projected into the stratum of σ.
inline TropComplex tautological_complex(std::shared_ptr<const Fan> fan)
{
    if (!fan->is_simplicial())
        throw ComplexError("tautological complexes need a simplicial fan");
    std::vector<CellSpec> specs;
    std::vector<std::pair<std::size_t, std::size_t>> labels;
    for (std::size_t sigma = 0; sigma < fan->num_cones(); ++sigma) {
        const auto& lat = fan->lattice(sigma);
        const auto& srays = fan->cone_rays(sigma);
        for (auto tau : fan->star(sigma)) {
            CellSpec s;
            s.sedentarity = sigma;
            for (auto r : fan->cone_rays(tau))
                if (!std::binary_search(srays.begin(), srays.end(), r))
                    s.rays.push_back(primitive(lat.project(fan->rays()[r])));
            specs.push_back(std::move(s));
            labels.emplace_back(sigma, tau);
        }
    }
    TropComplex cx(std::move(fan), specs, Support::strata);
    for (std::size_t i = 0; i < labels.size(); ++i)
        cx.set_tautological_label(i, labels[i].first, labels[i].second);
    return cx;
}

inline TropComplex tautological_complex(const Fan& fan) { return tautological_complex(std::make_shared<const Fan>(fan)); }

/// Another fan structure on the same closed set of Trop(T_Σ): the closures of the cones of
/// a refinement Σ' of Σ, cut by the strata of Σ.
inline TropComplex refined_complex(std::shared_ptr<const Fan> base, const Fan& refinement)
{
    if (refinement.rank() != base->rank())
        throw ComplexError("refinement lives in a different lattice");
    // carrier in Σ of each cone of Σ'
    std::vector<std::size_t> carrier(refinement.num_cones());
    for (std::size_t c = 0; c < refinement.num_cones(); ++c) {
        IntVec v(base->rank(), 0);
        for (auto r : refinement.cone_rays(c))
            for (std::size_t i = 0; i < v.size(); ++i)
                v[i] += refinement.rays()[r][i];
        auto car = c == 0 ? std::optional<std::size_t>(0) : carrier_cone(*base, v);
        if (!car)
            throw ComplexError("refinement leaves the support of the base fan");
        carrier[c] = *car;
    }
    std::set<std::pair<std::size_t, std::vector<IntVec>>> seen;
    std::vector<CellSpec> specs;
    for (std::size_t sigma = 0; sigma < base->num_cones(); ++sigma) {
        const auto& lat = base->lattice(sigma);
        for (std::size_t tau = 0; tau < refinement.num_cones(); ++tau) {
            bool meets = false;
            for (std::size_t phi = 0; phi < refinement.num_cones() && !meets; ++phi)
                meets = carrier[phi] == sigma && refinement.is_face(phi, tau);
            if (!meets)
                continue;
            CellSpec s;
            s.sedentarity = sigma;
            for (auto r : refinement.cone_rays(tau)) {
                IntVec img = lat.project(refinement.rays()[r]);
                if (gcd_of(img) != 0)
                    s.rays.push_back(primitive(img));
            }
            std::sort(s.rays.begin(), s.rays.end());
            if (seen.emplace(sigma, s.rays).second)
                specs.push_back(std::move(s));
        }
    }
    return TropComplex(std::move(base), specs, Support::strata);
}

/// F_p(P) and the quotient presentation of F^p(P).
struct MultiTangent {
    std::size_t cell = 0;
    std::size_t p = 0;
    QSubspace lower;         // F_p(P) inside the p-th exterior power of N_{σ_P} ⊗ Q
    QSubspace annihilator;   // kernel of the p-th exterior power of (M ∩ σ_P^⊥)_Q -> F^p(P)
    std::size_t dim() const { return lower.dim(); }
    std::size_t upper_dim() const { return annihilator.ambient_dim() - annihilator.dim(); }
};

inline MultiTangent f_lower(const TropComplex& cx, std::size_t c, std::size_t p)
{
    const std::size_t m = cx.stratum_rank(c);
    MultiTangent t;
    t.cell = c;
    t.p = p;
    if (cx.support() == Support::strata) {
        t.lower = QSubspace::full(binomial(m, p));
    } else {
        t.lower = QSubspace::zero(binomial(m, p));
        for (std::size_t other = 0; other < cx.size(); ++other)
            if (cx.cell(other).sedentarity == cx.cell(c).sedentarity && cx.is_face(c, other))
                t.lower = t.lower + wedge_power(cx.span(other), p);
    }
    t.annihilator = kernel_basis(t.lower.basis());
    return t;
}

using TangentTable = std::vector<MultiTangent>;

inline TangentTable tangent_table(const TropComplex& cx, std::size_t p)
{
    TangentTable t;
    t.reserve(cx.size());
    for (std::size_t c = 0; c < cx.size(); ++c)
        t.push_back(f_lower(cx, c, p));
    return t;
}

/// i_{face ⊂ coface}: F_p(coface) -> F_p(face) in the echelon bases of both spaces.
inline QMatrix face_map(const TropComplex& cx, const TangentTable& table, std::size_t face, std::size_t coface)
{
    const auto& src = table.at(coface);
    const auto& dst = table.at(face);
    if (face == coface)
        return QMatrix::identity(src.dim());
    switch (cx.face_case(face, coface)) {
    case FaceCase::same_sedentarity: {
        std::vector<QVec> cols;
        for (std::size_t i = 0; i < src.dim(); ++i)
            cols.push_back(dst.lower.coordinates(src.lower.vector(i)));
        return QMatrix::from_columns(cols, dst.dim());
    }
    case FaceCase::boundary_stratum: {
        const auto& from = cx.base_fan().lattice(cx.cell(coface).sedentarity);
        const auto& to = cx.base_fan().lattice(cx.cell(face).sedentarity);
        QMatrix w = wedge_map(projection_between(from, to), src.p);
        std::vector<QVec> cols;
        for (std::size_t i = 0; i < src.dim(); ++i) {
            QVec img = w * src.lower.vector(i);
            if (!dst.lower.contains(img))
                throw ComplexError("projected multi-tangent vector escapes F_p of the face");
            cols.push_back(dst.lower.coordinates(img));
        }
        return QMatrix::from_columns(cols, dst.dim());
    }
    case FaceCase::composite: {
        std::size_t q = cx.via(face, coface);
        return face_map(cx, table, face, q) * face_map(cx, table, q, coface);
    }
    }
    throw ComplexError("unknown face case");
}

inline QMatrix face_map(const TropComplex& cx, std::size_t face, std::size_t coface, std::size_t p)
{
    TangentTable t(cx.size());
    for (std::size_t c = 0; c < cx.size(); ++c)
        if (cx.is_face(c, coface))
            t[c] = f_lower(cx, c, p);
    return face_map(cx, t, face, coface);
}

}  // namespace trophodge
