// Tropical cohomology H^{p,q} as cellular sheaf cohomology of F^p, with a
// Čech-type oracle on the order complex of the face poset.
#pragma once

#include "trophodge/tropspace.hpp"

#include <cstdlib>
#include <functional>
#include <future>
#include <thread>

namespace trophodge {

class CohomologyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Block {
    std::size_t cell = 0;
    std::size_t offset = 0;
    std::size_t dim = 0;
};

struct CochainComplex {
    std::size_t p = 0;
    std::vector<std::vector<Block>> blocks;  // per q
    std::vector<std::size_t> dims;           // per q
    std::vector<QMatrix> deltas;             // deltas[q] : C^q -> C^{q+1}

    std::size_t top() const { return dims.empty() ? 0 : dims.size() - 1; }
    std::size_t dim(std::size_t q) const { return q < dims.size() ? dims[q] : 0; }

    QMatrix delta(std::size_t q) const
    {
        if (q < deltas.size())
            return deltas[q];
        return QMatrix(dim(q + 1), dim(q));
    }

    std::optional<Block> block_of(std::size_t q, std::size_t cell) const
    {
        if (q >= blocks.size())
            return std::nullopt;
        for (const auto& b : blocks[q])
            if (b.cell == cell)
                return b;
        return std::nullopt;
    }
};

enum class Model { cellular, order_complex };

struct CohomologyResult {
    std::size_t p = 0;
    std::size_t q = 0;
    std::size_t dim = 0;
    Model model = Model::cellular;
    std::vector<QVec> representatives;  // echelon basis of a complement of im δ in ker δ
};

/// Cochains on the cells selected by mask (all cells when empty).
inline CochainComplex build_cochain_complex(const TropComplex& cx, const TangentTable& table,
                                            const std::vector<bool>& mask = {})
{
    auto selected = [&](std::size_t c) { return mask.empty() || mask.at(c); };
    CochainComplex out;
    out.p = table.empty() ? 0 : table.front().p;
    const std::size_t top = cx.dim();
    out.blocks.assign(top + 1, {});
    out.dims.assign(top + 1, 0);
    for (std::size_t c = 0; c < cx.size(); ++c) {
        if (!selected(c))
            continue;
        const std::size_t q = cx.cell(c).dim();
        out.blocks[q].push_back({c, out.dims[q], table.at(c).dim()});
        out.dims[q] += table.at(c).dim();
    }
    std::vector<std::pair<std::size_t, std::size_t>> where(cx.size(), {0, 0});
    for (std::size_t q = 0; q <= top; ++q)
        for (const auto& b : out.blocks[q])
            where[b.cell] = {q, b.offset};
    for (std::size_t q = 0; q <= top; ++q)
        out.deltas.emplace_back(q < top ? out.dims[q + 1] : 0, out.dims[q]);
    for (const auto& inc : cx.incidences()) {
        if (!selected(inc.face) || !selected(inc.coface))
            continue;
        const std::size_t q = cx.cell(inc.face).dim();
        QMatrix restriction = face_map(cx, table, inc.face, inc.coface).transpose();
        if (inc.sign < 0)
            restriction *= Rational(-1);
        const auto [qf, of] = where[inc.face];
        const auto [qc, oc] = where[inc.coface];
        QMatrix& d = out.deltas[q];
        for (std::size_t i = 0; i < restriction.rows(); ++i)
            for (std::size_t j = 0; j < restriction.cols(); ++j)
                d(oc + i, of + j) += restriction(i, j);
    }
    return out;
}

inline CochainComplex build_cochain_complex(const TropComplex& cx, std::size_t p)
{
    return build_cochain_complex(cx, tangent_table(cx, p));
}

inline bool delta_squared_zero(const CochainComplex& c)
{
    for (std::size_t q = 0; q + 1 < c.deltas.size(); ++q)
        if (!(c.deltas[q + 1] * c.deltas[q]).is_zero())
            return false;
    return true;
}

/// Echelon basis of ker(d_in) reduced modulo im(d_out_prev), i.e. ker d / im d_prev.
inline std::vector<QVec> quotient_representatives(const QMatrix& d, const QMatrix& d_prev, std::size_t& dim)
{
    QSubspace z = kernel_basis(d);
    QSubspace b = column_space(d_prev);
    dim = quotient_dim(z, b);
    std::vector<QVec> reduced;
    for (std::size_t i = 0; i < z.dim(); ++i)
        reduced.push_back(b.reduce(z.vector(i)));
    QSubspace r = QSubspace::span(d.cols(), reduced);
    if (r.dim() != dim)
        throw CohomologyError("representative reduction lost rank");
    std::vector<QVec> out;
    for (std::size_t i = 0; i < r.dim(); ++i)
        out.push_back(r.vector(i));
    return out;
}

inline CohomologyResult cohomology(const CochainComplex& c, std::size_t q)
{
    CohomologyResult r;
    r.p = c.p;
    r.q = q;
    QMatrix prev = q == 0 ? QMatrix(c.dim(0), 0) : c.delta(q - 1);
    r.representatives = quotient_representatives(c.delta(q), prev, r.dim);
    return r;
}

/// Cochains of the order complex of the face poset: chains P_0 < ... < P_k with
/// coefficients F^p(P_k). This is the Čech complex of the cover by open stars of the
/// barycenters, a Leray cover whose k-fold intersections carry the stalk of the top cell.
class OrderComplex {
public:
    static constexpr std::size_t max_cells = 50;

    OrderComplex(const TropComplex& cx, std::size_t p) : cx_(cx), table_(tangent_table(cx, p)), p_(p)
    {
        if (cx.size() > max_cells)
            throw CohomologyError("order-complex cohomology is limited to " + std::to_string(max_cells) +
                                  " cells; got " + std::to_string(cx.size()));
        std::vector<std::size_t> chain;
        for (std::size_t c = 0; c < cx.size(); ++c) {
            chain = {c};
            extend(chain);
        }
        for (auto& level : chains_)
            std::sort(level.begin(), level.end());
        offsets_.resize(chains_.size());
        for (std::size_t k = 0; k < chains_.size(); ++k) {
            std::size_t off = 0;
            for (const auto& ch : chains_[k]) {
                offsets_[k][ch] = off;
                off += table_[ch.back()].dim();
            }
            dims_.push_back(off);
        }
    }

    std::size_t dim(std::size_t k) const { return k < dims_.size() ? dims_[k] : 0; }

    /// Differential C^k -> C^{k+1}.
    QMatrix differential(std::size_t k) const
    {
        QMatrix d(dim(k + 1), dim(k));
        if (k + 1 >= chains_.size())
            return d;
        for (const auto& big : chains_[k + 1]) {
            const std::size_t row = offsets_[k + 1].at(big);
            for (std::size_t i = 0; i < big.size(); ++i) {
                std::vector<std::size_t> small = big;
                small.erase(small.begin() + static_cast<std::ptrdiff_t>(i));
                const std::size_t col = offsets_[k].at(small);
                const Rational s = i % 2 == 0 ? 1 : -1;
                if (i + 1 == big.size()) {
                    QMatrix r = face_map(cx_, table_, small.back(), big.back()).transpose();
                    for (std::size_t a = 0; a < r.rows(); ++a)
                        for (std::size_t b = 0; b < r.cols(); ++b)
                            d(row + a, col + b) += s * r(a, b);
                } else {
                    for (std::size_t a = 0; a < table_[big.back()].dim(); ++a)
                        d(row + a, col + a) += s;
                }
            }
        }
        return d;
    }

    CohomologyResult cohomology(std::size_t q) const
    {
        CohomologyResult r;
        r.p = p_;
        r.q = q;
        r.model = Model::order_complex;
        QMatrix prev = q == 0 ? QMatrix(dim(0), 0) : differential(q - 1);
        r.representatives = quotient_representatives(differential(q), prev, r.dim);
        return r;
    }

private:
    void extend(std::vector<std::size_t>& chain)
    {
        if (chains_.size() < chain.size())
            chains_.resize(chain.size());
        chains_[chain.size() - 1].push_back(chain);
        for (std::size_t c = 0; c < cx_.size(); ++c)
            if (c != chain.back() && cx_.is_face(chain.back(), c)) {
                chain.push_back(c);
                extend(chain);
                chain.pop_back();
            }
    }

    const TropComplex& cx_;
    TangentTable table_;
    std::size_t p_;
    std::vector<std::vector<std::vector<std::size_t>>> chains_;
    std::vector<std::map<std::vector<std::size_t>, std::size_t>> offsets_;
    std::vector<std::size_t> dims_;
};

inline std::size_t cech_oracle(const TropComplex& cx, std::size_t p, std::size_t q)
{
    return OrderComplex(cx, p).cohomology(q).dim;
}

/// H^{p,q}_Trop. Compact complexes use cellular cochains; a complex with unbounded
/// cells is evaluated on its order complex, since cellular cochains of open cells
/// would compute cohomology with compact support instead.
inline CohomologyResult cohomology(const TropComplex& cx, std::size_t p, std::size_t q)
{
    if (!cx.is_compact())
        return OrderComplex(cx, p).cohomology(q);
    return cohomology(build_cochain_complex(cx, p), q);
}

inline std::vector<bool> cell_mask(const TropComplex& cx, const std::vector<std::size_t>& cells)
{
    std::vector<bool> mask(cx.size(), false);
    for (auto c : cells)
        mask.at(c) = true;
    return mask;
}

inline void require_closed(const TropComplex& cx, const std::vector<bool>& sub)
{
    if (sub.size() != cx.size())
        throw CohomologyError("subcomplex mask has the wrong length");
    if (!cx.closed_under_faces(sub))
        throw CohomologyError("relative cohomology needs a closed subcomplex");
    if (!cx.is_compact())
        throw CohomologyError("relative cohomology is implemented for compact complexes only");
}

/// H^{p,q}(Λ, A): cochains vanishing on the closed subcomplex A.
inline CohomologyResult relative_cohomology(const TropComplex& cx, const std::vector<bool>& sub, std::size_t p,
                                            std::size_t q)
{
    require_closed(cx, sub);
    std::vector<bool> rest(sub.size());
    for (std::size_t i = 0; i < sub.size(); ++i)
        rest[i] = !sub[i];
    bool any = std::find(rest.begin(), rest.end(), true) != rest.end();
    if (!any) {
        CohomologyResult r;
        r.p = p;
        r.q = q;
        return r;
    }
    return cohomology(build_cochain_complex(cx, tangent_table(cx, p), rest), q);
}

using BettiTable = std::vector<std::vector<std::size_t>>;  // [p][q]

inline std::size_t thread_cap()
{
    std::size_t cap = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("TROPHODGE_THREADS")) {
        try {
            long v = std::stol(env);
            if (v >= 1)
                cap = static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    return cap;
}

/// Runs f(0..count-1), at most thread_cap() at a time.
template <class F>
auto parallel_map(std::size_t count, F f) -> std::vector<decltype(f(std::size_t{}))>
{
    using R = decltype(f(std::size_t{}));
    std::vector<R> out(count);
    const std::size_t cap = thread_cap();
    for (std::size_t start = 0; start < count; start += cap) {
        std::vector<std::future<R>> jobs;
        for (std::size_t i = start; i < std::min(count, start + cap); ++i)
            jobs.push_back(std::async(cap == 1 ? std::launch::deferred : std::launch::async, f, i));
        for (std::size_t i = 0; i < jobs.size(); ++i)
            out[start + i] = jobs[i].get();
    }
    return out;
}

/// h^{p,q} for 0 <= p, q <= rank of the base fan.
inline BettiTable betti_table(const TropComplex& cx)
{
    const std::size_t n = cx.base_fan().rank();
    return parallel_map(n + 1, [&](std::size_t p) {
        std::vector<std::size_t> row(n + 1, 0);
        if (cx.is_compact()) {
            auto c = build_cochain_complex(cx, p);
            for (std::size_t q = 0; q <= n; ++q)
                row[q] = cohomology(c, q).dim;
        } else {
            OrderComplex oc(cx, p);
            for (std::size_t q = 0; q <= n; ++q)
                row[q] = oc.cohomology(q).dim;
        }
        return row;
    });
}

/// Rank of the map induced on cohomology by a cochain map f : (C1, d1) -> (C2, d2) in degree q.
inline std::size_t induced_rank(const QMatrix& f, const QMatrix& d1, const QMatrix& d2_prev)
{
    QSubspace z = kernel_basis(d1);
    std::vector<QVec> images;
    for (std::size_t i = 0; i < z.dim(); ++i)
        images.push_back(f * z.vector(i));
    QSubspace b = column_space(d2_prev);
    return (QSubspace::span(f.rows(), images) + b).dim() - b.dim();
}

/// One stretch  H^q(Λ,A) -> H^q(Λ) -> H^q(A) -> H^{q+1}(Λ,A)  of the long exact sequence.
struct LesDegree {
    std::size_t q = 0;
    std::size_t relative = 0, absolute = 0, sub = 0;
    std::size_t rank_j = 0, rank_r = 0, rank_connecting = 0;
};

struct LesReport {
    std::size_t p = 0;
    std::vector<LesDegree> degrees;
    bool exact = true;
};

inline QMatrix selection(const CochainComplex& from, const CochainComplex& to, std::size_t q)
{
    QMatrix s(to.dim(q), from.dim(q));
    if (q >= to.blocks.size())
        return s;
    for (const auto& b : to.blocks[q])
        if (auto a = from.block_of(q, b.cell))
            for (std::size_t i = 0; i < b.dim; ++i)
                s(b.offset + i, a->offset + i) = 1;
    return s;
}

inline LesReport long_exact_sequence(const TropComplex& cx, const std::vector<bool>& sub, std::size_t p)
{
    require_closed(cx, sub);
    std::vector<bool> rest(sub.size());
    for (std::size_t i = 0; i < sub.size(); ++i)
        rest[i] = !sub[i];
    auto table = tangent_table(cx, p);
    auto x = build_cochain_complex(cx, table);
    auto a = build_cochain_complex(cx, table, sub);
    auto rel = build_cochain_complex(cx, table, rest);
    const std::size_t top = x.top();
    auto prev = [](const CochainComplex& c, std::size_t q) {
        return q == 0 ? QMatrix(c.dim(0), 0) : c.delta(q - 1);
    };

    LesReport rep;
    rep.p = p;
    for (std::size_t q = 0; q <= top + 1; ++q) {
        LesDegree d;
        d.q = q;
        d.relative = cohomology(rel, q).dim;
        d.absolute = cohomology(x, q).dim;
        d.sub = cohomology(a, q).dim;
        d.rank_j = induced_rank(selection(rel, x, q), rel.delta(q), prev(x, q));
        d.rank_r = induced_rank(selection(x, a, q), x.delta(q), prev(a, q));
        // lift a cocycle of A by zero, apply δ, keep the part away from A
        QMatrix connecting = selection(x, rel, q + 1) * x.delta(q) * selection(x, a, q).transpose();
        d.rank_connecting = induced_rank(connecting, a.delta(q), rel.delta(q));
        rep.degrees.push_back(d);
    }
    for (std::size_t q = 0; q < rep.degrees.size(); ++q) {
        const auto& d = rep.degrees[q];
        const std::size_t into_rel = q == 0 ? 0 : rep.degrees[q - 1].rank_connecting;
        if (d.relative != into_rel + d.rank_j || d.absolute != d.rank_j + d.rank_r ||
            d.sub != d.rank_r + d.rank_connecting)
            rep.exact = false;
    }
    return rep;
}

}  // namespace trophodge
