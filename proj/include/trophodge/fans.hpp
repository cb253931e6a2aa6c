// Rational polyhedral cones and fans in N = Z^n, the lattices M ∩ σ^⊥ attached to
// torus orbits, and a small zoo of smooth fans.
#pragma once

#include "trophodge/exactla.hpp"
#include "trophodge/lp.hpp"

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

namespace trophodge {

class FanError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using RaySet = std::vector<std::size_t>;  // sorted ray indices

template <class T>
inline std::string format_vec(const std::vector<T>& v)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

inline QMatrix ray_matrix(const std::vector<IntVec>& rays, std::size_t n)
{
    QMatrix m(n, rays.size());
    for (std::size_t j = 0; j < rays.size(); ++j)
        for (std::size_t i = 0; i < n; ++i)
            m(i, j) = static_cast<long>(rays[j][i]);
    return m;
}

/// Strongly convex rational polyhedral cone given by its primitive extremal rays.
class Cone {
public:
    Cone(std::size_t ambient_rank, std::vector<IntVec> rays) : n_(ambient_rank), rays_(std::move(rays))
    {
        for (const auto& r : rays_) {
            if (r.size() != n_)
                throw FanError("ray " + format_vec(r) + " has wrong length for rank " + std::to_string(n_));
            if (gcd_of(r) == 0)
                throw FanError("zero vector given as a ray");
            if (gcd_of(r) != 1)
                throw FanError("ray " + format_vec(r) + " is not primitive");
        }
        for (std::size_t i = 0; i < rays_.size(); ++i)
            for (std::size_t j = i + 1; j < rays_.size(); ++j)
                if (rays_[i] == rays_[j])
                    throw FanError("duplicate ray " + format_vec(rays_[i]));
        dim_ = trophodge::rank(ray_matrix(rays_, n_));
        if (!rays_.empty()) {
            // a nonzero nonnegative combination summing to zero means the cone contains a line
            QMatrix a = vstack(ray_matrix(rays_, n_), QMatrix(1, rays_.size()));
            for (std::size_t j = 0; j < rays_.size(); ++j)
                a(n_, j) = 1;
            QVec b(n_ + 1);
            b[n_] = 1;
            if (nonnegative_solution_exists(a, b))
                throw FanError("cone is not strongly convex");
        }
        if (dim_ < rays_.size())
            for (std::size_t i = 0; i < rays_.size(); ++i) {
                std::vector<IntVec> others;
                for (std::size_t j = 0; j < rays_.size(); ++j)
                    if (j != i)
                        others.push_back(rays_[j]);
                if (nonnegative_solution_exists(ray_matrix(others, n_), to_qvec(rays_[i])))
                    throw FanError("ray " + format_vec(rays_[i]) + " is not extremal");
            }
    }

    std::size_t ambient_rank() const { return n_; }
    const std::vector<IntVec>& rays() const { return rays_; }
    std::size_t dim() const { return dim_; }
    bool is_simplicial() const { return dim_ == rays_.size(); }

    bool contains(const IntVec& v) const
    {
        if (v.size() != n_)
            throw FanError("point has wrong length");
        if (rays_.empty())
            return gcd_of(v) == 0;
        return nonnegative_solution_exists(ray_matrix(rays_, n_), to_qvec(v));
    }

private:
    std::size_t n_;
    std::vector<IntVec> rays_;
    std::size_t dim_ = 0;
};

/// Do the relative interiors of two cones meet?
/// relint cone(r_1..r_k) = { sum l_i r_i : all l_i > 0 }; scale so that l_i >= 1.
inline bool relative_interiors_meet(const Cone& a, const Cone& b)
{
    const std::size_t n = a.ambient_rank();
    const auto& ra = a.rays();
    const auto& rb = b.rays();
    QMatrix m(n, ra.size() + rb.size());
    QVec rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < ra.size(); ++j) {
            m(i, j) = static_cast<long>(ra[j][i]);
            rhs[i] -= static_cast<long>(ra[j][i]);
        }
        for (std::size_t j = 0; j < rb.size(); ++j) {
            m(i, ra.size() + j) = -static_cast<long>(rb[j][i]);
            rhs[i] += static_cast<long>(rb[j][i]);
        }
    }
    return nonnegative_solution_exists(m, rhs);
}

/// Ray index sets of all faces of c, including the zero face and c itself,
/// sorted by (dimension, lexicographic). Simplicial cones take the fast path;
/// otherwise faces are the intersections of facets found from supporting hyperplanes.
inline std::vector<RaySet> face_index_sets(const Cone& c)
{
    const std::size_t k = c.rays().size();
    const std::size_t n = c.ambient_rank();
    std::vector<RaySet> out;
    if (c.is_simplicial()) {
        for (std::size_t p = 0; p <= k; ++p)
            for (auto& s : subsets(k, p))
                out.push_back(s);
        return out;
    }
    const std::size_t d = c.dim();
    // coordinates of the rays in a basis of their span
    std::vector<QVec> qrays;
    for (const auto& r : c.rays())
        qrays.push_back(to_qvec(r));
    auto span = QSubspace::span(n, qrays);
    std::vector<QVec> coords;
    for (const auto& r : qrays)
        coords.push_back(span.coordinates(r));

    std::set<RaySet> facets;
    for (const auto& s : subsets(k, d - 1)) {
        std::vector<QVec> sel;
        for (auto i : s)
            sel.push_back(coords[i]);
        QMatrix sm = sel.empty() ? QMatrix(0, d) : QMatrix::from_rows(sel, d);
        if (trophodge::rank(sm) != d - 1)
            continue;
        auto normal = kernel_basis(sm);
        if (normal.dim() != 1)
            continue;
        QVec nv = normal.vector(0);
        int side = 0;
        bool ok = true;
        RaySet on;
        for (std::size_t i = 0; i < k; ++i) {
            int s2 = sgn(dot(nv, coords[i]));
            if (s2 == 0) {
                on.push_back(i);
                continue;
            }
            if (side == 0)
                side = s2;
            else if (side != s2) {
                ok = false;
                break;
            }
        }
        if (ok)
            facets.insert(on);
    }
    RaySet all(k);
    std::iota(all.begin(), all.end(), 0);
    std::set<RaySet> faces{all};
    std::vector<RaySet> queue{all};
    while (!queue.empty()) {
        RaySet g = queue.back();
        queue.pop_back();
        for (const auto& f : facets) {
            RaySet x;
            std::set_intersection(g.begin(), g.end(), f.begin(), f.end(), std::back_inserter(x));
            if (faces.insert(x).second)
                queue.push_back(x);
        }
    }
    auto face_dim = [&](const RaySet& s) {
        std::vector<IntVec> r;
        for (auto i : s)
            r.push_back(c.rays()[i]);
        return trophodge::rank(ray_matrix(r, n));
    };
    std::vector<std::pair<std::size_t, RaySet>> keyed;
    for (const auto& f : faces)
        keyed.emplace_back(face_dim(f), f);
    std::sort(keyed.begin(), keyed.end());
    for (auto& [dim, f] : keyed)
        out.push_back(std::move(f));
    return out;
}

inline std::vector<Cone> faces(const Cone& c)
{
    std::vector<Cone> out;
    for (const auto& s : face_index_sets(c)) {
        std::vector<IntVec> r;
        for (auto i : s)
            r.push_back(c.rays()[i]);
        out.emplace_back(c.ambient_rank(), std::move(r));
    }
    return out;
}

/// Rays form part of a Z-basis of N.
inline bool is_smooth(const Cone& c)
{
    const std::size_t k = c.rays().size();
    if (k == 0)
        return true;
    if (c.dim() != k)
        return false;
    auto divisors = elementary_divisors(ZMatrix::from_columns(c.rays(), c.ambient_rank()));
    return divisors.size() == k && std::all_of(divisors.begin(), divisors.end(), [](const Integer& d) { return d == 1; });
}

/// M ∩ σ^⊥ and the quotient lattice N_σ = Hom(M ∩ σ^⊥, Z) in fixed coordinates.
struct OrbitLattice {
    std::size_t ambient_rank = 0;
    std::vector<IntVec> m_perp_basis;  // Hermite-reduced Z-basis of M ∩ σ^⊥
    std::size_t n_sigma_rank = 0;
    QMatrix projection;  // N -> N_σ, rows are m_perp_basis
    QMatrix section;     // rational right inverse of projection

    IntVec project(const IntVec& v) const
    {
        QVec img = projection * to_qvec(v);
        IntVec out;
        for (const auto& x : img)
            out.push_back(x.get_num().get_si());
        return out;
    }
};

inline OrbitLattice orbit_lattice(const Cone& c)
{
    const std::size_t n = c.ambient_rank();
    OrbitLattice lat;
    lat.ambient_rank = n;
    std::vector<IntVec> gens;
    if (c.rays().empty()) {
        for (std::size_t i = 0; i < n; ++i) {
            IntVec e(n, 0);
            e[i] = 1;
            gens.push_back(e);
        }
    } else {
        auto snf = smith_normal_form(ZMatrix::from_columns(c.rays(), n));
        // rows of U beyond the rank annihilate the rays and span a saturated sublattice
        for (std::size_t i = c.dim(); i < n; ++i) {
            IntVec row;
            for (std::size_t j = 0; j < n; ++j)
                row.push_back(snf.U(i, j).get_si());
            gens.push_back(row);
        }
    }
    lat.m_perp_basis = hermite_rows(gens, n);
    lat.n_sigma_rank = lat.m_perp_basis.size();
    if (lat.n_sigma_rank + c.dim() != n)
        throw FanError("orbit lattice rank mismatch");
    lat.projection = QMatrix(lat.n_sigma_rank, n);
    for (std::size_t i = 0; i < lat.n_sigma_rank; ++i)
        for (std::size_t j = 0; j < n; ++j)
            lat.projection(i, j) = static_cast<long>(lat.m_perp_basis[i][j]);
    if (lat.n_sigma_rank == 0)
        lat.section = QMatrix(n, 0);
    else
        lat.section = lat.projection.transpose() * inverse(lat.projection * lat.projection.transpose());
    return lat;
}

/// The projection N_σ -> N_τ for σ ⊆ τ in the fixed coordinates of both lattices.
inline QMatrix projection_between(const OrbitLattice& from, const OrbitLattice& to)
{
    return to.projection * from.section;
}

/// A fan: rays indexed globally, cones stored as sorted ray index sets,
/// closed under faces and sorted by (dimension, ray indices).
class Fan {
public:
    Fan() = default;

    /// Builds the fan generated by the given cones (typically the maximal ones)
    /// and checks every fan axiom.
    Fan(std::size_t rank, std::vector<IntVec> rays, const std::vector<RaySet>& generators)
        : n_(rank), rays_(std::move(rays))
    {
        std::set<RaySet> closure{RaySet{}};
        std::vector<bool> used(rays_.size(), false);
        for (auto g : generators) {
            std::sort(g.begin(), g.end());
            if (std::adjacent_find(g.begin(), g.end()) != g.end())
                throw FanError("cone lists a ray twice");
            for (auto i : g) {
                if (i >= rays_.size())
                    throw FanError("cone refers to ray index " + std::to_string(i) + " out of range");
                used[i] = true;
            }
            Cone c = make_cone(g);
            for (const auto& f : face_index_sets(c)) {
                RaySet global;
                for (auto i : f)
                    global.push_back(g[i]);
                closure.insert(global);
            }
        }
        for (std::size_t i = 0; i < rays_.size(); ++i)
            if (!used[i])
                throw FanError("ray " + std::to_string(i) + " is not used by any cone");
        for (const auto& s : closure) {
            Cone c = make_cone(s);
            entries_.push_back({s, c.dim()});
        }
        std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
            return std::tie(a.dim, a.rays) < std::tie(b.dim, b.rays);
        });
        for (std::size_t i = 0; i < entries_.size(); ++i)
            index_[entries_[i].rays] = i;
        for (std::size_t i = 0; i < rays_.size(); ++i)
            if (!index_.count(RaySet{i}))
                throw FanError("ray " + std::to_string(i) + " is not a face of the fan");
        validate_intersections();
        for (std::size_t i = 0; i < entries_.size(); ++i)
            lattices_.push_back(orbit_lattice(cone(i)));
    }

    std::size_t rank() const { return n_; }
    const std::vector<IntVec>& rays() const { return rays_; }
    std::size_t num_cones() const { return entries_.size(); }
    const RaySet& cone_rays(std::size_t i) const { return entries_.at(i).rays; }
    std::size_t cone_dim(std::size_t i) const { return entries_.at(i).dim; }
    Cone cone(std::size_t i) const { return make_cone(entries_.at(i).rays); }
    const OrbitLattice& lattice(std::size_t i) const { return lattices_.at(i); }

    std::optional<std::size_t> find(RaySet s) const
    {
        std::sort(s.begin(), s.end());
        auto it = index_.find(s);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    std::size_t zero_cone() const { return 0; }

    std::size_t ray_cone(std::size_t ray) const { return index_.at(RaySet{ray}); }

    /// σ is a face of τ (cones of a fan are faces of each other iff their ray sets nest).
    bool is_face(std::size_t sigma, std::size_t tau) const
    {
        const auto& a = cone_rays(sigma);
        const auto& b = cone_rays(tau);
        return std::includes(b.begin(), b.end(), a.begin(), a.end());
    }

    std::vector<std::size_t> cones_of_dim(std::size_t d) const
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i].dim == d)
                out.push_back(i);
        return out;
    }

    std::vector<std::size_t> maximal_cones() const
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            bool maximal = true;
            for (std::size_t j = 0; j < entries_.size() && maximal; ++j)
                if (j != i && is_face(i, j))
                    maximal = false;
            if (maximal)
                out.push_back(i);
        }
        return out;
    }

    /// Cones τ with σ ⊆ τ.
    std::vector<std::size_t> star(std::size_t sigma) const
    {
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < entries_.size(); ++j)
            if (is_face(sigma, j))
                out.push_back(j);
        return out;
    }

    std::size_t dim() const
    {
        std::size_t d = 0;
        for (const auto& e : entries_)
            d = std::max(d, e.dim);
        return d;
    }

    /// f_k = number of k-dimensional cones, k = 0..rank.
    std::vector<std::size_t> f_vector() const
    {
        std::vector<std::size_t> f(n_ + 1, 0);
        for (const auto& e : entries_)
            ++f[e.dim];
        return f;
    }

    bool is_smooth() const
    {
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (!trophodge::is_smooth(cone(i)))
                return false;
        return true;
    }

    bool is_simplicial() const
    {
        for (const auto& e : entries_)
            if (e.dim != e.rays.size())
                return false;
        return true;
    }

private:
    struct Entry {
        RaySet rays;
        std::size_t dim;
    };

    Cone make_cone(const RaySet& s) const
    {
        std::vector<IntVec> r;
        for (auto i : s)
            r.push_back(rays_.at(i));
        return Cone(n_, std::move(r));
    }

    // For a face-closed collection, pairwise intersections are common faces
    // iff distinct cones have disjoint relative interiors.
    void validate_intersections() const
    {
        std::vector<Cone> cones;
        for (const auto& e : entries_)
            cones.push_back(make_cone(e.rays));
        for (std::size_t i = 0; i < cones.size(); ++i)
            for (std::size_t j = i + 1; j < cones.size(); ++j) {
                if (is_face(i, j) || is_face(j, i))
                    continue;
                if (relative_interiors_meet(cones[i], cones[j]))
                    throw FanError("cones " + describe(i) + " and " + describe(j) +
                                   " overlap: their intersection is not a common face");
            }
    }

    std::string describe(std::size_t i) const
    {
        std::string s = "[";
        for (std::size_t k = 0; k < entries_[i].rays.size(); ++k)
            s += (k ? "," : "") + std::to_string(entries_[i].rays[k]);
        return s + "]";
    }

    std::size_t n_ = 0;
    std::vector<IntVec> rays_;
    std::vector<Entry> entries_;
    std::map<RaySet, std::size_t> index_;
    std::vector<OrbitLattice> lattices_;
};

/// Support equals N_R: the fan is nonempty, pure of full dimension, and every
/// codimension-one cone lies in exactly two maximal cones.
inline bool is_complete(const Fan& f)
{
    if (f.num_cones() == 0)
        return false;
    const std::size_t n = f.rank();
    for (auto m : f.maximal_cones())
        if (f.cone_dim(m) != n)
            return false;
    if (n == 0)
        return true;
    auto top = f.cones_of_dim(n);
    for (auto c : f.cones_of_dim(n - 1)) {
        std::size_t count = 0;
        for (auto t : top)
            if (f.is_face(c, t))
                ++count;
        if (count != 2)
            return false;
    }
    return true;
}

/// Index of the unique cone whose relative interior contains v, if any.
inline std::optional<std::size_t> carrier_cone(const Fan& f, const IntVec& v)
{
    for (std::size_t i = 0; i < f.num_cones(); ++i)
        if (relative_interiors_meet(f.cone(i), Cone(f.rank(), {primitive(v)})) ||
            (gcd_of(v) == 0 && i == f.zero_cone()))
            return i;
    return std::nullopt;
}

/// Star subdivision of f along the ray through v.
inline Fan star_subdivision(const Fan& f, IntVec v)
{
    if (v.size() != f.rank())
        throw FanError("subdivision ray has wrong length");
    if (gcd_of(v) == 0)
        throw FanError("subdivision ray is zero");
    v = primitive(v);
    auto carrier = carrier_cone(f, v);
    if (!carrier)
        throw FanError("ray " + format_vec(v) + " lies outside the support of the fan");
    for (std::size_t i = 0; i < f.rays().size(); ++i)
        if (f.rays()[i] == v)
            return f;
    auto rays = f.rays();
    const std::size_t vi = rays.size();
    rays.push_back(v);
    std::vector<RaySet> gens;
    for (auto m : f.maximal_cones()) {
        if (!f.is_face(*carrier, m)) {
            gens.push_back(f.cone_rays(m));
            continue;
        }
        // replace m by cone(v, F) for the facets F of m not containing the carrier
        const auto& mr = f.cone_rays(m);
        for (const auto& local : face_index_sets(f.cone(m))) {
            RaySet face;
            for (auto i : local)
                face.push_back(mr[i]);
            auto id = f.find(face);
            if (!id || f.cone_dim(*id) + 1 != f.cone_dim(m) || f.is_face(*carrier, *id))
                continue;
            face.push_back(vi);
            gens.push_back(face);
        }
    }
    return Fan(f.rank(), std::move(rays), gens);
}

inline Fan product(const Fan& a, const Fan& b)
{
    const std::size_t n = a.rank() + b.rank();
    std::vector<IntVec> rays;
    for (const auto& r : a.rays()) {
        IntVec x = r;
        x.resize(n, 0);
        rays.push_back(x);
    }
    for (const auto& r : b.rays()) {
        IntVec x(a.rank(), 0);
        x.insert(x.end(), r.begin(), r.end());
        rays.push_back(x);
    }
    std::vector<RaySet> gens;
    for (auto i : a.maximal_cones())
        for (auto j : b.maximal_cones()) {
            RaySet s = a.cone_rays(i);
            for (auto k : b.cone_rays(j))
                s.push_back(k + a.rays().size());
            gens.push_back(s);
        }
    return Fan(n, std::move(rays), gens);
}

/// The fan of the orbit closure V(σ): images in N_σ of the cones containing σ.
inline Fan star_fan(const Fan& f, std::size_t sigma)
{
    const auto& lat = f.lattice(sigma);
    const auto& srays = f.cone_rays(sigma);
    std::vector<IntVec> rays;
    std::map<std::size_t, std::size_t> ray_index;
    std::vector<RaySet> gens;
    for (auto tau : f.star(sigma)) {
        RaySet g;
        for (auto r : f.cone_rays(tau)) {
            if (std::binary_search(srays.begin(), srays.end(), r))
                continue;
            auto it = ray_index.find(r);
            if (it == ray_index.end()) {
                it = ray_index.emplace(r, rays.size()).first;
                rays.push_back(primitive(lat.project(f.rays()[r])));
            }
            g.push_back(it->second);
        }
        gens.push_back(g);
    }
    return Fan(lat.n_sigma_rank, std::move(rays), gens);
}

/// The fan of the open complement of the divisor of a ray: all cones not containing it.
inline Fan complement_fan(const Fan& f, std::size_t ray)
{
    std::vector<IntVec> rays;
    std::map<std::size_t, std::size_t> remap;
    for (std::size_t i = 0; i < f.rays().size(); ++i)
        if (i != ray) {
            remap[i] = rays.size();
            rays.push_back(f.rays()[i]);
        }
    std::vector<RaySet> gens;
    for (std::size_t c = 0; c < f.num_cones(); ++c) {
        const auto& s = f.cone_rays(c);
        if (std::binary_search(s.begin(), s.end(), ray))
            continue;
        RaySet g;
        for (auto i : s)
            g.push_back(remap.at(i));
        gens.push_back(g);
    }
    return Fan(f.rank(), std::move(rays), gens);
}

// ---------------------------------------------------------------------------
// Built-in fans
// ---------------------------------------------------------------------------

inline Fan projective_space(std::size_t n)
{
    std::vector<IntVec> rays;
    for (std::size_t i = 0; i < n; ++i) {
        IntVec e(n, 0);
        e[i] = 1;
        rays.push_back(e);
    }
    rays.push_back(IntVec(n, -1));
    return Fan(n, std::move(rays), subsets(n + 1, n));
}

inline Fan affine_space(std::size_t n)
{
    std::vector<IntVec> rays;
    RaySet all;
    for (std::size_t i = 0; i < n; ++i) {
        IntVec e(n, 0);
        e[i] = 1;
        rays.push_back(e);
        all.push_back(i);
    }
    return Fan(n, std::move(rays), {all});
}

inline Fan torus(std::size_t n) { return Fan(n, {}, {RaySet{}}); }

/// Rays e1, e2, -e1 + a e2, -e2.
inline Fan hirzebruch(long long a)
{
    std::vector<IntVec> rays{{1, 0}, {0, 1}, {-1, a}, {0, -1}};
    return Fan(2, std::move(rays), {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

inline Fan blowup_p2() { return star_subdivision(projective_space(2), {1, 1}); }

namespace detail {

inline std::string trim(std::string_view s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

// split "f(a,b(c,d))" -> head "f", args {"a", "b(c,d)"}
inline std::pair<std::string, std::vector<std::string>> split_call(const std::string& s)
{
    auto open = s.find('(');
    if (open == std::string::npos)
        return {trim(s), {}};
    if (s.back() != ')')
        throw FanError("malformed fan name '" + s + "'");
    std::string head = trim(s.substr(0, open));
    std::vector<std::string> args;
    int depth = 0;
    std::string cur;
    for (std::size_t i = open + 1; i + 1 < s.size(); ++i) {
        char ch = s[i];
        if (ch == '(')
            ++depth;
        if (ch == ')')
            --depth;
        if (ch == ',' && depth == 0) {
            args.push_back(trim(cur));
            cur.clear();
            continue;
        }
        cur += ch;
    }
    if (depth != 0)
        throw FanError("unbalanced parentheses in '" + s + "'");
    if (!trim(cur).empty() || !args.empty())
        args.push_back(trim(cur));
    return {head, args};
}

inline long long parse_int_arg(const std::string& s, const std::string& ctx)
{
    try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size())
            throw FanError("");
        return v;
    } catch (...) {
        throw FanError("expected an integer argument in '" + ctx + "'");
    }
}

}  // namespace detail

/// Built-in fans by name: projective_space(n), affine_space(n), torus(n),
/// hirzebruch(a), blowup_p2, p1, product(f,g).
inline Fan builtin(const std::string& name)
{
    auto [head, args] = detail::split_call(detail::trim(name));
    auto want = [&](std::size_t k) {
        if (args.size() != k)
            throw FanError("'" + head + "' expects " + std::to_string(k) + " argument(s)");
    };
    auto nonneg = [&](const std::string& s) {
        long long v = detail::parse_int_arg(s, name);
        if (v < 0)
            throw FanError("negative dimension in '" + name + "'");
        return static_cast<std::size_t>(v);
    };
    if (head == "projective_space") {
        want(1);
        return projective_space(nonneg(args[0]));
    }
    if (head == "affine_space") {
        want(1);
        return affine_space(nonneg(args[0]));
    }
    if (head == "torus") {
        want(1);
        return torus(nonneg(args[0]));
    }
    if (head == "hirzebruch") {
        want(1);
        return hirzebruch(detail::parse_int_arg(args[0], name));
    }
    if (head == "blowup_p2") {
        want(0);
        return blowup_p2();
    }
    if (head == "p1") {
        want(0);
        return projective_space(1);
    }
    if (head == "product") {
        want(2);
        return product(builtin(args[0]), builtin(args[1]));
    }
    throw FanError("unknown built-in fan '" + name + "'");
}

}  // namespace trophodge
