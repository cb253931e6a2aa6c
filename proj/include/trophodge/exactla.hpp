// Exact linear algebra over Q and Z.
//
// Every cohomology dimension computed by the library is a rank over Q produced
// here. Nothing in this header touches floating point.
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace trophodge {

using Rational = mpq_class;
using Integer = mpz_class;
using IntVec = std::vector<long long>;
using QVec = std::vector<Rational>;

class LinearAlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline QVec to_qvec(const IntVec& v)
{
    QVec out;
    out.reserve(v.size());
    for (long long x : v)
        out.emplace_back(static_cast<long>(x));
    return out;
}

inline bool is_zero(const QVec& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

inline Rational dot(const QVec& a, const QVec& b)
{
    if (a.size() != b.size())
        throw LinearAlgebraError("dot: length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0)
            s += a[i] * b[i];
    return s;
}

/// Dense row-major matrix of rationals.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    QMatrix(std::initializer_list<std::initializer_list<long>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_)
                throw LinearAlgebraError("QMatrix: ragged initializer");
            for (long x : r)
                data_.emplace_back(x);
        }
    }

    static QMatrix identity(std::size_t n)
    {
        QMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    static QMatrix from_rows(const std::vector<QVec>& rows, std::size_t cols)
    {
        QMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols)
                throw LinearAlgebraError("QMatrix::from_rows: row length mismatch");
            for (std::size_t j = 0; j < cols; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }

    static QMatrix from_columns(const std::vector<QVec>& cols, std::size_t rows)
    {
        QMatrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows)
                throw LinearAlgebraError("QMatrix::from_columns: column length mismatch");
            for (std::size_t i = 0; i < rows; ++i)
                m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    QVec row(std::size_t i) const
    {
        return QVec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                    data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    QVec column(std::size_t j) const
    {
        QVec c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }

    QMatrix transpose() const
    {
        QMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const
    {
        return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return sgn(x) == 0; });
    }

    void set_block(std::size_t r0, std::size_t c0, const QMatrix& b)
    {
        if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
            throw LinearAlgebraError("set_block: block out of range");
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                (*this)(r0 + i, c0 + j) = b(i, j);
    }

    QMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
    {
        if (r0 + nr > rows_ || c0 + nc > cols_)
            throw LinearAlgebraError("block: out of range");
        QMatrix b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j)
                b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    friend bool operator==(const QMatrix& a, const QMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    QMatrix& operator*=(const Rational& s)
    {
        for (auto& x : data_)
            x *= s;
        return *this;
    }

    friend QMatrix operator+(QMatrix a, const QMatrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw LinearAlgebraError("matrix sum: shape mismatch");
        for (std::size_t k = 0; k < a.data_.size(); ++k)
            a.data_[k] += b.data_[k];
        return a;
    }

    friend QMatrix operator-(QMatrix a, const QMatrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw LinearAlgebraError("matrix difference: shape mismatch");
        for (std::size_t k = 0; k < a.data_.size(); ++k)
            a.data_[k] -= b.data_[k];
        return a;
    }

    friend QMatrix operator*(const QMatrix& a, const QMatrix& b)
    {
        if (a.cols_ != b.rows_)
            throw LinearAlgebraError("matrix product: shape mismatch");
        QMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rational& aik = a(i, k);
                if (sgn(aik) == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (sgn(b(k, j)) != 0)
                        c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend QVec operator*(const QMatrix& a, const QVec& x)
    {
        if (a.cols_ != x.size())
            throw LinearAlgebraError("matrix-vector product: shape mismatch");
        QVec y(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j)
                if (sgn(a(i, j)) != 0 && sgn(x[j]) != 0)
                    y[i] += a(i, j) * x[j];
        return y;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

inline QMatrix hstack(const QMatrix& a, const QMatrix& b)
{
    if (a.rows() != b.rows())
        throw LinearAlgebraError("hstack: row mismatch");
    QMatrix m(a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

inline QMatrix vstack(const QMatrix& a, const QMatrix& b)
{
    if (a.cols() != b.cols())
        throw LinearAlgebraError("vstack: column mismatch");
    QMatrix m(a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

struct RowEchelon {
    QMatrix reduced;                  // rank rows, reduced row echelon form
    std::vector<std::size_t> pivots;  // pivot column of each row
};

/// Reduced row echelon form by Gauss-Jordan elimination. The pivot in each
/// column is the first nonzero entry at or below the current row. Zero entries
/// are skipped, which keeps the sparse cochain matrices cheap.
inline RowEchelon rref(QMatrix m)
{
    const std::size_t nr = m.rows();
    const std::size_t nc = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    std::vector<std::size_t> support;
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
        std::size_t piv = nr;
        for (std::size_t i = r; i < nr; ++i)
            if (sgn(m(i, c)) != 0) {
                piv = i;
                break;
            }
        if (piv == nr)
            continue;
        if (piv != r)
            for (std::size_t j = c; j < nc; ++j)
                std::swap(m(piv, j), m(r, j));
        const Rational inv = 1 / m(r, c);
        support.clear();
        for (std::size_t j = c; j < nc; ++j)
            if (sgn(m(r, j)) != 0) {
                m(r, j) *= inv;
                support.push_back(j);
            }
        for (std::size_t i = 0; i < nr; ++i) {
            if (i == r || sgn(m(i, c)) == 0)
                continue;
            const Rational f = m(i, c);
            for (std::size_t j : support)
                m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {m.block(0, 0, r, nc), std::move(pivots)};
}

inline std::size_t rank(const QMatrix& m)
{
    if (m.rows() > m.cols())
        return rref(m.transpose()).pivots.size();
    return rref(m).pivots.size();
}

inline Rational determinant(QMatrix m)
{
    if (m.rows() != m.cols())
        throw LinearAlgebraError("determinant: matrix not square");
    const std::size_t n = m.rows();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = n;
        for (std::size_t i = c; i < n; ++i)
            if (sgn(m(i, c)) != 0) {
                piv = i;
                break;
            }
        if (piv == n)
            return 0;
        if (piv != c) {
            for (std::size_t j = c; j < n; ++j)
                std::swap(m(piv, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (sgn(m(i, c)) == 0)
                continue;
            const Rational f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j)
                m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

inline QMatrix inverse(const QMatrix& m)
{
    if (m.rows() != m.cols())
        throw LinearAlgebraError("inverse: matrix not square");
    const std::size_t n = m.rows();
    auto e = rref(hstack(m, QMatrix::identity(n)));
    if (e.pivots.size() < n || e.pivots[n - 1] >= n)
        throw LinearAlgebraError("inverse: matrix is singular");
    return e.reduced.block(0, n, n, n);
}

/// A linear subspace of Q^ambient, stored by the reduced row echelon form of a
/// basis. Equal subspaces therefore have identical bases.
class QSubspace {
public:
    QSubspace() = default;

    static QSubspace zero(std::size_t ambient) { return QSubspace(ambient, QMatrix(0, ambient), {}); }

    static QSubspace full(std::size_t ambient)
    {
        std::vector<std::size_t> piv(ambient);
        std::iota(piv.begin(), piv.end(), 0);
        return QSubspace(ambient, QMatrix::identity(ambient), std::move(piv));
    }

    /// Span of the rows of m.
    static QSubspace row_space(const QMatrix& m)
    {
        auto e = rref(m);
        return QSubspace(m.cols(), std::move(e.reduced), std::move(e.pivots));
    }

    static QSubspace span(std::size_t ambient, const std::vector<QVec>& vectors)
    {
        return row_space(QMatrix::from_rows(vectors, ambient));
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const QMatrix& basis() const { return basis_; }
    QVec vector(std::size_t i) const { return basis_.row(i); }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// Coordinates of v in the echelon basis. Throws if v is not in the subspace.
    QVec coordinates(const QVec& v) const
    {
        if (v.size() != ambient_)
            throw LinearAlgebraError("coordinates: ambient mismatch");
        QVec coords(dim());
        QVec rest = v;
        for (std::size_t i = 0; i < dim(); ++i) {
            coords[i] = rest[pivots_[i]];
            if (sgn(coords[i]) == 0)
                continue;
            for (std::size_t j = 0; j < ambient_; ++j)
                if (sgn(basis_(i, j)) != 0)
                    rest[j] -= coords[i] * basis_(i, j);
        }
        if (!trophodge::is_zero(rest))
            throw LinearAlgebraError("coordinates: vector not in subspace");
        return coords;
    }

    /// v minus its echelon reduction against the basis; zero iff v lies in the subspace.
    QVec reduce(const QVec& v) const
    {
        QVec rest = v;
        for (std::size_t i = 0; i < dim(); ++i) {
            const Rational c = rest[pivots_[i]];
            if (sgn(c) == 0)
                continue;
            for (std::size_t j = 0; j < ambient_; ++j)
                if (sgn(basis_(i, j)) != 0)
                    rest[j] -= c * basis_(i, j);
        }
        return rest;
    }

    bool contains(const QVec& v) const
    {
        if (v.size() != ambient_)
            throw LinearAlgebraError("contains: ambient mismatch");
        return trophodge::is_zero(reduce(v));
    }

    bool contains(const QSubspace& w) const
    {
        if (w.ambient_ != ambient_)
            return false;
        for (std::size_t i = 0; i < w.dim(); ++i)
            if (!contains(w.vector(i)))
                return false;
        return true;
    }

    QSubspace operator+(const QSubspace& other) const
    {
        if (other.ambient_ != ambient_)
            throw LinearAlgebraError("subspace sum: ambient mismatch");
        return row_space(vstack(basis_, other.basis_));
    }

    friend bool operator==(const QSubspace& a, const QSubspace& b)
    {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

private:
    QSubspace(std::size_t ambient, QMatrix basis, std::vector<std::size_t> pivots)
        : ambient_(ambient), basis_(std::move(basis)), pivots_(std::move(pivots))
    {
    }

    std::size_t ambient_ = 0;
    QMatrix basis_;
    std::vector<std::size_t> pivots_;
};

/// {x : m x = 0}
inline QSubspace kernel_basis(const QMatrix& m)
{
    auto e = rref(m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto c : e.pivots)
        is_pivot[c] = true;
    std::vector<QVec> vecs;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free])
            continue;
        QVec v(n);
        v[free] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            v[e.pivots[i]] = -e.reduced(i, free);
        vecs.push_back(std::move(v));
    }
    return QSubspace::span(n, vecs);
}

inline QSubspace column_space(const QMatrix& m) { return QSubspace::row_space(m.transpose()); }

/// dim V - dim W for W contained in V.
inline std::size_t quotient_dim(const QSubspace& v, const QSubspace& w)
{
    if (!v.contains(w))
        throw LinearAlgebraError("quotient_dim: W is not a subspace of V");
    return v.dim() - w.dim();
}

inline QSubspace intersect(const QSubspace& a, const QSubspace& b)
{
    if (a.ambient_dim() != b.ambient_dim())
        throw LinearAlgebraError("intersect: ambient mismatch");
    // x = A^T s = B^T t  <=>  [A^T | -B^T] (s,t) = 0
    QMatrix bt = b.basis().transpose();
    bt *= Rational(-1);
    auto k = kernel_basis(hstack(a.basis().transpose(), bt));
    std::vector<QVec> vecs;
    for (std::size_t i = 0; i < k.dim(); ++i) {
        QVec s(k.vector(i).begin(), k.vector(i).begin() + static_cast<std::ptrdiff_t>(a.dim()));
        vecs.push_back(a.basis().transpose() * s);
    }
    return QSubspace::span(a.ambient_dim(), vecs);
}

// ---------------------------------------------------------------------------
// Integer matrices
// ---------------------------------------------------------------------------

class ZMatrix {
public:
    ZMatrix() = default;
    ZMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    ZMatrix(std::initializer_list<std::initializer_list<long>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        for (const auto& r : rows) {
            if (r.size() != cols_)
                throw LinearAlgebraError("ZMatrix: ragged initializer");
            for (long x : r)
                data_.emplace_back(x);
        }
    }

    static ZMatrix identity(std::size_t n)
    {
        ZMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    /// Matrix whose columns are the given integer vectors.
    static ZMatrix from_columns(const std::vector<IntVec>& cols, std::size_t rows)
    {
        ZMatrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows)
                throw LinearAlgebraError("ZMatrix::from_columns: length mismatch");
            for (std::size_t i = 0; i < rows; ++i)
                m(i, j) = static_cast<long>(cols[j][i]);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    friend bool operator==(const ZMatrix& a, const ZMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend ZMatrix operator*(const ZMatrix& a, const ZMatrix& b)
    {
        if (a.cols_ != b.rows_)
            throw LinearAlgebraError("ZMatrix product: shape mismatch");
        ZMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k)
                if (sgn(a(i, k)) != 0)
                    for (std::size_t j = 0; j < b.cols_; ++j)
                        c(i, j) += a(i, k) * b(k, j);
        return c;
    }

    QMatrix to_rational() const
    {
        QMatrix q(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                q(i, j) = Rational((*this)(i, j));
        return q;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            std::swap((*this)(i, a), (*this)(i, b));
    }
    // row a += f * row b
    void add_row(std::size_t a, std::size_t b, const Integer& f)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(a, j) += f * (*this)(b, j);
    }
    void add_col(std::size_t a, std::size_t b, const Integer& f)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, a) += f * (*this)(i, b);
    }
    void negate_row(std::size_t a)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(a, j) = -(*this)(a, j);
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

inline Integer determinant(const ZMatrix& m)
{
    Rational d = determinant(m.to_rational());
    return d.get_num();
}

struct SmithForm {
    ZMatrix U;  // unimodular, rows x rows
    ZMatrix D;  // diagonal, d_i | d_{i+1}, nonnegative
    ZMatrix V;  // unimodular, cols x cols
};

/// U * m * V = D with D in Smith normal form.
inline SmithForm smith_normal_form(const ZMatrix& m)
{
    const std::size_t nr = m.rows();
    const std::size_t nc = m.cols();
    ZMatrix d = m;
    ZMatrix u = ZMatrix::identity(nr);
    ZMatrix v = ZMatrix::identity(nc);
    const std::size_t steps = std::min(nr, nc);

    for (std::size_t t = 0; t < steps; ++t) {
        while (true) {
            // smallest nonzero entry of the trailing block becomes the pivot
            std::size_t pi = nr, pj = nc;
            for (std::size_t i = t; i < nr; ++i)
                for (std::size_t j = t; j < nc; ++j)
                    if (sgn(d(i, j)) != 0 && (pi == nr || abs(d(i, j)) < abs(d(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == nr)
                break;
            if (pi != t) {
                d.swap_rows(pi, t);
                u.swap_rows(pi, t);
            }
            if (pj != t) {
                d.swap_cols(pj, t);
                v.swap_cols(pj, t);
            }
            bool clean = true;
            for (std::size_t i = t + 1; i < nr; ++i) {
                if (sgn(d(i, t)) == 0)
                    continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
                d.add_row(i, t, -q);
                u.add_row(i, t, -q);
                if (sgn(d(i, t)) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < nc; ++j) {
                if (sgn(d(t, j)) == 0)
                    continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
                d.add_col(j, t, -q);
                v.add_col(j, t, -q);
                if (sgn(d(t, j)) != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            // divisibility: fold an offending row into row t and retry
            bool divides = true;
            for (std::size_t i = t + 1; i < nr && divides; ++i)
                for (std::size_t j = t + 1; j < nc; ++j)
                    if (sgn(d(i, j)) != 0 && !mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
                        d.add_row(t, i, 1);
                        u.add_row(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        if (t < nr && sgn(d(t, t)) < 0) {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    return {std::move(u), std::move(d), std::move(v)};
}

inline std::vector<Integer> elementary_divisors(const ZMatrix& m)
{
    auto s = smith_normal_form(m);
    std::vector<Integer> out;
    for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
        if (sgn(s.D(i, i)) != 0)
            out.push_back(s.D(i, i));
    return out;
}

/// Row-style Hermite normal form of the lattice spanned by the given vectors:
/// echelon rows with positive pivots and entries above each pivot reduced
/// into [0, pivot). Zero rows are dropped.
inline std::vector<IntVec> hermite_rows(const std::vector<IntVec>& gens, std::size_t n)
{
    std::vector<std::vector<Integer>> rows;
    for (const auto& g : gens) {
        if (g.size() != n)
            throw LinearAlgebraError("hermite_rows: length mismatch");
        std::vector<Integer> r;
        for (long long x : g)
            r.emplace_back(static_cast<long>(x));
        rows.push_back(std::move(r));
    }
    std::size_t r = 0;
    std::vector<std::size_t> pivcols;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i)
                if (sgn(rows[i][c]) != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c])))
                    best = i;
            if (best == rows.size())
                break;
            std::swap(rows[best], rows[r]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (sgn(rows[i][c]) == 0)
                    continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
                for (std::size_t j = 0; j < n; ++j)
                    rows[i][j] -= q * rows[r][j];
                if (sgn(rows[i][c]) != 0)
                    done = false;
            }
            if (done)
                break;
        }
        if (r < rows.size() && sgn(rows[r][c]) != 0) {
            if (sgn(rows[r][c]) < 0)
                for (auto& x : rows[r])
                    x = -x;
            for (std::size_t i = 0; i < r; ++i) {
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
                if (sgn(q) != 0)
                    for (std::size_t j = 0; j < n; ++j)
                        rows[i][j] -= q * rows[r][j];
            }
            pivcols.push_back(c);
            ++r;
        }
    }
    std::vector<IntVec> out;
    for (std::size_t i = 0; i < r; ++i) {
        IntVec v;
        for (const auto& x : rows[i]) {
            if (!x.fits_slong_p())
                throw LinearAlgebraError("hermite_rows: entry overflow");
            v.push_back(x.get_si());
        }
        out.push_back(std::move(v));
    }
    return out;
}

inline long long gcd_of(const IntVec& v)
{
    long long g = 0;
    for (long long x : v)
        g = std::gcd(g, x < 0 ? -x : x);
    return g;
}

/// Divide by the gcd of the entries. The zero vector is returned unchanged.
inline IntVec primitive(IntVec v)
{
    long long g = gcd_of(v);
    if (g > 1)
        for (auto& x : v)
            x /= g;
    return v;
}

/// Scale a rational vector to the primitive integer vector on the same ray.
inline IntVec primitive(const QVec& v)
{
    Integer l = 1;
    for (const auto& x : v)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Integer> ints;
    Integer g = 0;
    for (const auto& x : v) {
        Integer y = x.get_num() * (l / x.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), y.get_mpz_t());
        ints.push_back(y);
    }
    IntVec out;
    for (auto& y : ints) {
        if (sgn(g) != 0)
            y /= g;
        if (!y.fits_slong_p())
            throw LinearAlgebraError("primitive: entry overflow");
        out.push_back(y.get_si());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exterior powers. The basis of the p-th exterior power of Q^n is indexed by
// p-subsets of {0..n-1} in lexicographic order.
// ---------------------------------------------------------------------------

inline std::size_t binomial(std::size_t n, std::size_t k)
{
    if (k > n)
        return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t p)
{
    std::vector<std::vector<std::size_t>> out;
    if (p > n)
        return out;
    std::vector<std::size_t> cur(p);
    std::iota(cur.begin(), cur.end(), 0);
    while (true) {
        out.push_back(cur);
        std::size_t i = p;
        while (i > 0 && cur[i - 1] == n - p + i - 1)
            --i;
        if (i == 0)
            break;
        ++cur[i - 1];
        for (std::size_t j = i; j < p; ++j)
            cur[j] = cur[j - 1] + 1;
    }
    return out;
}

/// Position of a sorted subset in the lexicographic order of p-subsets of {0..n-1}.
inline std::size_t subset_index(const std::vector<std::size_t>& s, std::size_t n)
{
    const std::size_t p = s.size();
    std::size_t idx = 0;
    std::size_t prev = 0;
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t v = (i == 0 ? 0 : prev + 1); v < s[i]; ++v)
            idx += binomial(n - v - 1, p - i - 1);
        prev = s[i];
    }
    return idx;
}

/// Matrix of the p-th exterior power of the linear map a: entries are the
/// p x p minors, rows indexed by p-subsets of rows, columns by p-subsets of columns.
inline QMatrix wedge_map(const QMatrix& a, std::size_t p)
{
    auto rs = subsets(a.rows(), p);
    auto cs = subsets(a.cols(), p);
    QMatrix w(rs.size(), cs.size());
    QMatrix minor(p, p);
    for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = 0; j < cs.size(); ++j) {
            for (std::size_t x = 0; x < p; ++x)
                for (std::size_t y = 0; y < p; ++y)
                    minor(x, y) = a(rs[i][x], cs[j][y]);
            w(i, j) = determinant(minor);
        }
    return w;
}

/// v_1 ^ ... ^ v_p in lexicographic coordinates.
inline QVec wedge(const std::vector<QVec>& vs, std::size_t n)
{
    return wedge_map(QMatrix::from_columns(vs, n), vs.size()).column(0);
}

inline QVec wedge(const std::vector<IntVec>& vs, std::size_t n)
{
    std::vector<QVec> q;
    for (const auto& v : vs)
        q.push_back(to_qvec(v));
    if (q.empty())
        return QVec{Rational(1)};
    return wedge(q, n);
}

/// Basis of the p-th exterior power of V inside the p-th exterior power of the ambient space.
inline QSubspace wedge_power(const QSubspace& v, std::size_t p)
{
    const std::size_t n = v.ambient_dim();
    const std::size_t ambient = binomial(n, p);
    if (p == 0)
        return QSubspace::full(1);
    std::vector<QVec> vecs;
    for (const auto& s : subsets(v.dim(), p)) {
        std::vector<QVec> factors;
        for (auto i : s)
            factors.push_back(v.vector(i));
        vecs.push_back(wedge(factors, n));
    }
    return QSubspace::span(ambient, vecs);
}

/// Interior product with a vector x of the dual space:
/// maps the p-th exterior power of Q^n to the (p-1)-th.
/// e_{i_1} ^ ... ^ e_{i_p}  |->  sum_k (-1)^k x_{i_k} e_{i_1} ^ .. (omit i_k) .. ^ e_{i_p}
inline QMatrix contraction(const QVec& x, std::size_t p)
{
    const std::size_t n = x.size();
    if (p == 0)
        return QMatrix(0, 1);
    auto src = subsets(n, p);
    QMatrix c(binomial(n, p - 1), src.size());
    for (std::size_t j = 0; j < src.size(); ++j)
        for (std::size_t k = 0; k < p; ++k) {
            const Rational& xk = x[src[j][k]];
            if (sgn(xk) == 0)
                continue;
            std::vector<std::size_t> rest;
            for (std::size_t t = 0; t < p; ++t)
                if (t != k)
                    rest.push_back(src[j][t]);
            const std::size_t i = subset_index(rest, n);
            if (k % 2 == 0)
                c(i, j) += xk;
            else
                c(i, j) -= xk;
        }
    return c;
}

/// Sign of the permutation taking `from` to `to` (both lists of distinct keys).
template <typename T>
int permutation_sign(const std::vector<T>& from, const std::vector<T>& to)
{
    if (from.size() != to.size())
        throw LinearAlgebraError("permutation_sign: size mismatch");
    std::vector<std::size_t> perm(from.size());
    for (std::size_t i = 0; i < from.size(); ++i) {
        auto it = std::find(to.begin(), to.end(), from[i]);
        if (it == to.end())
            throw LinearAlgebraError("permutation_sign: not a permutation");
        perm[i] = static_cast<std::size_t>(it - to.begin());
    }
    int sign = 1;
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i])
            continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = true;
            ++len;
        }
        if (len % 2 == 0)
            sign = -sign;
    }
    return sign;
}

inline std::string to_string(const Rational& q)
{
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

inline Rational parse_rational(const std::string& s)
{
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw LinearAlgebraError("not a rational number: '" + s + "'");
    if (sgn(q.get_den()) == 0)
        throw LinearAlgebraError("zero denominator: '" + s + "'");
    q.canonicalize();
    return q;
}

}  // namespace trophodge
