// Exact feasibility of { x >= 0 : A x = b } by phase-one simplex with Bland's rule.
// Used for cone membership, pointedness and relative-interior intersection tests.
#pragma once

#include "trophodge/exactla.hpp"

namespace trophodge {

inline bool nonnegative_solution_exists(const QMatrix& a, const QVec& b)
{
    const std::size_t m = a.rows();
    const std::size_t k = a.cols();
    if (b.size() != m)
        throw LinearAlgebraError("nonnegative_solution_exists: shape mismatch");
    if (m == 0)
        return true;

    // tableau [A | I | b] with one objective row below
    const std::size_t width = k + m + 1;
    QMatrix t(m + 1, width);
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = sgn(b[i]) < 0;
        for (std::size_t j = 0; j < k; ++j)
            t(i, j) = flip ? Rational(-a(i, j)) : a(i, j);
        t(i, k + i) = 1;
        t(i, width - 1) = flip ? Rational(-b[i]) : b[i];
    }
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < m; ++i)
            t(m, j) -= t(i, j);
    for (std::size_t i = 0; i < m; ++i)
        t(m, width - 1) -= t(i, width - 1);

    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i)
        basis[i] = k + i;

    while (true) {
        std::size_t enter = width;
        for (std::size_t j = 0; j + 1 < width; ++j)
            if (sgn(t(m, j)) < 0) {
                enter = j;
                break;
            }
        if (enter == width)
            break;
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (sgn(t(i, enter)) <= 0)
                continue;
            Rational ratio = t(i, width - 1) / t(i, enter);
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m)
            break;  // unbounded direction; cannot happen for the bounded phase-one objective
        const Rational inv = 1 / t(leave, enter);
        for (std::size_t j = 0; j < width; ++j)
            t(leave, j) *= inv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave || sgn(t(i, enter)) == 0)
                continue;
            const Rational f = t(i, enter);
            for (std::size_t j = 0; j < width; ++j)
                if (sgn(t(leave, j)) != 0)
                    t(i, j) -= f * t(leave, j);
        }
        basis[leave] = enter;
    }
    return sgn(t(m, width - 1)) == 0;
}

}  // namespace trophodge
