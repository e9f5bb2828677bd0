#ifndef TILECOH_TEST_UTIL_HPP
#define TILECOH_TEST_UTIL_HPP

#include <random>

#include "tilecoh/int_matrix.hpp"

namespace tilecoh::test {

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, long lo,
                               long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
    return m;
}

/// Product of random elementary row operations: always unimodular.
inline IntMatrix random_unimodular(std::mt19937& rng, std::size_t n, std::size_t ops = 12) {
    IntMatrix u = IntMatrix::identity(n);
    if (n < 2) return u;
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::uniform_int_distribution<long> c(-2, 2);
    std::uniform_int_distribution<int> kind(0, 2);
    for (std::size_t t = 0; t < ops; ++t) {
        std::size_t a = idx(rng), b = idx(rng);
        switch (kind(rng)) {
            case 0:
                if (a != b) u.add_row(a, b, Int(c(rng)));
                break;
            case 1:
                u.swap_rows(a, b);
                break;
            default:
                u.negate_row(a);
        }
    }
    return u;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Int det(IntMatrix m) {
    if (!m.is_square()) throw std::invalid_argument("det: not square");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

}  // namespace tilecoh::test

#endif
