#pragma once

#include <random>
#include <vector>

#include "quiverk/int_matrix.hpp"

namespace testutil {

inline quiverk::IntMatrix random_matrix(std::mt19937_64& rng, std::int64_t rows,
                                        std::int64_t cols, long lo, long hi) {
    std::uniform_int_distribution<long> dist(lo, hi);
    quiverk::IntMatrix m(rows, cols);
    for (std::int64_t i = 0; i < rows; ++i)
        for (std::int64_t j = 0; j < cols; ++j) m.at(i, j) = dist(rng);
    return m;
}

inline quiverk::IntMatrix random_nonsingular(std::mt19937_64& rng, std::int64_t n, long lo,
                                             long hi) {
    while (true) {
        quiverk::IntMatrix m = random_matrix(rng, n, n, lo, hi);
        if (quiverk::det(m) != 0) return m;
    }
}

// Product of random elementary row operations; unimodular by construction.
inline quiverk::IntMatrix random_unimodular(std::mt19937_64& rng, std::int64_t n, int ops = 12) {
    using quiverk::IntMatrix;
    IntMatrix m = IntMatrix::identity(n);
    std::uniform_int_distribution<std::int64_t> row(0, n - 1);
    std::uniform_int_distribution<long> coef(-3, 3);
    std::uniform_int_distribution<int> kind(0, 2);
    for (int t = 0; t < ops; ++t) {
        const std::int64_t i = row(rng);
        std::int64_t j = row(rng);
        switch (kind(rng)) {
            case 0: {  // add multiple of another row
                if (n < 2) break;
                while (j == i) j = row(rng);
                const long c = coef(rng);
                for (std::int64_t t2 = 0; t2 < n; ++t2) m.at(i, t2) += c * m.at(j, t2);
                break;
            }
            case 1: {  // swap
                if (n < 2) break;
                while (j == i) j = row(rng);
                for (std::int64_t t2 = 0; t2 < n; ++t2) std::swap(m.at(i, t2), m.at(j, t2));
                break;
            }
            default: {  // negate
                for (std::int64_t t2 = 0; t2 < n; ++t2) m.at(i, t2) = -m.at(i, t2);
                break;
            }
        }
    }
    return m;
}

inline quiverk::IntMatrix from_rows(const std::vector<std::vector<long>>& rows) {
    const auto r = static_cast<std::int64_t>(rows.size());
    const auto c = r == 0 ? 0 : static_cast<std::int64_t>(rows[0].size());
    quiverk::IntMatrix m(r, c);
    for (std::int64_t i = 0; i < r; ++i)
        for (std::int64_t j = 0; j < c; ++j)
            m.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return m;
}

inline quiverk::IntMatrix diag(const std::vector<long>& entries) {
    std::vector<mpz_class> e;
    e.reserve(entries.size());
    for (long x : entries) e.emplace_back(x);
    return quiverk::IntMatrix::diagonal(e);
}

}  // namespace testutil
