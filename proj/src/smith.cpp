#include "quiverk/smith.hpp"

#include <algorithm>
#include <cstdlib>

namespace quiverk {

namespace {

struct Work {
    std::int64_t m, n;
    std::vector<std::vector<mpz_class>> d, u, v;

    explicit Work(const IntMatrix& a)
        : m(a.rows()),
          n(a.cols()),
          d(static_cast<std::size_t>(m), std::vector<mpz_class>(static_cast<std::size_t>(n))),
          u(static_cast<std::size_t>(m), std::vector<mpz_class>(static_cast<std::size_t>(m))),
          v(static_cast<std::size_t>(n), std::vector<mpz_class>(static_cast<std::size_t>(n))) {
        for (std::int64_t i = 0; i < m; ++i)
            for (std::int64_t j = 0; j < n; ++j) d[i][j] = a.at(i, j);
        for (std::int64_t i = 0; i < m; ++i) u[i][i] = 1;
        for (std::int64_t j = 0; j < n; ++j) v[j][j] = 1;
    }

    void swap_rows(std::int64_t a, std::int64_t b) {
        if (a == b) return;
        std::swap(d[static_cast<std::size_t>(a)], d[static_cast<std::size_t>(b)]);
        std::swap(u[static_cast<std::size_t>(a)], u[static_cast<std::size_t>(b)]);
    }

    void swap_cols(std::int64_t a, std::int64_t b) {
        if (a == b) return;
        for (std::int64_t i = 0; i < m; ++i) std::swap(d[i][a], d[i][b]);
        for (std::int64_t i = 0; i < n; ++i) std::swap(v[i][a], v[i][b]);
    }

    // row[a] += f * row[b], mirrored into U.
    void add_row(std::int64_t a, std::int64_t b, const mpz_class& f) {
        for (std::int64_t j = 0; j < n; ++j) d[a][j] += f * d[b][j];
        for (std::int64_t j = 0; j < m; ++j) u[a][j] += f * u[b][j];
    }

    // col[a] += f * col[b], mirrored into V.
    void add_col(std::int64_t a, std::int64_t b, const mpz_class& f) {
        for (std::int64_t i = 0; i < m; ++i) d[i][a] += f * d[i][b];
        for (std::int64_t i = 0; i < n; ++i) v[i][a] += f * v[i][b];
    }

    void negate_row(std::int64_t a) {
        for (std::int64_t j = 0; j < n; ++j) d[a][j] = -d[a][j];
        for (std::int64_t j = 0; j < m; ++j) u[a][j] = -u[a][j];
    }

    // Smallest nonzero |entry| in the trailing block, ties by row-major
    // position. Returns false when the block is zero.
    bool find_pivot(std::int64_t t, std::int64_t& pi, std::int64_t& pj) const {
        bool found = false;
        mpz_class best;
        for (std::int64_t i = t; i < m; ++i) {
            for (std::int64_t j = t; j < n; ++j) {
                if (d[i][j] == 0) continue;
                mpz_class mag = abs(d[i][j]);
                if (!found || mag < best) {
                    found = true;
                    best = mag;
                    pi = i;
                    pj = j;
                }
            }
        }
        return found;
    }

    bool cross_cleared(std::int64_t t) const {
        for (std::int64_t i = t + 1; i < m; ++i)
            if (d[i][t] != 0) return false;
        for (std::int64_t j = t + 1; j < n; ++j)
            if (d[t][j] != 0) return false;
        return true;
    }
};

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a) {
    Work w(a);
    const std::int64_t steps = std::min(w.m, w.n);

    for (std::int64_t t = 0; t < steps; ++t) {
        std::int64_t pi = t, pj = t;
        if (!w.find_pivot(t, pi, pj)) break;
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        while (true) {
            // Clear the pivot cross with truncated quotients; remainders are
            // strictly smaller than the pivot, so re-pivoting terminates.
            while (!w.cross_cleared(t)) {
                for (std::int64_t i = t + 1; i < w.m; ++i) {
                    if (w.d[i][t] != 0) {
                        mpz_class q = w.d[i][t] / w.d[t][t];
                        if (q != 0) w.add_row(i, t, -q);
                    }
                }
                for (std::int64_t j = t + 1; j < w.n; ++j) {
                    if (w.d[t][j] != 0) {
                        mpz_class q = w.d[t][j] / w.d[t][t];
                        if (q != 0) w.add_col(j, t, -q);
                    }
                }
                if (w.cross_cleared(t)) break;
                if (!w.find_pivot(t, pi, pj)) break;
                w.swap_rows(t, pi);
                w.swap_cols(t, pj);
            }

            // Pivot must divide the whole trailing block for the chain.
            std::int64_t bi = -1, bj = -1;
            for (std::int64_t i = t + 1; i < w.m && bi < 0; ++i) {
                for (std::int64_t j = t + 1; j < w.n; ++j) {
                    if (w.d[i][j] % w.d[t][t] != 0) {
                        bi = i;
                        bj = j;
                        break;
                    }
                }
            }
            if (bi < 0) break;
            w.add_row(t, bi, 1);
        }
    }

    for (std::int64_t t = 0; t < steps; ++t)
        if (w.d[t][t] < 0) w.negate_row(t);

    SmithDecomposition out;
    out.d = IntMatrix(w.m, w.n);
    out.u = IntMatrix(w.m, w.m);
    out.v = IntMatrix(w.n, w.n);
    for (std::int64_t i = 0; i < w.m; ++i)
        for (std::int64_t j = 0; j < w.n; ++j) out.d.at(i, j) = w.d[i][j];
    for (std::int64_t i = 0; i < w.m; ++i)
        for (std::int64_t j = 0; j < w.m; ++j) out.u.at(i, j) = w.u[i][j];
    for (std::int64_t i = 0; i < w.n; ++i)
        for (std::int64_t j = 0; j < w.n; ++j) out.v.at(i, j) = w.v[i][j];
    return out;
}

std::int64_t rank(const IntMatrix& a) {
    const SmithDecomposition s = smith_normal_form(a);
    std::int64_t r = 0;
    const std::int64_t steps = std::min(a.rows(), a.cols());
    for (std::int64_t t = 0; t < steps; ++t)
        if (s.d.at(t, t) != 0) ++r;
    return r;
}

std::int64_t kernel_rank(const IntMatrix& a) { return a.cols() - rank(a); }

AbelianGroup cokernel(const IntMatrix& a) {
    const SmithDecomposition s = smith_normal_form(a);
    std::vector<mpz_class> factors;
    const std::int64_t steps = std::min(a.rows(), a.cols());
    std::int64_t r = 0;
    for (std::int64_t t = 0; t < steps; ++t) {
        if (s.d.at(t, t) != 0) {
            ++r;
            if (s.d.at(t, t) >= 2) factors.push_back(s.d.at(t, t));
        }
    }
    for (std::int64_t i = 0; i < a.rows() - r; ++i) factors.emplace_back(0);
    return from_cyclic_factors(factors);
}

}  // namespace quiverk
