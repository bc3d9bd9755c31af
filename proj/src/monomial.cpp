#include "quiverk/monomial.hpp"

#include <algorithm>
#include <string>

namespace quiverk {

// Entry formula, derived once and checked by the unit tests against the
// multiplicativity and diagonal identities.
//
// The module carries the basis u_nu(x, y) = y^nu, nu ranging over the box
// 0 <= nu_j <= a_j - 1, and the pairing
//   <xi, eta>(x) = (1/N) sum_{ sigma_F(y) = sigma_G(x) } conj(xi(x,y)) eta(x,y),
// N = prod a_j. The matrix of left multiplication by a = z^m has entries
//   <u_nu, z^m u_mu>(x) = (1/N) sum_y y^(m + mu - nu).
// The solution set { y : sigma_F(y) = sigma_G(x) } is a coset y0 * ker sigma_F
// and ker sigma_F = { e^(2 pi i F^{-1} c) : c in Z^d / F Z^d }, of order N.
// Summing the character w -> w^s over that kernel gives N when F^{-T} s is
// integral (for diagonal F: a_j | s_j) and 0 otherwise. When s = F t the
// coset representative contributes y0^(F t) = sigma_F(y0)^t = sigma_G(x)^t
// = x^(G^T t), independent of the choice of y0. Hence with s = m + mu - nu:
//   entry (nu, mu) = [ a_j | s_j for all j ] * x^(G^T (s / a)).

MonomialMatrix::MonomialMatrix(std::int64_t n, int d)
    : n_(n), d_(d), e_(static_cast<std::size_t>(n * n)) {
    if (n < 0 || d < 0) throw DimensionError("MonomialMatrix: bad dimensions");
}

MonomialMatrix MonomialMatrix::identity(std::int64_t n, int d) {
    MonomialMatrix m(n, d);
    for (std::int64_t i = 0; i < n; ++i)
        m.set(i, i, Monomial{1, std::vector<std::int64_t>(static_cast<std::size_t>(d), 0)});
    return m;
}

const Monomial& MonomialMatrix::at(std::int64_t i, std::int64_t j) const {
    if (i < 0 || i >= n_ || j < 0 || j >= n_)
        throw DimensionError("MonomialMatrix: index out of range");
    return e_[static_cast<std::size_t>(i * n_ + j)];
}

void MonomialMatrix::set(std::int64_t i, std::int64_t j, Monomial m) {
    if (i < 0 || i >= n_ || j < 0 || j >= n_)
        throw DimensionError("MonomialMatrix: index out of range");
    if (m.sign != 0 && static_cast<int>(m.exponent.size()) != d_)
        throw DimensionError("MonomialMatrix: exponent length mismatch");
    e_[static_cast<std::size_t>(i * n_ + j)] = std::move(m);
}

bool MonomialMatrix::is_generalized_permutation() const {
    std::vector<int> row_count(static_cast<std::size_t>(n_), 0);
    std::vector<int> col_count(static_cast<std::size_t>(n_), 0);
    for (std::int64_t i = 0; i < n_; ++i) {
        for (std::int64_t j = 0; j < n_; ++j) {
            const Monomial& m = at(i, j);
            if (m.sign == 0) continue;
            if (m.sign != 1 && m.sign != -1) return false;
            ++row_count[static_cast<std::size_t>(i)];
            ++col_count[static_cast<std::size_t>(j)];
        }
    }
    for (std::int64_t i = 0; i < n_; ++i)
        if (row_count[static_cast<std::size_t>(i)] != 1 || col_count[static_cast<std::size_t>(i)] != 1)
            return false;
    return true;
}

std::vector<std::vector<std::int64_t>> multi_index_range(const std::vector<std::int64_t>& a) {
    for (std::int64_t x : a)
        if (x < 1) throw DimensionError("multi_index_range: radices must be >= 1");
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> cur(a.size(), 0);
    while (true) {
        out.push_back(cur);
        std::size_t i = a.size();
        while (i > 0) {
            --i;
            if (cur[i] + 1 < a[i]) {
                ++cur[i];
                std::fill(cur.begin() + static_cast<std::ptrdiff_t>(i) + 1, cur.end(), 0);
                break;
            }
            if (i == 0) return out;
        }
        if (a.empty()) return out;
    }
}

MonomialMatrix omega_monomial(const IntMatrix& f, const IntMatrix& g,
                              const std::vector<std::int64_t>& m) {
    if (!f.is_positive_diagonal())
        throw DimensionError("omega_monomial: F must be diagonal with positive entries");
    const int d = static_cast<int>(f.rows());
    if (g.rows() != d || g.cols() != d) throw DimensionError("omega_monomial: G must be d x d");
    if (static_cast<int>(m.size()) != d) throw DimensionError("omega_monomial: m must have length d");

    std::vector<std::int64_t> a(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        const mpz_class& aj = f.at(j, j);
        if (!aj.fits_slong_p()) throw CapacityError("omega_monomial: diagonal entry too large");
        a[static_cast<std::size_t>(j)] = aj.get_si();
    }

    const auto indices = multi_index_range(a);
    const auto n = static_cast<std::int64_t>(indices.size());
    MonomialMatrix out(n, d);

    std::vector<std::int64_t> s(static_cast<std::size_t>(d));
    std::vector<std::int64_t> t(static_cast<std::size_t>(d));
    for (std::int64_t row = 0; row < n; ++row) {
        const auto& nu = indices[static_cast<std::size_t>(row)];
        for (std::int64_t col = 0; col < n; ++col) {
            const auto& mu = indices[static_cast<std::size_t>(col)];
            bool divisible = true;
            for (int j = 0; j < d; ++j) {
                s[static_cast<std::size_t>(j)] =
                    m[static_cast<std::size_t>(j)] + mu[static_cast<std::size_t>(j)] -
                    nu[static_cast<std::size_t>(j)];
                if (s[static_cast<std::size_t>(j)] % a[static_cast<std::size_t>(j)] != 0) {
                    divisible = false;
                    break;
                }
                t[static_cast<std::size_t>(j)] =
                    s[static_cast<std::size_t>(j)] / a[static_cast<std::size_t>(j)];
            }
            if (!divisible) continue;
            Monomial entry;
            entry.sign = 1;
            entry.exponent.assign(static_cast<std::size_t>(d), 0);
            for (int i = 0; i < d; ++i) {
                std::int64_t acc = 0;
                for (int j = 0; j < d; ++j) {
                    const mpz_class& gji = g.at(j, i);
                    if (!gji.fits_slong_p()) throw CapacityError("omega_monomial: G entry too large");
                    acc += gji.get_si() * t[static_cast<std::size_t>(j)];
                }
                entry.exponent[static_cast<std::size_t>(i)] = acc;
            }
            out.set(row, col, std::move(entry));
        }
    }
    return out;
}

MonomialMatrix monomial_mat_mul(const MonomialMatrix& a, const MonomialMatrix& b) {
    if (a.size() != b.size() || a.d() != b.d())
        throw DimensionError("monomial_mat_mul: shape mismatch");
    if (!a.is_generalized_permutation() || !b.is_generalized_permutation())
        throw StructureError("monomial_mat_mul: inputs must be generalized permutations");
    const std::int64_t n = a.size();
    MonomialMatrix out(n, a.d());
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t k = 0; k < n; ++k) {
            Monomial acc;
            for (std::int64_t j = 0; j < n; ++j) {
                const Monomial& x = a.at(i, j);
                const Monomial& y = b.at(j, k);
                if (x.sign == 0 || y.sign == 0) continue;
                Monomial prod;
                prod.sign = x.sign * y.sign;
                prod.exponent.resize(x.exponent.size());
                for (std::size_t t = 0; t < x.exponent.size(); ++t)
                    prod.exponent[t] = x.exponent[t] + y.exponent[t];
                if (acc.sign != 0)
                    throw StructureError("monomial_mat_mul: entry needs a sum of monomials");
                acc = std::move(prod);
            }
            if (acc.sign != 0) out.set(i, k, std::move(acc));
        }
    }
    return out;
}

Monomial det_exponent(const MonomialMatrix& m) {
    if (!m.is_generalized_permutation())
        throw StructureError("det_exponent: matrix must be a generalized permutation");
    const std::int64_t n = m.size();
    std::vector<std::int64_t> perm(static_cast<std::size_t>(n), -1);
    Monomial out;
    out.sign = 1;
    out.exponent.assign(static_cast<std::size_t>(m.d()), 0);
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t j = 0; j < n; ++j) {
            const Monomial& e = m.at(i, j);
            if (e.sign == 0) continue;
            perm[static_cast<std::size_t>(i)] = j;
            out.sign *= e.sign;
            for (std::size_t t = 0; t < e.exponent.size(); ++t) out.exponent[t] += e.exponent[t];
        }
    }
    // Parity by cycle decomposition.
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (std::int64_t i = 0; i < n; ++i) {
        if (seen[static_cast<std::size_t>(i)]) continue;
        std::int64_t len = 0;
        std::int64_t j = i;
        while (!seen[static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(j)] = true;
            j = perm[static_cast<std::size_t>(j)];
            ++len;
        }
        if (len % 2 == 0) out.sign = -out.sign;
    }
    return out;
}

}  // namespace quiverk
