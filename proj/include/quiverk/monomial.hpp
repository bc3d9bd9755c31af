#pragma once

#include <cstdint>
#include <vector>

#include "quiverk/int_matrix.hpp"

namespace quiverk {

/// A scalar monomial +-x^t with t in Z^d, or zero (sign = 0).
struct Monomial {
    int sign = 0;
    std::vector<std::int64_t> exponent;

    bool operator==(const Monomial& other) const = default;
};

/// Square matrix whose entries are 0 or +-x^t, restricted to generalized
/// permutation shape: exactly one nonzero entry in every row and column.
class MonomialMatrix {
  public:
    MonomialMatrix(std::int64_t n, int d);

    static MonomialMatrix identity(std::int64_t n, int d);

    std::int64_t size() const { return n_; }
    int d() const { return d_; }

    const Monomial& at(std::int64_t i, std::int64_t j) const;
    void set(std::int64_t i, std::int64_t j, Monomial m);

    /// One nonzero per row and per column, all with sign +-1.
    bool is_generalized_permutation() const;

    bool operator==(const MonomialMatrix& other) const = default;

  private:
    std::int64_t n_ = 0;
    int d_ = 0;
    std::vector<Monomial> e_;
};

/// Multi-indices nu with 0 <= nu_j <= a_j - 1 in lexicographic order; the
/// row/column index set of the matrices below.
std::vector<std::vector<std::int64_t>> multi_index_range(const std::vector<std::int64_t>& a);

/// The module homomorphism evaluated on the monomial z^m for F = diag(a),
/// a_j >= 1 and arbitrary integer G. Entry (nu, mu) is nonzero exactly when
/// a_j divides m_j + mu_j - nu_j for every j, and then equals x^(G^T s) with
/// s_j = (m_j + mu_j - nu_j) / a_j.
MonomialMatrix omega_monomial(const IntMatrix& f, const IntMatrix& g,
                              const std::vector<std::int64_t>& m);

/// Exact product; inputs must be generalized permutations (so no entry ever
/// needs a sum of distinct monomials).
MonomialMatrix monomial_mat_mul(const MonomialMatrix& a, const MonomialMatrix& b);

/// Determinant of a generalized permutation monomial matrix as +-x^t.
Monomial det_exponent(const MonomialMatrix& m);

}  // namespace quiverk
