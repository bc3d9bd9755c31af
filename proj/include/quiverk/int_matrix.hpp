#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "quiverk/errors.hpp"

namespace quiverk {

/// Dense matrix over Z with arbitrary-precision entries, row major.
/// All operations are exact; values are immutable once built (the mutable
/// accessor exists for construction only).
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::int64_t rows, std::int64_t cols);

    static IntMatrix identity(std::int64_t n);
    static IntMatrix diagonal(const std::vector<mpz_class>& entries);

    std::int64_t rows() const { return rows_; }
    std::int64_t cols() const { return cols_; }

    const mpz_class& at(std::int64_t i, std::int64_t j) const;
    mpz_class& at(std::int64_t i, std::int64_t j);

    bool is_square() const { return rows_ == cols_; }
    bool is_diagonal() const;
    // Diagonal with every diagonal entry >= 1.
    bool is_positive_diagonal() const;

    std::vector<mpz_class> diagonal_entries() const;

    IntMatrix transposed() const;

    bool operator==(const IntMatrix& other) const = default;

  private:
    std::int64_t rows_ = 0;
    std::int64_t cols_ = 0;
    std::vector<mpz_class> e_;
};

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator*(const mpz_class& c, const IntMatrix& a);

/// Exact determinant by fraction-free (Bareiss) elimination.
mpz_class det(const IntMatrix& m);

/// Submatrix with the given rows and columns, in the order given.
/// Indices are 0-based; repetitions are allowed.
IntMatrix select(const IntMatrix& m, const std::vector<std::int64_t>& rows,
                 const std::vector<std::int64_t>& cols);

/// det of the submatrix with rows `rows` and columns `cols`, both strictly
/// increasing 0-based index tuples of equal length.
mpz_class minor_det(const IntMatrix& m, const std::vector<std::int64_t>& rows,
                    const std::vector<std::int64_t>& cols);

bool is_unimodular(const IntMatrix& m);

/// Lexicographically ordered k-element subsets of {0,...,d-1}.
class SubsetIndex {
  public:
    SubsetIndex(int d, int k);

    int d() const { return d_; }
    int k() const { return k_; }
    std::int64_t size() const { return static_cast<std::int64_t>(subsets_.size()); }

    const std::vector<std::int64_t>& subset(std::int64_t idx) const;
    /// Complement within {0,...,d-1}, increasing.
    std::vector<std::int64_t> complement(std::int64_t idx) const;
    /// Position of an increasing k-tuple in the lexicographic order.
    std::int64_t index_of(const std::vector<std::int64_t>& s) const;

    static mpz_class binomial(std::int64_t n, std::int64_t k);

  private:
    int d_ = 0;
    int k_ = 0;
    std::vector<std::vector<std::int64_t>> subsets_;
};

/// Compound matrix of k-minors: entry (I, J) is det of the submatrix of `m`
/// with rows I and columns J, both running over SubsetIndex(d, k).
/// k = 0 gives [1], k = 1 gives m back.
IntMatrix exterior_power(const IntMatrix& m, int k);

}  // namespace quiverk
