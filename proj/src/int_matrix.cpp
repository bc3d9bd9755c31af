#include "quiverk/int_matrix.hpp"

#include <algorithm>
#include <string>

namespace quiverk {

IntMatrix::IntMatrix(std::int64_t rows, std::int64_t cols)
    : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows * cols)) {
    if (rows < 0 || cols < 0) throw DimensionError("matrix dimensions must be nonnegative");
}

IntMatrix IntMatrix::identity(std::int64_t n) {
    IntMatrix m(n, n);
    for (std::int64_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<mpz_class>& entries) {
    const auto n = static_cast<std::int64_t>(entries.size());
    IntMatrix m(n, n);
    for (std::int64_t i = 0; i < n; ++i) m.at(i, i) = entries[static_cast<std::size_t>(i)];
    return m;
}

const mpz_class& IntMatrix::at(std::int64_t i, std::int64_t j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
        throw DimensionError("matrix index out of range");
    return e_[static_cast<std::size_t>(i * cols_ + j)];
}

mpz_class& IntMatrix::at(std::int64_t i, std::int64_t j) {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
        throw DimensionError("matrix index out of range");
    return e_[static_cast<std::size_t>(i * cols_ + j)];
}

bool IntMatrix::is_diagonal() const {
    if (!is_square()) return false;
    for (std::int64_t i = 0; i < rows_; ++i)
        for (std::int64_t j = 0; j < cols_; ++j)
            if (i != j && at(i, j) != 0) return false;
    return true;
}

bool IntMatrix::is_positive_diagonal() const {
    if (!is_diagonal()) return false;
    for (std::int64_t i = 0; i < rows_; ++i)
        if (at(i, i) < 1) return false;
    return true;
}

std::vector<mpz_class> IntMatrix::diagonal_entries() const {
    std::vector<mpz_class> out;
    const std::int64_t n = std::min(rows_, cols_);
    out.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) out.push_back(at(i, i));
    return out;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::int64_t i = 0; i < rows_; ++i)
        for (std::int64_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("matrix sum: shape mismatch");
    IntMatrix out(a.rows(), a.cols());
    for (std::int64_t i = 0; i < a.rows(); ++i)
        for (std::int64_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j) + b.at(i, j);
    return out;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("matrix difference: shape mismatch");
    IntMatrix out(a.rows(), a.cols());
    for (std::int64_t i = 0; i < a.rows(); ++i)
        for (std::int64_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j) - b.at(i, j);
    return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matrix product: inner dimension mismatch");
    IntMatrix out(a.rows(), b.cols());
    mpz_class acc;
    for (std::int64_t i = 0; i < a.rows(); ++i) {
        for (std::int64_t j = 0; j < b.cols(); ++j) {
            acc = 0;
            for (std::int64_t t = 0; t < a.cols(); ++t) acc += a.at(i, t) * b.at(t, j);
            out.at(i, j) = acc;
        }
    }
    return out;
}

IntMatrix operator*(const mpz_class& c, const IntMatrix& a) {
    IntMatrix out(a.rows(), a.cols());
    for (std::int64_t i = 0; i < a.rows(); ++i)
        for (std::int64_t j = 0; j < a.cols(); ++j) out.at(i, j) = c * a.at(i, j);
    return out;
}

mpz_class det(const IntMatrix& m) {
    if (!m.is_square()) throw DimensionError("det: matrix must be square");
    const std::int64_t n = m.rows();
    if (n == 0) return 1;

    // Bareiss one-step elimination. work stays integral throughout; the
    // division by the previous pivot is exact.
    std::vector<std::vector<mpz_class>> w(static_cast<std::size_t>(n),
                                          std::vector<mpz_class>(static_cast<std::size_t>(n)));
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = 0; j < n; ++j) w[i][j] = m.at(i, j);

    mpz_class prev = 1;
    int sign = 1;
    for (std::int64_t r = 0; r < n - 1; ++r) {
        if (w[r][r] == 0) {
            std::int64_t swap_row = -1;
            for (std::int64_t i = r + 1; i < n; ++i) {
                if (w[i][r] != 0) {
                    swap_row = i;
                    break;
                }
            }
            if (swap_row < 0) return 0;
            std::swap(w[static_cast<std::size_t>(r)], w[static_cast<std::size_t>(swap_row)]);
            sign = -sign;
        }
        for (std::int64_t i = r + 1; i < n; ++i) {
            for (std::int64_t j = r + 1; j < n; ++j) {
                mpz_class num = w[i][j] * w[r][r] - w[i][r] * w[r][j];
                mpz_divexact(w[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            w[i][r] = 0;
        }
        prev = w[r][r];
    }
    return sign > 0 ? w[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 1)]
                    : mpz_class(-w[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 1)]);
}

IntMatrix select(const IntMatrix& m, const std::vector<std::int64_t>& rows,
                 const std::vector<std::int64_t>& cols) {
    IntMatrix out(static_cast<std::int64_t>(rows.size()), static_cast<std::int64_t>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            out.at(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)) =
                m.at(rows[i], cols[j]);
    return out;
}

namespace {

bool strictly_increasing(const std::vector<std::int64_t>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i - 1] >= v[i]) return false;
    return true;
}

}  // namespace

mpz_class minor_det(const IntMatrix& m, const std::vector<std::int64_t>& rows,
                    const std::vector<std::int64_t>& cols) {
    if (rows.size() != cols.size()) throw DimensionError("minor: row and column tuples differ in size");
    if (!strictly_increasing(rows) || !strictly_increasing(cols))
        throw DimensionError("minor: index tuples must be strictly increasing");
    if (!rows.empty() && (rows.back() >= m.rows() || cols.back() >= m.cols()))
        throw DimensionError("minor: index out of range");
    if (!rows.empty() && (rows.front() < 0 || cols.front() < 0))
        throw DimensionError("minor: index out of range");
    return det(select(m, rows, cols));
}

bool is_unimodular(const IntMatrix& m) {
    if (!m.is_square()) throw DimensionError("is_unimodular: matrix must be square");
    const mpz_class d = det(m);
    return d == 1 || d == -1;
}

SubsetIndex::SubsetIndex(int d, int k) : d_(d), k_(k) {
    if (d < 0 || k < 0 || k > d) throw DimensionError("SubsetIndex: need 0 <= k <= d");
    // Enumerate in lexicographic order by backtracking.
    std::vector<std::int64_t> cur(static_cast<std::size_t>(k));
    // Iterative odometer: start with 0,1,...,k-1.
    for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
    if (k == 0) {
        subsets_.push_back({});
        return;
    }
    while (true) {
        subsets_.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == d - k + i) --i;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
}

const std::vector<std::int64_t>& SubsetIndex::subset(std::int64_t idx) const {
    if (idx < 0 || idx >= size()) throw DimensionError("SubsetIndex: index out of range");
    return subsets_[static_cast<std::size_t>(idx)];
}

std::vector<std::int64_t> SubsetIndex::complement(std::int64_t idx) const {
    const auto& s = subset(idx);
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(d_ - k_));
    std::size_t p = 0;
    for (std::int64_t x = 0; x < d_; ++x) {
        if (p < s.size() && s[p] == x) {
            ++p;
        } else {
            out.push_back(x);
        }
    }
    return out;
}

std::int64_t SubsetIndex::index_of(const std::vector<std::int64_t>& s) const {
    const auto it = std::lower_bound(subsets_.begin(), subsets_.end(), s);
    if (it == subsets_.end() || *it != s) throw DimensionError("SubsetIndex: not a member subset");
    return static_cast<std::int64_t>(it - subsets_.begin());
}

mpz_class SubsetIndex::binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

IntMatrix exterior_power(const IntMatrix& m, int k) {
    if (!m.is_square()) throw DimensionError("exterior_power: matrix must be square");
    const int d = static_cast<int>(m.rows());
    if (k < 0 || k > d) throw DimensionError("exterior_power: need 0 <= k <= d");
    const SubsetIndex ix(d, k);
    IntMatrix out(ix.size(), ix.size());
    for (std::int64_t i = 0; i < ix.size(); ++i)
        for (std::int64_t j = 0; j < ix.size(); ++j)
            out.at(i, j) = minor_det(m, ix.subset(i), ix.subset(j));
    return out;
}

}  // namespace quiverk
