#pragma once

#include "quiverk/abelian.hpp"
#include "quiverk/int_matrix.hpp"

namespace quiverk {

/// U * A * V = D with U, V unimodular and D diagonal, nonnegative, with
/// d1 | d2 | ... and all zero entries trailing.
struct SmithDecomposition {
    IntMatrix u;
    IntMatrix d;
    IntMatrix v;
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

/// Number of nonzero invariant factors.
std::int64_t rank(const IntMatrix& a);

/// Free rank of ker(A : Z^cols -> Z^rows), i.e. cols - rank.
std::int64_t kernel_rank(const IntMatrix& a);

/// coker(A) = Z^(rows - rank) (+) sum of Z/d_i over invariant factors d_i >= 2.
AbelianGroup cokernel(const IntMatrix& a);

}  // namespace quiverk
