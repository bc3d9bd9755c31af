#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quiverk/abelian.hpp"
#include "quiverk/int_matrix.hpp"
#include "quiverk/smith.hpp"

namespace quiverk {

/// Default bound on binomial(d, d/2); larger inputs are rejected.
inline constexpr std::int64_t kDefaultMaxBinomial = 1'000'000;

/// Validated problem data for O_{F,G}(T^d).
struct QuiverInput {
    int d = 0;
    IntMatrix f;
    IntMatrix g;
    /// F is diagonal with positive entries; the closed theory covers this case.
    bool f_diagonal = false;
    /// |det F|; equals det F in the diagonal case.
    mpz_class n;
    /// det F was negative (general path only); N was taken as |det F|.
    bool negative_det_f = false;
};

/// Checks det F != 0, det G != 0 and the size cap, fills the derived fields.
QuiverInput make_quiver_input(const IntMatrix& f, const IntMatrix& g,
                              std::int64_t max_binomial = kDefaultMaxBinomial);

/// The level-k matrices acting on the rank-binomial(d,k) wedge component.
struct LevelMatrices {
    int k = 0;
    IntMatrix a;  // exterior_power(F^T, k)
    IntMatrix b;  // exterior_power(G^T, k)
    IntMatrix c;  // solves C A = N B; integer by construction or by assertion
};

/// Per-level kernel/cokernel data of 1 - C_k.
struct LevelSummary {
    int k = 0;
    std::int64_t size = 0;
    std::int64_t ker_rank = 0;
    AbelianGroup coker;
};

struct KGroupsResult {
    AbelianGroup k0;
    AbelianGroup k1;
    std::vector<LevelSummary> levels;
};

/// A_k, B_k, C_k for k = 0..d. Diagonal F uses the explicit product form
/// C_k = B_k diag(a_{I'}); general F solves C_k A_k = N B_k exactly over Q
/// and asserts integrality of every entry.
std::vector<LevelMatrices> build_levels(const QuiverInput& input);

/// K0 = (+)_{k even} coker(1-C_k) (+) (+)_{k odd} Z^{ker rank(1-C_k)},
/// K1 the same with parities swapped.
KGroupsResult k_groups(const QuiverInput& input);

/// Assembly step exposed separately so parity behaviour is testable:
/// coker summands are taken from levels with k = parity (mod 2) and free
/// kernel summands from the opposite parity.
AbelianGroup assemble_k_group(const std::vector<LevelSummary>& levels, int coker_parity);

struct IdentityCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct IdentityReport {
    std::vector<IdentityCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

/// Verifies C_k A_k = N B_k for all k, the level-0 normalizations, and (for
/// diagonal F) the entrywise description of C_k by scaled minors of G.
IdentityReport check_identities(const std::vector<LevelMatrices>& levels,
                                const QuiverInput& input);

struct DiagonalReduction {
    IntMatrix d;  // positive diagonal
    IntMatrix u;  // unimodular, u * f * v = d
    IntMatrix v;
};

/// Diagonal reduction data for general F with det F != 0. Positive diagonal
/// F is returned unchanged with identity transforms.
DiagonalReduction reduce_general_f(const IntMatrix& f);

}  // namespace quiverk
