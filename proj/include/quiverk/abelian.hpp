#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "quiverk/errors.hpp"

namespace quiverk {

/// Finitely generated abelian group in canonical form
/// Z^free_rank (+) Z/d1 (+) ... (+) Z/dm with 2 <= d1, d1 | d2 | ... | dm.
/// Two groups are isomorphic exactly when the fields compare equal.
class AbelianGroup {
  public:
    AbelianGroup() = default;

    static AbelianGroup trivial() { return AbelianGroup(); }
    static AbelianGroup free(std::int64_t rank);
    /// Z/n for |n| >= 2, Z for n = 0, trivial for n = +-1.
    static AbelianGroup cyclic(const mpz_class& n);

    std::int64_t free_rank() const { return free_rank_; }
    const std::vector<mpz_class>& torsion() const { return torsion_; }

    bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }
    /// Product of the invariant factors (1 for torsion-free groups).
    mpz_class torsion_order() const;

    bool operator==(const AbelianGroup& other) const = default;

    /// "Z^2 (+) Z/2 (+) Z/12", "Z", "Z/5", "0".
    std::string render_text() const;
    /// {"free_rank": r, "torsion": [d1, ...]}
    std::string render_json() const;

    friend AbelianGroup from_cyclic_factors(const std::vector<mpz_class>& orders);
    friend AbelianGroup direct_sum(const AbelianGroup& g, const AbelianGroup& h);

  private:
    std::int64_t free_rank_ = 0;
    std::vector<mpz_class> torsion_;
};

/// Canonicalize a direct sum of cyclic groups: each order n contributes Z/|n|,
/// with Z/0 = Z and Z/1 trivial; the result satisfies the divisibility chain.
AbelianGroup from_cyclic_factors(const std::vector<mpz_class>& orders);

AbelianGroup direct_sum(const AbelianGroup& g, const AbelianGroup& h);

/// Inverse of render_json (accepts torsion entries as numbers or strings).
AbelianGroup abelian_from_json(const std::string& text);

}  // namespace quiverk
