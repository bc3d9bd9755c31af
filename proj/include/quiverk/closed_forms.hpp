#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quiverk/abelian.hpp"
#include "quiverk/engine.hpp"
#include "quiverk/int_matrix.hpp"

namespace quiverk {

/// Coefficients of det(z 1 - G), index = power of z, monic of degree d.
/// Computed exactly (integer determinants at d+1 nodes plus interpolation).
std::vector<mpz_class> characteristic_polynomial(const IntMatrix& g);

/// True iff every eigenvalue of G has modulus strictly greater than 1.
/// Exact decision path: the Moebius substitution z = (1-w)/(1+w) turns the
/// condition into Hurwitz stability of an integer polynomial, decided by the
/// signs of the Hurwitz leading minors. No floating point anywhere.
bool is_integer_dilation(const IntMatrix& g);

/// Number of ways to choose k items from p plus-ones and v minus-ones so the
/// product is +1 (p_count) respectively -1 (v_count). The empty choice counts
/// as product +1, so p_count(0, p, v) = 1.
mpz_class p_count(std::int64_t k, std::int64_t p, std::int64_t v);
mpz_class v_count(std::int64_t k, std::int64_t p, std::int64_t v);

/// Result of a closed-form evaluation; `covered` is false when the input
/// falls outside the closed form, with the reason spelled out.
struct ClosedFormResult {
    bool covered = false;
    std::string case_label;
    AbelianGroup k0;
    AbelianGroup k1;
};

/// K-groups for F = n 1_d by the scalar-F case split: d = 1 table,
/// d > 1 with n > 1 (split on det G = 1), and n = 1 with G an integer
/// dilation. Cokernel terms are computed through the Smith form.
ClosedFormResult scalar_f_kgroups(const mpz_class& n, const IntMatrix& g);

/// d = 2, F = 1_2 closed form; requires 1 not an eigenvalue of G.
ClosedFormResult d2_kgroups(const IntMatrix& g);

/// Data extracted from a diagonal pair (F, G); see diagonal_kgroups.
struct DiagonalAnalysis {
    int d = 0;
    /// Number of entries a_i = 1.
    int f = 0;
    /// Counts of +1 and -1 among the b_i sitting at positions with a_i = 1.
    std::int64_t p = 0;
    std::int64_t v = 0;
    /// Product of the b_i at positions with a_i > 1; a kernel element needs
    /// this to be +-1.
    mpz_class tail_product;
    /// dim ker(1 - C_k) per level, from the counting formula.
    std::vector<mpz_class> dk_formula;
    /// The same numbers by direct enumeration of subsets; must agree.
    std::vector<mpz_class> dk_enumerated;
    /// 0: no a_i = 1 (remark case); 1..4: the four-case split on (p, v).
    int case_id = 0;
    /// The four-case text evaluated verbatim, for comparison; equal to the
    /// computed groups except in the documented deviating configurations.
    AbelianGroup stated_k0;
    AbelianGroup stated_k1;
    bool stated_matches = false;
};

struct DiagonalClosedForm {
    AbelianGroup k0;
    AbelianGroup k1;
    DiagonalAnalysis analysis;
};

/// Closed form for diagonal F (entries >= 1) and diagonal G (det != 0):
/// every 1 - C_k is diagonal with entries 1 - b_I a_{I'}, so the K-groups
/// are assembled directly from subset products, with the free rank equal to
/// the number of subsets I with b_I a_{I'} = 1, counted per level both by
/// formula and by enumeration. Independent of the exterior-power engine.
DiagonalClosedForm diagonal_kgroups(const IntMatrix& f, const IntMatrix& g);

/// The scalar-pair corollary text (F = n 1_d, G = m 1_d) evaluated verbatim:
/// case 1 for n > 1 or |m| != 1, case 2 for (1,1), case 3 for (1,-1).
struct ScalarPairStatement {
    int case_id = 0;
    AbelianGroup k0;
    AbelianGroup k1;
};
ScalarPairStatement scalar_pair_stated(int d, const mpz_class& n, const mpz_class& m);

}  // namespace quiverk
