#include "quiverk/engine.hpp"

#include <utility>

namespace quiverk {

QuiverInput make_quiver_input(const IntMatrix& f, const IntMatrix& g, std::int64_t max_binomial) {
    if (!f.is_square() || !g.is_square() || f.rows() != g.rows())
        throw DimensionError("F and G must be square matrices of the same size");
    QuiverInput in;
    in.d = static_cast<int>(f.rows());
    if (in.d < 1) throw DimensionError("dimension must be at least 1");

    const mpz_class central = SubsetIndex::binomial(in.d, in.d / 2);
    if (central > max_binomial)
        throw CapacityError("binomial(d, d/2) = " + central.get_str() + " exceeds the bound " +
                            std::to_string(max_binomial));

    const mpz_class det_f = det(f);
    if (det_f == 0) throw SingularInputError("det F = 0");
    if (det(g) == 0) throw SingularInputError("det G = 0");

    in.f = f;
    in.g = g;
    in.f_diagonal = f.is_positive_diagonal();
    in.n = abs(det_f);
    in.negative_det_f = det_f < 0;
    return in;
}

namespace {

// Adjugate via signed cofactors. Sizes here are the small exterior-power
// blocks of the general-F path only.
IntMatrix adjugate(const IntMatrix& m) {
    const std::int64_t n = m.rows();
    IntMatrix adj(n, n);
    if (n == 0) return adj;
    if (n == 1) {
        adj.at(0, 0) = 1;
        return adj;
    }
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t j = 0; j < n; ++j) {
            std::vector<std::int64_t> rows, cols;
            for (std::int64_t t = 0; t < n; ++t) {
                if (t != j) rows.push_back(t);
            }
            for (std::int64_t t = 0; t < n; ++t) {
                if (t != i) cols.push_back(t);
            }
            mpz_class cof = det(select(m, rows, cols));
            if ((i + j) % 2 != 0) cof = -cof;
            adj.at(i, j) = cof;
        }
    }
    return adj;
}

// diag(a_{I'}) over I in the level-k subset order, for F = diag(a_1..a_d).
IntMatrix complement_product_diagonal(const std::vector<mpz_class>& a, int d, int k) {
    const SubsetIndex ix(d, k);
    std::vector<mpz_class> entries(static_cast<std::size_t>(ix.size()));
    for (std::int64_t idx = 0; idx < ix.size(); ++idx) {
        mpz_class prod = 1;
        for (std::int64_t j : ix.complement(idx)) prod *= a[static_cast<std::size_t>(j)];
        entries[static_cast<std::size_t>(idx)] = prod;
    }
    return IntMatrix::diagonal(entries);
}

}  // namespace

std::vector<LevelMatrices> build_levels(const QuiverInput& input) {
    const int d = input.d;
    const IntMatrix ft = input.f.transposed();
    const IntMatrix gt = input.g.transposed();

    std::vector<LevelMatrices> levels;
    levels.reserve(static_cast<std::size_t>(d) + 1);

    const std::vector<mpz_class> a = input.f.diagonal_entries();

    for (int k = 0; k <= d; ++k) {
        LevelMatrices lv;
        lv.k = k;
        lv.a = exterior_power(ft, k);
        lv.b = exterior_power(gt, k);
        if (input.f_diagonal) {
            if (k == 0) {
                lv.c = IntMatrix(1, 1);
                lv.c.at(0, 0) = input.n;
            } else {
                lv.c = lv.b * complement_product_diagonal(a, d, k);
            }
        } else {
            // C = N * B * A^{-1}, computed as N * B * adj(A) / det(A) with an
            // entrywise integrality assertion.
            const mpz_class det_a = det(lv.a);
            const IntMatrix num = input.n * (lv.b * adjugate(lv.a));
            lv.c = IntMatrix(num.rows(), num.cols());
            for (std::int64_t i = 0; i < num.rows(); ++i) {
                for (std::int64_t j = 0; j < num.cols(); ++j) {
                    if (num.at(i, j) % det_a != 0)
                        throw NonIntegralError(
                            "C_" + std::to_string(k) + " entry (" + std::to_string(i) + "," +
                            std::to_string(j) + ") is not an integer; (F, G) is outside the "
                            "reach of the exterior-power method");
                    mpz_divexact(lv.c.at(i, j).get_mpz_t(), num.at(i, j).get_mpz_t(),
                                 det_a.get_mpz_t());
                }
            }
        }
        levels.push_back(std::move(lv));
    }
    return levels;
}

AbelianGroup assemble_k_group(const std::vector<LevelSummary>& levels, int coker_parity) {
    AbelianGroup out;
    for (const auto& lv : levels) {
        if (lv.k % 2 == coker_parity % 2) {
            out = direct_sum(out, lv.coker);
        } else {
            out = direct_sum(out, AbelianGroup::free(lv.ker_rank));
        }
    }
    return out;
}

KGroupsResult k_groups(const QuiverInput& input) {
    const std::vector<LevelMatrices> levels = build_levels(input);
    KGroupsResult out;
    out.levels.reserve(levels.size());
    for (const auto& lv : levels) {
        LevelSummary s;
        s.k = lv.k;
        s.size = lv.c.rows();
        const IntMatrix one_minus_c = IntMatrix::identity(lv.c.rows()) - lv.c;
        s.ker_rank = kernel_rank(one_minus_c);
        s.coker = cokernel(one_minus_c);
        out.levels.push_back(std::move(s));
    }
    out.k0 = assemble_k_group(out.levels, 0);
    out.k1 = assemble_k_group(out.levels, 1);
    return out;
}

IdentityReport check_identities(const std::vector<LevelMatrices>& levels,
                                const QuiverInput& input) {
    IdentityReport rep;

    for (const auto& lv : levels) {
        IdentityCheck c;
        c.name = "C_" + std::to_string(lv.k) + " A_" + std::to_string(lv.k) + " = N B_" +
                 std::to_string(lv.k);
        c.pass = (lv.c * lv.a == input.n * lv.b);
        if (!c.pass) c.detail = "product differs from N B_k";
        rep.checks.push_back(std::move(c));
    }

    if (!levels.empty()) {
        const IntMatrix one = IntMatrix::identity(1);
        IdentityCheck c0{"A_0 = B_0 = 1", levels[0].a == one && levels[0].b == one, ""};
        if (!c0.pass) c0.detail = "level-0 matrices are not [1]";
        rep.checks.push_back(std::move(c0));

        IdentityCheck cn{"C_0 = N", false, ""};
        cn.pass = levels[0].c.rows() == 1 && levels[0].c.at(0, 0) == input.n;
        if (!cn.pass) cn.detail = "C_0 != det F";
        rep.checks.push_back(std::move(cn));
    }

    if (input.f_diagonal) {
        const std::vector<mpz_class> a = input.f.diagonal_entries();
        bool pass = true;
        std::string detail;
        for (const auto& lv : levels) {
            if (lv.k == 0) continue;
            const SubsetIndex ix(input.d, lv.k);
            for (std::int64_t i = 0; i < ix.size() && pass; ++i) {
                for (std::int64_t j = 0; j < ix.size() && pass; ++j) {
                    mpz_class expected = minor_det(input.g, ix.subset(j), ix.subset(i));
                    for (std::int64_t t : ix.complement(j)) expected *= a[static_cast<std::size_t>(t)];
                    if (lv.c.at(i, j) != expected) {
                        pass = false;
                        detail = "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") of C_" + std::to_string(lv.k) + " differs from a_{J'} det G_{JI}";
                    }
                }
            }
        }
        rep.checks.push_back({"C_k = (a_{J'} det G_{JI}) entrywise", pass, detail});
    }

    return rep;
}

DiagonalReduction reduce_general_f(const IntMatrix& f) {
    if (!f.is_square()) throw DimensionError("reduce_general_f: F must be square");
    if (det(f) == 0) throw SingularInputError("det F = 0");
    DiagonalReduction out;
    if (f.is_positive_diagonal()) {
        out.d = f;
        out.u = IntMatrix::identity(f.rows());
        out.v = IntMatrix::identity(f.rows());
        return out;
    }
    SmithDecomposition s = smith_normal_form(f);
    out.d = std::move(s.d);
    out.u = std::move(s.u);
    out.v = std::move(s.v);
    return out;
}

}  // namespace quiverk
