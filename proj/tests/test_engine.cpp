#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "quiverk/closed_forms.hpp"
#include "quiverk/engine.hpp"
#include "test_util.hpp"

using namespace quiverk;
using testutil::diag;
using testutil::from_rows;

TEST_CASE("make_quiver_input validation") {
    CHECK_THROWS_AS(make_quiver_input(diag({0, 2}), diag({1, 1})), SingularInputError);
    CHECK_THROWS_AS(make_quiver_input(diag({2, 2}), diag({1, 0})), SingularInputError);
    CHECK_THROWS_AS(make_quiver_input(diag({2}), diag({1, 1})), DimensionError);
    CHECK_THROWS_AS(make_quiver_input(testutil::diag({2, 2, 2, 2, 2, 2}),
                                      testutil::diag({1, 1, 1, 1, 1, 1}), 10),
                    CapacityError);

    const QuiverInput in = make_quiver_input(diag({2, 3}), from_rows({{1, 1}, {0, 1}}));
    CHECK(in.d == 2);
    CHECK(in.f_diagonal);
    CHECK(in.n == 6);
    CHECK_FALSE(in.negative_det_f);

    const QuiverInput gen = make_quiver_input(from_rows({{0, 1}, {1, 0}}), diag({2, 2}));
    CHECK_FALSE(gen.f_diagonal);
    CHECK(gen.n == 1);
    CHECK(gen.negative_det_f);
}

TEST_CASE("build_levels on the worked 2x2 example") {
    // F = diag(2,3), G = [[1,1],[0,1]]: B_1 = G^T, diag(a_{I'}) = diag(3,2),
    // so C_1 = [[3,0],[3,2]]; C_0 = 6; C_2 = det G = 1.
    const QuiverInput in = make_quiver_input(diag({2, 3}), from_rows({{1, 1}, {0, 1}}));
    const auto levels = build_levels(in);
    REQUIRE(levels.size() == 3);
    CHECK(levels[0].c.at(0, 0) == 6);
    CHECK(levels[1].c == from_rows({{3, 0}, {3, 2}}));
    CHECK(levels[2].c == IntMatrix::identity(1));
    // C_1 A_1 = [[6,0],[6,6]] = 6 B_1.
    CHECK(levels[1].c * levels[1].a == from_rows({{6, 0}, {6, 6}}));
    CHECK(check_identities(levels, in).all_pass());
}

TEST_CASE("build_levels identity case and diagonal G") {
    SUBCASE("F = G = 1_d gives C_k = identity") {
        for (int d = 1; d <= 4; ++d) {
            const QuiverInput in =
                make_quiver_input(IntMatrix::identity(d), IntMatrix::identity(d));
            for (const auto& lv : build_levels(in))
                CHECK(lv.c == IntMatrix::identity(lv.c.rows()));
        }
    }
    SUBCASE("diagonal F and G give C_k = diag(b_I a_{I'})") {
        const QuiverInput in = make_quiver_input(diag({2, 3, 4}), diag({-1, 2, 5}));
        const auto levels = build_levels(in);
        for (const auto& lv : levels) {
            const SubsetIndex ix(3, lv.k);
            const std::vector<mpz_class> a = in.f.diagonal_entries();
            const std::vector<mpz_class> b = in.g.diagonal_entries();
            for (std::int64_t i = 0; i < ix.size(); ++i) {
                mpz_class expect = 1;
                for (auto t : ix.subset(i)) expect *= b[static_cast<std::size_t>(t)];
                for (auto t : ix.complement(i)) expect *= a[static_cast<std::size_t>(t)];
                CHECK(lv.c.at(i, i) == expect);
                for (std::int64_t j = 0; j < ix.size(); ++j)
                    if (i != j) CHECK(lv.c.at(i, j) == 0);
            }
        }
    }
}

TEST_CASE("defining identity C_k A_k = N B_k holds on random inputs") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 50; ++t) {
        const int d = 1 + t % 3;
        std::uniform_int_distribution<long> adist(1, 4);
        std::vector<long> a(static_cast<std::size_t>(d));
        for (auto& x : a) x = adist(rng);
        const IntMatrix f = diag(a);
        IntMatrix g = testutil::random_matrix(rng, d, d, -4, 4);
        if (det(g) == 0) continue;
        const QuiverInput in = make_quiver_input(f, g);
        const auto levels = build_levels(in);
        for (const auto& lv : levels) CHECK(lv.c * lv.a == in.n * lv.b);
        CHECK(check_identities(levels, in).all_pass());
    }
}

TEST_CASE("k_groups pinned examples") {
    SUBCASE("d=1, F=[3], G=[4]") {
        const KGroupsResult r = k_groups(make_quiver_input(diag({3}), diag({4})));
        CHECK(r.k0 == AbelianGroup::cyclic(2));
        CHECK(r.k1 == AbelianGroup::cyclic(3));
    }
    SUBCASE("F=G=1_d gives K0 = K1 = Z^(2^d)") {
        for (int d = 1; d <= 4; ++d) {
            const KGroupsResult r =
                k_groups(make_quiver_input(IntMatrix::identity(d), IntMatrix::identity(d)));
            CHECK(r.k0 == AbelianGroup::free(1LL << d));
            CHECK(r.k1 == AbelianGroup::free(1LL << d));
        }
    }
    SUBCASE("F=diag(2,3), G=[[1,1],[0,1]]") {
        // Per-level SNF oracle: coker(1-C_0) = Z5, SNF of [[-2,0],[-3,-1]]
        // is diag(1,2) so coker(1-C_1) = Z2, and 1-C_2 = 0 frees one Z.
        const KGroupsResult r =
            k_groups(make_quiver_input(diag({2, 3}), from_rows({{1, 1}, {0, 1}})));
        CHECK(r.k0 == direct_sum(AbelianGroup::free(1), AbelianGroup::cyclic(5)));
        CHECK(r.k1 == direct_sum(AbelianGroup::free(1), AbelianGroup::cyclic(2)));
        REQUIRE(r.levels.size() == 3);
        CHECK(r.levels[0].coker == AbelianGroup::cyclic(5));
        CHECK(r.levels[1].coker == AbelianGroup::cyclic(2));
        CHECK(r.levels[2].ker_rank == 1);
        CHECK(r.levels[2].coker == AbelianGroup::free(1));
    }
}

TEST_CASE("parity swap exchanges K0 and K1") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 20; ++t) {
        const int d = 1 + t % 3;
        std::uniform_int_distribution<long> adist(1, 3);
        std::vector<long> a(static_cast<std::size_t>(d));
        for (auto& x : a) x = adist(rng);
        IntMatrix g = testutil::random_matrix(rng, d, d, -3, 3);
        if (det(g) == 0) continue;
        const KGroupsResult r = k_groups(make_quiver_input(diag(a), g));
        CHECK(assemble_k_group(r.levels, 0) == r.k0);
        // Swapping even and odd in the assembly swaps K0 and K1.
        CHECK(assemble_k_group(r.levels, 1) == r.k1);
        std::vector<LevelSummary> swapped = r.levels;
        for (auto& lv : swapped) lv.k += 1;
        CHECK(assemble_k_group(swapped, 0) == r.k1);
        CHECK(assemble_k_group(swapped, 1) == r.k0);
    }
}

TEST_CASE("basis order independence: conjugating C_k by a permutation") {
    std::mt19937_64 rng(43);
    const QuiverInput in = make_quiver_input(diag({2, 3, 4}), testutil::random_nonsingular(rng, 3, -3, 3));
    const auto levels = build_levels(in);
    for (const auto& lv : levels) {
        const std::int64_t n = lv.c.rows();
        // Reverse-order permutation matrix.
        IntMatrix p(n, n);
        for (std::int64_t i = 0; i < n; ++i) p.at(i, n - 1 - i) = 1;
        const IntMatrix shuffled = p * lv.c * p.transposed();
        const IntMatrix m1 = IntMatrix::identity(n) - lv.c;
        const IntMatrix m2 = IntMatrix::identity(n) - shuffled;
        CHECK(kernel_rank(m1) == kernel_rank(m2));
        CHECK(cokernel(m1) == cokernel(m2));
    }
}

TEST_CASE("scalar F with n > 1: 1 - C_k is injective for 1 <= k <= d-1") {
    std::mt19937_64 rng(44);
    for (int t = 0; t < 30; ++t) {
        const int d = 2 + t % 2;
        const long n = 2 + t % 3;
        std::vector<long> a(static_cast<std::size_t>(d), n);
        IntMatrix g = testutil::random_matrix(rng, d, d, -4, 4);
        if (det(g) == 0) continue;
        const KGroupsResult r = k_groups(make_quiver_input(diag(a), g));
        for (const auto& lv : r.levels)
            if (lv.k >= 1 && lv.k <= d - 1) CHECK(lv.ker_rank == 0);
    }
}

TEST_CASE("general F path") {
    SUBCASE("non-diagonal F conjugate to a covered diagonal case") {
        // F = [[2,1],[0,3]] with dilation eigenvalues 2 and 3.
        const QuiverInput in =
            make_quiver_input(from_rows({{2, 1}, {0, 3}}), IntMatrix::identity(2));
        const auto levels = build_levels(in);
        for (const auto& lv : levels) CHECK(lv.c * lv.a == in.n * lv.b);
        const KGroupsResult r = k_groups(in);
        CHECK(r.k0.free_rank() >= 0);  // runs to completion
    }
    SUBCASE("fault injection: corrupted level fails its identity") {
        const QuiverInput in = make_quiver_input(diag({2, 3}), from_rows({{1, 1}, {0, 1}}));
        auto levels = build_levels(in);
        levels[1].c.at(0, 0) += 1;
        const IdentityReport rep = check_identities(levels, in);
        CHECK_FALSE(rep.all_pass());
        bool c1_failed = false, c0_ok = false;
        for (const auto& c : rep.checks) {
            if (c.name == "C_1 A_1 = N B_1" && !c.pass) c1_failed = true;
            if (c.name == "C_0 A_0 = N B_0" && c.pass) c0_ok = true;
        }
        CHECK(c1_failed);
        CHECK(c0_ok);
    }
}

TEST_CASE("reduce_general_f") {
    SUBCASE("positive diagonal is returned unchanged") {
        const DiagonalReduction r = reduce_general_f(diag({2, 3}));
        CHECK(r.d == diag({2, 3}));
        CHECK(r.u == IntMatrix::identity(2));
        CHECK(r.v == IntMatrix::identity(2));
    }
    SUBCASE("triangular F reduces to diag(1,6)") {
        const IntMatrix f = from_rows({{2, 1}, {0, 3}});
        const DiagonalReduction r = reduce_general_f(f);
        CHECK(r.d == diag({1, 6}));
        CHECK(r.u * f * r.v == r.d);
        CHECK(is_unimodular(r.u));
        CHECK(is_unimodular(r.v));
    }
    SUBCASE("permutation reduces to the identity") {
        const DiagonalReduction r = reduce_general_f(from_rows({{0, 1}, {1, 0}}));
        CHECK(r.d == IntMatrix::identity(2));
    }
    CHECK_THROWS_AS(reduce_general_f(diag({0, 1})), SingularInputError);
}

TEST_CASE("dilation reduction replication: Q_k path vs diagonal path") {
    // For a non-diagonal integer dilation F with U F V = D, the companion
    // G = U V makes the diagonal engine data unimodularly conjugate to the
    // direct Q_k = N (ext^k F^T)^{-1} formulation, so kernels and cokernels
    // agree as groups level by level.
    std::mt19937_64 rng(45);
    int done = 0;
    while (done < 8) {
        const int d = 2 + static_cast<int>(done % 2);
        const IntMatrix f = testutil::random_matrix(rng, d, d, -3, 3);
        if (f.is_diagonal() || det(f) == 0 || !is_integer_dilation(f)) continue;
        const DiagonalReduction red = reduce_general_f(f);
        const IntMatrix companion_g = red.u * red.v;
        const KGroupsResult diag_path = k_groups(make_quiver_input(red.d, companion_g));

        const mpz_class n = abs(det(f));
        const IntMatrix ft = f.transposed();
        for (int k = 0; k <= d; ++k) {
            const IntMatrix ak = exterior_power(ft, k);
            // Solve Q_k ak = n * 1 exactly by the same adjugate route.
            const mpz_class da = det(ak);
            IntMatrix qk(ak.rows(), ak.cols());
            bool integral = true;
            // adj(ak) = det * inverse; Q_k = n * adj / det.
            for (std::int64_t i = 0; i < ak.rows() && integral; ++i) {
                for (std::int64_t j = 0; j < ak.cols() && integral; ++j) {
                    std::vector<std::int64_t> rows, cols;
                    for (std::int64_t t2 = 0; t2 < ak.rows(); ++t2)
                        if (t2 != j) rows.push_back(t2);
                    for (std::int64_t t2 = 0; t2 < ak.cols(); ++t2)
                        if (t2 != i) cols.push_back(t2);
                    mpz_class cof = ak.rows() == 1 ? mpz_class(1) : det(select(ak, rows, cols));
                    if ((i + j) % 2 != 0) cof = -cof;
                    const mpz_class num = n * cof;
                    if (num % da != 0) {
                        integral = false;
                        break;
                    }
                    qk.at(i, j) = num / da;
                }
            }
            REQUIRE(integral);
            const IntMatrix one_minus_q = IntMatrix::identity(qk.rows()) - qk;
            CHECK(kernel_rank(one_minus_q) == diag_path.levels[static_cast<std::size_t>(k)].ker_rank);
            CHECK(cokernel(one_minus_q) == diag_path.levels[static_cast<std::size_t>(k)].coker);
        }
        ++done;
    }
}
