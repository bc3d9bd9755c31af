#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "quiverk/int_matrix.hpp"
#include "test_util.hpp"

using namespace quiverk;
using testutil::diag;
using testutil::from_rows;

namespace {

// Independent oracle: cofactor expansion along the first row.
mpz_class det_cofactor(const IntMatrix& m) {
    const std::int64_t n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m.at(0, 0);
    mpz_class out = 0;
    for (std::int64_t j = 0; j < n; ++j) {
        std::vector<std::int64_t> rows, cols;
        for (std::int64_t i = 1; i < n; ++i) rows.push_back(i);
        for (std::int64_t c = 0; c < n; ++c)
            if (c != j) cols.push_back(c);
        mpz_class term = m.at(0, j) * det_cofactor(select(m, rows, cols));
        if (j % 2 != 0) term = -term;
        out += term;
    }
    return out;
}

}  // namespace

TEST_CASE("det on pinned examples") {
    CHECK(det(diag({2, 3})) == 6);
    CHECK(det(IntMatrix::identity(4)) == 1);
    // 2x2 cofactor oracle: 1*1 - 1*0 = 1.
    CHECK(det(from_rows({{1, 1}, {0, 1}})) == 1);
    CHECK(det(from_rows({{1, 2}, {3, 4}})) == -2);
    CHECK(det(IntMatrix(0, 0)) == 1);
    CHECK(det(from_rows({{0, 1}, {1, 0}})) == -1);
    CHECK_THROWS_AS(det(IntMatrix(2, 3)), DimensionError);
}

TEST_CASE("det agrees with cofactor expansion on random matrices") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 60; ++t) {
        const std::int64_t n = 1 + static_cast<std::int64_t>(t % 5);
        const IntMatrix m = testutil::random_matrix(rng, n, n, -9, 9);
        CHECK(det(m) == det_cofactor(m));
    }
}

TEST_CASE("minor_det") {
    const IntMatrix g = from_rows({{1, 2}, {3, 4}});
    CHECK(minor_det(g, {0}, {0}) == 1);
    CHECK(minor_det(g, {0, 1}, {0, 1}) == -2);
    CHECK(minor_det(g, {1}, {0}) == 3);
    CHECK_THROWS_AS(minor_det(g, {0, 1}, {0}), DimensionError);
    CHECK_THROWS_AS(minor_det(g, {1, 0}, {0, 1}), DimensionError);
    CHECK_THROWS_AS(minor_det(g, {0, 2}, {0, 1}), DimensionError);
}

TEST_CASE("minor is alternating on the unordered kernel") {
    std::mt19937_64 rng(12);
    const IntMatrix m = testutil::random_matrix(rng, 4, 4, -5, 5);
    // Swapping two rows in the selection flips the sign.
    CHECK(det(select(m, {0, 2, 3}, {0, 1, 2})) == -det(select(m, {2, 0, 3}, {0, 1, 2})));
    CHECK(det(select(m, {0, 1}, {2, 3})) == -det(select(m, {0, 1}, {3, 2})));
    // A repeated row kills the determinant.
    CHECK(det(select(m, {1, 1}, {0, 1})) == 0);
}

TEST_CASE("SubsetIndex enumerates lexicographically with complements") {
    const SubsetIndex ix(4, 2);
    CHECK(ix.size() == 6);
    CHECK(ix.subset(0) == std::vector<std::int64_t>{0, 1});
    CHECK(ix.subset(1) == std::vector<std::int64_t>{0, 2});
    CHECK(ix.subset(5) == std::vector<std::int64_t>{2, 3});
    CHECK(ix.complement(0) == std::vector<std::int64_t>{2, 3});
    CHECK(ix.complement(5) == std::vector<std::int64_t>{0, 1});
    CHECK(ix.index_of({0, 2}) == 1);

    const SubsetIndex empty(3, 0);
    CHECK(empty.size() == 1);
    CHECK(empty.subset(0).empty());
    CHECK(empty.complement(0) == std::vector<std::int64_t>{0, 1, 2});

    CHECK(SubsetIndex::binomial(5, 2) == 10);
    CHECK(SubsetIndex::binomial(4, 5) == 0);
    CHECK_THROWS_AS(SubsetIndex(3, 4), DimensionError);
}

TEST_CASE("exterior_power basics") {
    // Functorial identity.
    for (int k = 0; k <= 3; ++k) {
        const IntMatrix lk = exterior_power(IntMatrix::identity(3), k);
        CHECK(lk == IntMatrix::identity(SubsetIndex::binomial(3, k).get_si()));
    }
    // Diagonal input gives subset products on the diagonal.
    const IntMatrix l2 = exterior_power(diag({2, 3, 5}), 2);
    CHECK(l2 == diag({6, 10, 15}));
    // Single 2x2 minor.
    CHECK(exterior_power(from_rows({{1, 1}, {0, 1}}).transposed(), 2) ==
          IntMatrix::identity(1));
    // k = 1 returns the matrix itself.
    const IntMatrix g = from_rows({{1, 1}, {0, 1}});
    CHECK(exterior_power(g.transposed(), 1) == g.transposed());
    CHECK_THROWS_AS(exterior_power(g, 3), DimensionError);
}

TEST_CASE("Cauchy-Binet functoriality on random pairs") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 40; ++t) {
        const std::int64_t d = 2 + static_cast<std::int64_t>(t % 3);
        const IntMatrix x = testutil::random_matrix(rng, d, d, -6, 6);
        const IntMatrix y = testutil::random_matrix(rng, d, d, -6, 6);
        for (int k = 0; k <= d; ++k)
            CHECK(exterior_power(x * y, k) == exterior_power(x, k) * exterior_power(y, k));
    }
    // Pinned instance: X = diag(2,3), Y = [[1,1],[0,1]], k = 2 gives [6]*[1] = [6].
    const IntMatrix x = diag({2, 3});
    const IntMatrix y = from_rows({{1, 1}, {0, 1}});
    CHECK(exterior_power(x * y, 2).at(0, 0) == 6);
}

TEST_CASE("exterior_power transpose compatibility and determinant power rule") {
    std::mt19937_64 rng(14);
    for (int t = 0; t < 25; ++t) {
        const std::int64_t d = 2 + static_cast<std::int64_t>(t % 3);
        const IntMatrix m = testutil::random_matrix(rng, d, d, -5, 5);
        for (int k = 0; k <= d; ++k) {
            CHECK(exterior_power(m.transposed(), k) == exterior_power(m, k).transposed());
            // det of the compound is det(m)^binom(d-1, k-1).
            mpz_class expected;
            mpz_pow_ui(expected.get_mpz_t(), det(m).get_mpz_t(),
                       SubsetIndex::binomial(d - 1, k - 1).get_ui());
            CHECK(det(exterior_power(m, k)) == expected);
        }
    }
}

TEST_CASE("matrix product") {
    const IntMatrix a = from_rows({{1, 2}, {3, 4}});
    CHECK(a * IntMatrix::identity(2) == a);
    CHECK(diag({2, 3}) * diag({5, 7}) == diag({10, 21}));
    CHECK_THROWS_AS(a * IntMatrix(3, 2), DimensionError);
}

TEST_CASE("is_unimodular") {
    CHECK(is_unimodular(IntMatrix::identity(3)));
    CHECK_FALSE(is_unimodular(diag({2, 1})));
    CHECK(is_unimodular(from_rows({{1, 1}, {0, 1}})));
    CHECK(is_unimodular(from_rows({{0, 1}, {1, 0}})));
    CHECK_THROWS_AS(is_unimodular(IntMatrix(2, 3)), DimensionError);
}

TEST_CASE("entries have no overflow semantics") {
    IntMatrix m(2, 2);
    m.at(0, 0) = mpz_class("123456789012345678901234567890");
    m.at(1, 1) = mpz_class("-987654321098765432109876543210");
    const mpz_class d = det(m);
    CHECK(d == mpz_class("123456789012345678901234567890") *
                   mpz_class("-987654321098765432109876543210"));
}
