#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "quiverk/abelian.hpp"

using namespace quiverk;

namespace {

// Independent oracle: factor each order into prime powers by trial division
// and regroup largest-first per prime into invariant factors. Orders in the
// tests are small, so trial division is fine here.
std::vector<mpz_class> invariant_factors_by_primes(std::vector<long> orders) {
    std::map<long, std::vector<int>> exps;  // prime -> exponents, descending
    for (long n : orders) {
        n = std::abs(n);
        if (n < 2) continue;
        for (long p = 2; p * p <= n; ++p) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            if (e > 0) exps[p].push_back(e);
        }
        if (n > 1) exps[n].push_back(1);
    }
    std::size_t count = 0;
    for (auto& [p, es] : exps) {
        std::sort(es.begin(), es.end(), std::greater<>());
        count = std::max(count, es.size());
    }
    std::vector<mpz_class> factors(count, mpz_class(1));
    for (auto& [p, es] : exps) {
        for (std::size_t i = 0; i < es.size(); ++i) {
            mpz_class pw;
            mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p),
                          static_cast<unsigned long>(es[i]));
            factors[i] *= pw;  // largest exponents into the largest factor slot
        }
    }
    std::sort(factors.begin(), factors.end());
    return factors;
}

AbelianGroup group_of(const std::vector<long>& orders) {
    std::vector<mpz_class> z;
    z.reserve(orders.size());
    for (long n : orders) z.emplace_back(n);
    return from_cyclic_factors(z);
}

}  // namespace

TEST_CASE("from_cyclic_factors pinned examples") {
    // CRT oracle: Z6 (+) Z4 = Z2 (+) Z3 (+) Z4 = Z2 (+) Z12.
    const AbelianGroup g = group_of({6, 4});
    CHECK(g.free_rank() == 0);
    CHECK(g.torsion() == std::vector<mpz_class>{2, 12});

    CHECK(group_of({1, -1}).is_trivial());
    CHECK(group_of({0}) == AbelianGroup::free(1));
    CHECK(group_of({-5}) == AbelianGroup::cyclic(5));
    CHECK(group_of({2, 3}).torsion() == std::vector<mpz_class>{6});
}

TEST_CASE("canonical form matches the prime-power regrouping oracle") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long> order(-30, 30);
    std::uniform_int_distribution<int> len(0, 6);
    for (int t = 0; t < 300; ++t) {
        std::vector<long> orders;
        for (int i = 0, n = len(rng); i < n; ++i) orders.push_back(order(rng));
        std::vector<long> nonzero;
        for (long o : orders)
            if (o != 0) nonzero.push_back(o);
        const AbelianGroup g = group_of(orders);
        CHECK(g.torsion() == invariant_factors_by_primes(nonzero));
        // Divisibility chain and lower bound.
        for (std::size_t i = 0; i < g.torsion().size(); ++i) {
            CHECK(g.torsion()[i] >= 2);
            if (i > 0) CHECK(g.torsion()[i] % g.torsion()[i - 1] == 0);
        }
    }
}

TEST_CASE("from_cyclic_factors is permutation invariant") {
    std::mt19937_64 rng(32);
    std::uniform_int_distribution<long> order(-20, 20);
    for (int t = 0; t < 100; ++t) {
        std::vector<long> orders;
        for (int i = 0; i < 5; ++i) orders.push_back(order(rng));
        std::vector<long> shuffled = orders;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(group_of(orders) == group_of(shuffled));
    }
}

TEST_CASE("direct_sum") {
    const AbelianGroup z2 = AbelianGroup::cyclic(2);
    const AbelianGroup z3 = AbelianGroup::cyclic(3);
    CHECK(direct_sum(z2, AbelianGroup::trivial()) == z2);
    CHECK(direct_sum(z2, z3) == AbelianGroup::cyclic(6));
    CHECK(direct_sum(AbelianGroup::free(2), AbelianGroup::cyclic(5)) == group_of({0, 0, 5}));

    std::mt19937_64 rng(33);
    std::uniform_int_distribution<long> order(2, 24);
    for (int t = 0; t < 100; ++t) {
        const AbelianGroup a = group_of({order(rng), order(rng)});
        const AbelianGroup b = group_of({order(rng)});
        const AbelianGroup c = group_of({order(rng), order(rng)});
        CHECK(direct_sum(a, b) == direct_sum(b, a));
        CHECK(direct_sum(direct_sum(a, b), c) == direct_sum(a, direct_sum(b, c)));
        CHECK(direct_sum(a, b).torsion_order() == a.torsion_order() * b.torsion_order());
        CHECK(direct_sum(a, b).free_rank() == a.free_rank() + b.free_rank());
    }
}

TEST_CASE("render") {
    CHECK(AbelianGroup::trivial().render_text() == "0");
    CHECK(AbelianGroup::free(1).render_text() == "Z");
    CHECK(AbelianGroup::free(4).render_text() == "Z^4");
    CHECK(group_of({2, 12}).render_text() == "Z/2 (+) Z/12");
    CHECK(direct_sum(AbelianGroup::free(2), group_of({2, 12})).render_text() ==
          "Z^2 (+) Z/2 (+) Z/12");
    CHECK(group_of({5, 0}).render_text() == "Z (+) Z/5");

    CHECK(group_of({2, 12, 0}).render_json() ==
          R"({"free_rank":1,"torsion":[2,12]})");
    CHECK(AbelianGroup::trivial().render_json() == R"({"free_rank":0,"torsion":[]})");
}

TEST_CASE("json round trip") {
    std::mt19937_64 rng(34);
    std::uniform_int_distribution<long> order(-40, 40);
    for (int t = 0; t < 100; ++t) {
        std::vector<long> orders;
        for (int i = 0; i < t % 5; ++i) orders.push_back(order(rng));
        const AbelianGroup g = group_of(orders);
        CHECK(abelian_from_json(g.render_json()) == g);
    }
    // Large torsion survives the string fallback.
    const AbelianGroup big = from_cyclic_factors({mpz_class("123456789012345678901234567890")});
    CHECK(abelian_from_json(big.render_json()) == big);
    CHECK_THROWS_AS(abelian_from_json("{"), ParseError);
    CHECK_THROWS_AS(abelian_from_json("[]"), ParseError);
}
