#include "quiverk/abelian.hpp"

#include <json.hpp>

#include <algorithm>

#include "quiverk/errors.hpp"

namespace quiverk {

namespace {

// Replace (a, b) by (gcd, lcm) across all pairs in selection-sort order.
// Per prime p this sorts the multiset of p-adic valuations ascending, which
// is exactly the invariant-factor chain, without factoring anything.
void chainify(std::vector<mpz_class>& v) {
    mpz_class g, l;
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            mpz_gcd(g.get_mpz_t(), v[i].get_mpz_t(), v[j].get_mpz_t());
            if (g == v[i]) continue;  // already v[i] | v[j]
            mpz_divexact(l.get_mpz_t(), v[j].get_mpz_t(), g.get_mpz_t());
            l *= v[i];
            v[i] = g;
            v[j] = l;
        }
    }
    // Drop trivial factors that collapsed to 1.
    v.erase(std::remove(v.begin(), v.end(), mpz_class(1)), v.end());
}

nlohmann::ordered_json mpz_to_json(const mpz_class& z) {
    if (z.fits_slong_p()) return nlohmann::ordered_json(z.get_si());
    return nlohmann::ordered_json(z.get_str());
}

}  // namespace

AbelianGroup AbelianGroup::free(std::int64_t rank) {
    AbelianGroup g;
    g.free_rank_ = rank;
    return g;
}

AbelianGroup AbelianGroup::cyclic(const mpz_class& n) {
    return from_cyclic_factors({n});
}

mpz_class AbelianGroup::torsion_order() const {
    mpz_class out = 1;
    for (const auto& t : torsion_) out *= t;
    return out;
}

std::string AbelianGroup::render_text() const {
    if (is_trivial()) return "0";
    std::string out;
    if (free_rank_ == 1) {
        out = "Z";
    } else if (free_rank_ > 1) {
        out = "Z^" + std::to_string(free_rank_);
    }
    for (const auto& t : torsion_) {
        if (!out.empty()) out += " (+) ";
        out += "Z/" + t.get_str();
    }
    return out;
}

std::string AbelianGroup::render_json() const {
    nlohmann::ordered_json j;
    j["free_rank"] = free_rank_;
    j["torsion"] = nlohmann::ordered_json::array();
    for (const auto& t : torsion_) j["torsion"].push_back(mpz_to_json(t));
    return j.dump();
}

AbelianGroup from_cyclic_factors(const std::vector<mpz_class>& orders) {
    AbelianGroup g;
    std::vector<mpz_class> torsion;
    for (const auto& n : orders) {
        if (n == 0) {
            ++g.free_rank_;
        } else {
            mpz_class a = abs(n);
            if (a >= 2) torsion.push_back(a);
        }
    }
    chainify(torsion);
    g.torsion_ = std::move(torsion);
    return g;
}

AbelianGroup direct_sum(const AbelianGroup& g, const AbelianGroup& h) {
    AbelianGroup out;
    out.free_rank_ = g.free_rank_ + h.free_rank_;
    out.torsion_ = g.torsion_;
    out.torsion_.insert(out.torsion_.end(), h.torsion_.begin(), h.torsion_.end());
    chainify(out.torsion_);
    return out;
}

AbelianGroup abelian_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("abelian_from_json: ") + e.what());
    }
    if (!j.is_object() || !j.contains("free_rank") || !j.contains("torsion"))
        throw ParseError("abelian_from_json: expected {free_rank, torsion}");
    std::vector<mpz_class> factors;
    for (std::int64_t i = 0; i < j["free_rank"].get<std::int64_t>(); ++i) factors.emplace_back(0);
    for (const auto& t : j["torsion"]) {
        if (t.is_string()) {
            factors.emplace_back(t.get<std::string>());
        } else {
            factors.emplace_back(static_cast<long>(t.get<std::int64_t>()));
        }
    }
    return from_cyclic_factors(factors);
}

}  // namespace quiverk
