#include "quiverk/job.hpp"

#include <json.hpp>

#include <cctype>
#include <cstdlib>
#include <future>
#include <sstream>

#include "quiverk/closed_forms.hpp"
#include "quiverk/monomial.hpp"

namespace quiverk {

namespace {

using json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string strip_spaces(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

std::vector<std::string> split_statements(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ';' || c == '\n') {
            if (!trim(cur).empty()) out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty()) out.push_back(trim(cur));
    return out;
}

// Cursor over a whitespace-stripped value string.
struct Cursor {
    const std::string& s;
    std::size_t pos = 0;

    bool eat(char c) {
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c))
            throw ParseError("expected '" + std::string(1, c) + "' at position " +
                             std::to_string(pos) + " in '" + s + "'");
    }

    mpz_class integer() {
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
            throw ParseError("expected an integer at position " + std::to_string(start) + " in '" +
                             s + "'");
        return mpz_class(s.substr(start, pos - start));
    }

    bool done() const { return pos == s.size(); }
};

IntMatrix parse_matrix_value(const std::string& raw) {
    const std::string s = strip_spaces(raw);
    Cursor c{s};
    if (s.rfind("diag(", 0) == 0) {
        c.pos = 5;
        std::vector<mpz_class> entries;
        entries.push_back(c.integer());
        while (c.eat(',')) entries.push_back(c.integer());
        c.expect(')');
        if (!c.done()) throw ParseError("trailing input after diag(...) in '" + s + "'");
        return IntMatrix::diagonal(entries);
    }
    c.expect('[');
    std::vector<std::vector<mpz_class>> rows;
    do {
        c.expect('[');
        std::vector<mpz_class> row;
        row.push_back(c.integer());
        while (c.eat(',')) row.push_back(c.integer());
        c.expect(']');
        rows.push_back(std::move(row));
    } while (c.eat(','));
    c.expect(']');
    if (!c.done()) throw ParseError("trailing input after matrix in '" + s + "'");
    const std::size_t n = rows.size();
    for (const auto& r : rows)
        if (r.size() != n) throw ParseError("matrix rows must form a square matrix");
    IntMatrix m(static_cast<std::int64_t>(n), static_cast<std::int64_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.at(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)) = rows[i][j];
    return m;
}

}  // namespace

QuiverInput parse_job_input(const std::string& text, std::int64_t max_binomial) {
    bool have_f = false, have_g = false;
    IntMatrix f, g;
    for (const std::string& stmt : split_statements(text)) {
        const std::size_t eq = stmt.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected NAME=VALUE, got '" + stmt + "'");
        const std::string name = trim(stmt.substr(0, eq));
        const std::string value = stmt.substr(eq + 1);
        if (name == "F") {
            if (have_f) throw ParseError("F assigned twice");
            f = parse_matrix_value(value);
            have_f = true;
        } else if (name == "G") {
            if (have_g) throw ParseError("G assigned twice");
            g = parse_matrix_value(value);
            have_g = true;
        } else {
            throw ParseError("unknown name '" + name + "' (expected F or G)");
        }
    }
    if (!have_f && !have_g) throw ParseError("empty input; expected F=... and G=...");
    if (!have_f) throw ParseError("missing F=...");
    if (!have_g) {
        std::string msg = "missing G=...";
        if (!f.is_positive_diagonal())
            msg += " (note: this F is not positive diagonal, which also requires --general-f)";
        throw ParseError(msg);
    }
    return make_quiver_input(f, g, max_binomial);
}

std::int64_t max_binomial_from_env() {
    const char* env = std::getenv("QUIVERK_MAX_BINOMIAL");
    if (env == nullptr) return kDefaultMaxBinomial;
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) return kDefaultMaxBinomial;
    return static_cast<std::int64_t>(v);
}

std::string error_code_of(const Error& e) {
    if (dynamic_cast<const ParseError*>(&e)) return "parse_error";
    if (dynamic_cast<const SingularInputError*>(&e)) return "singular_input";
    if (dynamic_cast<const CapacityError*>(&e)) return "capacity_exceeded";
    if (dynamic_cast<const GeneralFRequiredError*>(&e)) return "general_f_required";
    if (dynamic_cast<const NonIntegralError*>(&e)) return "non_integral_c";
    if (dynamic_cast<const EigenvalueOneError*>(&e)) return "eigenvalue_one";
    if (dynamic_cast<const StructureError*>(&e)) return "structure_error";
    if (dynamic_cast<const DimensionError*>(&e)) return "dimension_error";
    return "error";
}

namespace {

json mpz_to_json(const mpz_class& z) {
    if (z.fits_slong_p()) return json(z.get_si());
    return json(z.get_str());
}

json matrix_to_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::int64_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::int64_t j = 0; j < m.cols(); ++j) row.push_back(mpz_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string matrix_to_text(const IntMatrix& m) {
    std::string out = "[";
    for (std::int64_t i = 0; i < m.rows(); ++i) {
        if (i > 0) out += ", ";
        out += "[";
        for (std::int64_t j = 0; j < m.cols(); ++j) {
            if (j > 0) out += ", ";
            out += m.at(i, j).get_str();
        }
        out += "]";
    }
    return out + "]";
}

json group_to_json(const AbelianGroup& g) {
    json j;
    j["free_rank"] = g.free_rank();
    j["torsion"] = json::array();
    for (const auto& t : g.torsion()) j["torsion"].push_back(mpz_to_json(t));
    return j;
}

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string note;
};

// Deterministic verification set for the module homomorphism on monomials.
std::vector<CheckLine> omega_checks(const QuiverInput& input,
                                    const std::vector<LevelMatrices>& levels) {
    std::vector<CheckLine> out;
    constexpr std::int64_t kMaxOmegaSize = 4096;
    if (input.n > kMaxOmegaSize) {
        out.push_back({"omega checks", true, "skipped (N too large)"});
        return out;
    }
    const int d = input.d;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (abs(input.g.at(i, j)) > 1'000'000'000) {
                out.push_back({"omega checks", true, "skipped (G entries too large)"});
                return out;
            }
    for (std::int64_t i = 0; i < levels[1].c.rows(); ++i)
        for (std::int64_t j = 0; j < levels[1].c.cols(); ++j)
            if (!levels[1].c.at(i, j).fits_slong_p()) {
                out.push_back({"omega checks", true, "skipped (C_1 entries too large)"});
                return out;
            }
    const std::vector<std::int64_t> zero(static_cast<std::size_t>(d), 0);

    const MonomialMatrix id = MonomialMatrix::identity(
        input.n.get_si(), d);
    out.push_back({"omega(0) = identity", omega_monomial(input.f, input.g, zero) == id, ""});

    bool mult = true;
    std::vector<std::int64_t> m1(static_cast<std::size_t>(d)), m2(static_cast<std::size_t>(d)),
        m12(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        m1[static_cast<std::size_t>(j)] = j + 1;
        m2[static_cast<std::size_t>(j)] = (j % 2 == 0) ? -1 : 2;
        m12[static_cast<std::size_t>(j)] =
            m1[static_cast<std::size_t>(j)] + m2[static_cast<std::size_t>(j)];
    }
    const MonomialMatrix w1 = omega_monomial(input.f, input.g, m1);
    const MonomialMatrix w2 = omega_monomial(input.f, input.g, m2);
    if (monomial_mat_mul(w1, w2) != omega_monomial(input.f, input.g, m12)) mult = false;
    out.push_back({"omega(m) omega(m') = omega(m+m')", mult, ""});

    bool diagonal_ok = true;
    for (int j = 0; j < d && diagonal_ok; ++j) {
        std::vector<std::int64_t> fw(static_cast<std::size_t>(d), 0);
        fw[static_cast<std::size_t>(j)] = input.f.at(j, j).get_si();
        const MonomialMatrix w = omega_monomial(input.f, input.g, fw);
        for (std::int64_t i = 0; i < w.size() && diagonal_ok; ++i) {
            for (std::int64_t k = 0; k < w.size() && diagonal_ok; ++k) {
                const Monomial& e = w.at(i, k);
                if (i != k) {
                    if (e.sign != 0) diagonal_ok = false;
                } else {
                    if (e.sign != 1) diagonal_ok = false;
                    for (int t = 0; t < d && diagonal_ok; ++t)
                        if (e.exponent[static_cast<std::size_t>(t)] != input.g.at(j, t).get_si())
                            diagonal_ok = false;
                }
            }
        }
    }
    out.push_back({"omega(F e_j) = x^(G^T e_j) identity", diagonal_ok, ""});

    bool c1_ok = true;
    const IntMatrix& c1 = levels[1].c;
    for (int j = 0; j < d && c1_ok; ++j) {
        std::vector<std::int64_t> ej(static_cast<std::size_t>(d), 0);
        ej[static_cast<std::size_t>(j)] = 1;
        const Monomial dm = det_exponent(omega_monomial(input.f, input.g, ej));
        for (int i = 0; i < d && c1_ok; ++i)
            if (dm.exponent[static_cast<std::size_t>(i)] != c1.at(i, j).get_si()) c1_ok = false;
    }
    out.push_back({"det exponent of omega(e_j) = column j of C_1", c1_ok, ""});
    return out;
}

struct ClosedFormLine {
    std::string name;
    bool applicable = false;
    bool agrees = false;
    std::string case_label;
    std::vector<std::string> notes;
};

std::vector<ClosedFormLine> closed_form_comparisons(const QuiverInput& input,
                                                    const KGroupsResult& engine) {
    std::vector<ClosedFormLine> out;

    bool scalar_f = input.f_diagonal;
    const mpz_class n0 = input.f.at(0, 0);
    for (int i = 0; i < input.d && scalar_f; ++i)
        if (input.f.at(i, i) != n0) scalar_f = false;

    if (scalar_f) {
        ClosedFormLine line;
        line.name = "scalar-F case split";
        const ClosedFormResult r = scalar_f_kgroups(n0, input.g);
        if (r.covered) {
            line.applicable = true;
            line.case_label = r.case_label;
            line.agrees = (r.k0 == engine.k0 && r.k1 == engine.k1);
            if (!line.agrees)
                line.notes.push_back("closed form K0 = " + r.k0.render_text() +
                                     ", K1 = " + r.k1.render_text());
        } else {
            line.case_label = r.case_label;
        }
        out.push_back(std::move(line));
    }

    if (input.f_diagonal && input.g.is_diagonal()) {
        ClosedFormLine line;
        line.name = "diagonal case";
        const DiagonalClosedForm r = diagonal_kgroups(input.f, input.g);
        line.applicable = true;
        line.case_label = "case " + std::to_string(r.analysis.case_id) + " (f=" +
                          std::to_string(r.analysis.f) + ", p=" + std::to_string(r.analysis.p) +
                          ", v=" + std::to_string(r.analysis.v) + ")";
        line.agrees = (r.k0 == engine.k0 && r.k1 == engine.k1);
        if (!r.analysis.stated_matches)
            line.notes.push_back(
                "four-case text deviates on this input (documented): stated K0 = " +
                r.analysis.stated_k0.render_text() + ", K1 = " +
                r.analysis.stated_k1.render_text());
        out.push_back(std::move(line));
    }

    if (input.d == 2 && scalar_f && n0 == 1) {
        ClosedFormLine line;
        line.name = "d=2 case";
        try {
            const ClosedFormResult r = d2_kgroups(input.g);
            line.applicable = true;
            line.case_label = r.case_label;
            line.agrees = (r.k0 == engine.k0 && r.k1 == engine.k1);
        } catch (const EigenvalueOneError&) {
            line.case_label = "1 is an eigenvalue of G; outside the d=2 case";
        }
        out.push_back(std::move(line));
    }

    return out;
}

}  // namespace

std::string render_presentation(const QuiverInput& input) {
    if (!input.f_diagonal)
        throw DimensionError("presentation requires F diagonal with positive entries");
    const int d = input.d;
    std::vector<std::int64_t> a(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) a[static_cast<std::size_t>(j)] = input.f.at(j, j).get_si();
    const auto indices = multi_index_range(a);

    auto unitary = [d](int j) {
        return d == 1 ? std::string("U") : "U" + std::to_string(j + 1);
    };
    auto index_name = [d](const std::vector<std::int64_t>& nu) {
        if (d == 1) return std::to_string(nu[0]);
        std::string out = "(";
        for (std::size_t i = 0; i < nu.size(); ++i) {
            if (i > 0) out += ",";
            out += std::to_string(nu[i]);
        }
        return out + ")";
    };
    auto monomial = [&](const std::vector<mpz_class>& e) {
        std::string out;
        for (int j = 0; j < d; ++j) {
            const mpz_class& x = e[static_cast<std::size_t>(j)];
            if (x == 0) continue;
            if (!out.empty()) out += " ";
            out += unitary(j);
            if (x != 1) out += "^" + x.get_str();
        }
        return out.empty() ? std::string("1") : out;
    };

    std::ostringstream os;
    os << "presentation of the universal C*-algebra (d = " << d << ", N = " << input.n.get_str()
       << "):\n";
    os << "generators:\n";
    os << "  isometries:";
    for (const auto& nu : indices) os << " S" << index_name(nu);
    os << "\n";
    os << "  commuting unitaries (full spectrum):";
    for (int j = 0; j < d; ++j) os << " " << unitary(j);
    os << "\n";
    os << "relations:\n";
    os << "  (1) S_nu* S_mu = delta(nu, mu) 1   for nu, mu in the index box\n";
    os << "  (2) S_nu = U^nu S with S = S" << index_name(indices.front()) << ":\n";
    for (const auto& nu : indices) {
        std::vector<mpz_class> e;
        e.reserve(nu.size());
        for (auto x : nu) e.emplace_back(x);
        os << "      S" << index_name(nu) << " = " << (monomial(e) == "1" ? "S" : monomial(e) + " S")
           << "\n";
    }
    os << "  (3) U_j^(a_j) S = S U^(row j of G):\n";
    for (int j = 0; j < d; ++j) {
        std::string lhs = unitary(j);
        if (a[static_cast<std::size_t>(j)] != 1)
            lhs += "^" + std::to_string(a[static_cast<std::size_t>(j)]);
        std::vector<mpz_class> row;
        row.reserve(static_cast<std::size_t>(d));
        for (int t = 0; t < d; ++t) row.push_back(input.g.at(j, t));
        const std::string rhs = monomial(row);
        os << "      " << lhs << " S = " << (rhs == "1" ? "S" : "S " + rhs) << "\n";
    }
    os << "  (4) ";
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (i > 0) os << " + ";
        os << "S" << index_name(indices[i]) << " S" << index_name(indices[i]) << "*";
    }
    os << " = 1\n";
    return os.str();
}

Report run_job(const JobSpec& job) {
    const QuiverInput& input = job.input;
    if (!input.f_diagonal && !job.flags.general_f)
        throw GeneralFRequiredError(
            "F is not diagonal with positive entries; pass --general-f to run the extension "
            "beyond the established diagonal case");

    std::vector<std::string> warnings;
    if (!input.f_diagonal) {
        warnings.push_back("general F: results are an extension beyond the proved diagonal case");
        if (input.negative_det_f) warnings.push_back("det F < 0; using N = |det F|");
    }

    const std::vector<LevelMatrices> levels = build_levels(input);
    KGroupsResult groups;
    groups.levels.reserve(levels.size());
    for (const auto& lv : levels) {
        LevelSummary s;
        s.k = lv.k;
        s.size = lv.c.rows();
        const IntMatrix one_minus_c = IntMatrix::identity(lv.c.rows()) - lv.c;
        s.ker_rank = kernel_rank(one_minus_c);
        s.coker = cokernel(one_minus_c);
        groups.levels.push_back(std::move(s));
    }
    groups.k0 = assemble_k_group(groups.levels, 0);
    groups.k1 = assemble_k_group(groups.levels, 1);

    int exit_code = 0;

    std::vector<CheckLine> checks;
    if (job.flags.check) {
        const IdentityReport rep = check_identities(levels, input);
        for (const auto& c : rep.checks) checks.push_back({c.name, c.pass, c.detail});
        if (input.f_diagonal) {
            const auto oc = omega_checks(input, levels);
            checks.insert(checks.end(), oc.begin(), oc.end());
        } else {
            checks.push_back({"omega checks", true, "skipped (requires diagonal F)"});
        }
        for (const auto& c : checks)
            if (!c.pass) exit_code = 1;
    }

    std::vector<ClosedFormLine> closed;
    if (job.flags.closed_form) {
        closed = closed_form_comparisons(input, groups);
        for (const auto& line : closed)
            if (line.applicable && !line.agrees) exit_code = 1;
    }

    std::string presentation;
    if (job.flags.presentation) presentation = render_presentation(input);

    Report out;
    out.exit_code = exit_code;

    if (job.flags.json) {
        json j;
        j["d"] = input.d;
        j["F"] = matrix_to_json(input.f);
        j["G"] = matrix_to_json(input.g);
        j["K0"] = group_to_json(groups.k0);
        j["K1"] = group_to_json(groups.k1);
        j["levels"] = json::array();
        for (const auto& lv : groups.levels) {
            json l;
            l["k"] = lv.k;
            l["size"] = lv.size;
            l["ker_rank"] = lv.ker_rank;
            l["coker"] = group_to_json(lv.coker);
            j["levels"].push_back(std::move(l));
        }
        j["flags"] = json{{"general_f", job.flags.general_f}};
        j["warnings"] = warnings;
        if (job.flags.check) {
            j["checks"] = json::array();
            for (const auto& c : checks) {
                json cj;
                cj["name"] = c.name;
                cj["pass"] = c.pass;
                if (!c.note.empty()) cj["note"] = c.note;
                j["checks"].push_back(std::move(cj));
            }
        }
        if (job.flags.closed_form) {
            j["closed_form"] = json::array();
            for (const auto& line : closed) {
                json cj;
                cj["name"] = line.name;
                cj["applicable"] = line.applicable;
                cj["case"] = line.case_label;
                if (line.applicable) cj["agrees"] = line.agrees;
                if (!line.notes.empty()) cj["notes"] = line.notes;
                j["closed_form"].push_back(std::move(cj));
            }
        }
        if (job.flags.presentation) j["presentation"] = presentation;
        out.body = j.dump();
        return out;
    }

    std::ostringstream os;
    os << "d = " << input.d << "\n";
    os << "F = " << matrix_to_text(input.f) << "\n";
    os << "G = " << matrix_to_text(input.g) << "\n";
    for (const auto& w : warnings) os << "warning: " << w << "\n";
    os << "K0 = " << groups.k0.render_text() << "\n";
    os << "K1 = " << groups.k1.render_text() << "\n";
    if (job.flags.breakdown) {
        os << "level breakdown:\n";
        os << "  k  size  ker_rank  coker\n";
        for (const auto& lv : groups.levels) {
            os << "  " << lv.k << "  " << lv.size << "  " << lv.ker_rank << "  "
               << lv.coker.render_text() << "\n";
        }
    }
    if (job.flags.check) {
        os << "identity checks:\n";
        for (const auto& c : checks) {
            os << "  " << (c.pass ? "pass" : "FAIL") << "  " << c.name;
            if (!c.note.empty()) os << "  [" << c.note << "]";
            os << "\n";
        }
    }
    if (job.flags.closed_form) {
        os << "closed-form comparison:\n";
        if (closed.empty()) os << "  no closed form applies to this input\n";
        for (const auto& line : closed) {
            os << "  " << line.name << " (" << line.case_label << "): ";
            if (!line.applicable) {
                os << "not applicable\n";
            } else {
                os << (line.agrees ? "agrees with engine" : "DISAGREES with engine") << "\n";
            }
            for (const auto& note : line.notes) os << "    note: " << note << "\n";
        }
    }
    if (job.flags.presentation) os << presentation;
    out.body = os.str();
    return out;
}

Report run_job_catching(const JobSpec& job) {
    try {
        return run_job(job);
    } catch (const Error& e) {
        Report out;
        out.exit_code = 2;
        if (job.flags.json) {
            json j;
            j["error"] = json{{"code", error_code_of(e)}, {"message", e.what()}};
            out.body = j.dump();
        } else {
            out.body = std::string("error: ") + e.what() + "\n";
        }
        return out;
    }
}

Report run_batch(const std::vector<std::string>& lines, const JobFlags& flags,
                 std::int64_t max_binomial) {
    std::vector<std::string> jobs;
    for (const auto& raw : lines) {
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        jobs.push_back(line);
    }

    auto run_one = [&flags, max_binomial](const std::string& text) -> Report {
        JobFlags f = flags;
        f.json = true;  // batch output is one JSON object per line
        try {
            JobSpec spec{parse_job_input(text, max_binomial), f};
            return run_job_catching(spec);
        } catch (const Error& e) {
            json j;
            j["error"] = json{{"code", error_code_of(e)}, {"message", e.what()}};
            return Report{2, j.dump()};
        }
    };

    std::vector<std::future<Report>> futures;
    futures.reserve(jobs.size());
    for (const auto& text : jobs)
        futures.push_back(std::async(std::launch::async, run_one, text));

    Report out;
    std::ostringstream os;
    for (auto& fut : futures) {
        Report r = fut.get();
        out.exit_code = std::max(out.exit_code, r.exit_code);
        os << r.body << "\n";
    }
    out.body = os.str();
    return out;
}

}  // namespace quiverk
