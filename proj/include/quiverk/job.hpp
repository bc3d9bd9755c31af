#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quiverk/engine.hpp"

namespace quiverk {

struct JobFlags {
    bool breakdown = false;
    bool check = false;
    bool closed_form = false;
    bool presentation = false;
    bool general_f = false;
    bool json = false;
};

struct JobSpec {
    QuiverInput input;
    JobFlags flags;
};

/// Parses "F=diag(2,3); G=[[1,1],[0,1]]" style job text. Assignments are
/// separated by ';' or newlines and are whitespace-insensitive. Determinant
/// and capacity checks run eagerly.
QuiverInput parse_job_input(const std::string& text,
                            std::int64_t max_binomial = kDefaultMaxBinomial);

/// The bound from QUIVERK_MAX_BINOMIAL, or the default when unset/invalid.
std::int64_t max_binomial_from_env();

struct Report {
    int exit_code = 0;  // 0 ok, 1 check or comparison failure, 2 input error
    std::string body;
};

/// Runs one job and renders the report (text or JSON per flags). Library
/// errors surface as exceptions; see run_job_catching for the CLI behaviour.
Report run_job(const JobSpec& job);

/// Same, but converts errors into an exit-code-2 report (JSON object or
/// plain message per the json flag).
Report run_job_catching(const JobSpec& job);

/// One job per line; blank lines and '#' comments are skipped. Jobs run
/// concurrently; the output is one JSON object per line, in input order.
Report run_batch(const std::vector<std::string>& lines, const JobFlags& flags,
                 std::int64_t max_binomial = kDefaultMaxBinomial);

/// Generators-and-relations listing for positive diagonal F.
std::string render_presentation(const QuiverInput& input);

/// Stable error-code string for an exception (parse_error, singular_input,
/// capacity_exceeded, general_f_required, non_integral_c, eigenvalue_one,
/// dimension_error, error).
std::string error_code_of(const Error& e);

}  // namespace quiverk
