#include "quiverk.h"

#include <cstring>
#include <sstream>
#include <string>

#include "quiverk/job.hpp"

struct qk_job {
    quiverk::QuiverInput input;
    quiverk::JobFlags flags;
};

struct qk_report {
    int exit_code = 0;
    std::string body;
};

namespace {

thread_local std::string t_last_error;

qk_status status_of(const quiverk::Error& e) {
    using namespace quiverk;
    if (dynamic_cast<const ParseError*>(&e)) return QK_ERR_PARSE;
    if (dynamic_cast<const SingularInputError*>(&e)) return QK_ERR_SINGULAR_INPUT;
    if (dynamic_cast<const CapacityError*>(&e)) return QK_ERR_CAPACITY;
    if (dynamic_cast<const GeneralFRequiredError*>(&e)) return QK_ERR_GENERAL_F_REQUIRED;
    if (dynamic_cast<const NonIntegralError*>(&e)) return QK_ERR_NON_INTEGRAL;
    if (dynamic_cast<const EigenvalueOneError*>(&e)) return QK_ERR_EIGENVALUE_ONE;
    if (dynamic_cast<const StructureError*>(&e)) return QK_ERR_STRUCTURE;
    if (dynamic_cast<const DimensionError*>(&e)) return QK_ERR_DIMENSION;
    return QK_ERR_INTERNAL;
}

template <typename Fn>
qk_status guarded(Fn&& fn) {
    try {
        fn();
        t_last_error.clear();
        return QK_OK;
    } catch (const quiverk::Error& e) {
        t_last_error = e.what();
        return status_of(e);
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return QK_ERR_INTERNAL;
    } catch (...) {
        t_last_error = "unknown error";
        return QK_ERR_INTERNAL;
    }
}

}  // namespace

extern "C" {

qk_status qk_job_parse(const char* text, qk_job** out) {
    if (text == nullptr || out == nullptr) {
        t_last_error = "null argument";
        return QK_ERR_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&] {
        auto job = new qk_job;
        try {
            job->input = quiverk::parse_job_input(text, quiverk::max_binomial_from_env());
        } catch (...) {
            delete job;
            throw;
        }
        *out = job;
    });
}

qk_status qk_job_set_option(qk_job* job, const char* name, int value) {
    if (job == nullptr || name == nullptr) {
        t_last_error = "null argument";
        return QK_ERR_ARGUMENT;
    }
    const bool v = value != 0;
    if (std::strcmp(name, "breakdown") == 0) {
        job->flags.breakdown = v;
    } else if (std::strcmp(name, "check") == 0) {
        job->flags.check = v;
    } else if (std::strcmp(name, "closed_form") == 0) {
        job->flags.closed_form = v;
    } else if (std::strcmp(name, "presentation") == 0) {
        job->flags.presentation = v;
    } else if (std::strcmp(name, "general_f") == 0) {
        job->flags.general_f = v;
    } else if (std::strcmp(name, "json") == 0) {
        job->flags.json = v;
    } else {
        t_last_error = std::string("unknown option '") + name + "'";
        return QK_ERR_ARGUMENT;
    }
    t_last_error.clear();
    return QK_OK;
}

qk_status qk_job_run(const qk_job* job, qk_report** out) {
    if (job == nullptr || out == nullptr) {
        t_last_error = "null argument";
        return QK_ERR_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&] {
        const quiverk::Report r = quiverk::run_job(quiverk::JobSpec{job->input, job->flags});
        *out = new qk_report{r.exit_code, r.body};
    });
}

const char* qk_report_body(const qk_report* report) {
    return report == nullptr ? "" : report->body.c_str();
}

int qk_report_exit_code(const qk_report* report) {
    return report == nullptr ? 2 : report->exit_code;
}

qk_status qk_run_batch(const char* text, int general_f, qk_report** out) {
    if (text == nullptr || out == nullptr) {
        t_last_error = "null argument";
        return QK_ERR_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&] {
        std::vector<std::string> lines;
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line)) lines.push_back(line);
        quiverk::JobFlags flags;
        flags.general_f = general_f != 0;
        const quiverk::Report r =
            quiverk::run_batch(lines, flags, quiverk::max_binomial_from_env());
        *out = new qk_report{r.exit_code, r.body};
    });
}

void qk_job_free(qk_job* job) { delete job; }

void qk_report_free(qk_report* report) { delete report; }

const char* qk_status_name(qk_status status) {
    switch (status) {
        case QK_OK:
            return "ok";
        case QK_ERR_PARSE:
            return "parse_error";
        case QK_ERR_SINGULAR_INPUT:
            return "singular_input";
        case QK_ERR_CAPACITY:
            return "capacity_exceeded";
        case QK_ERR_GENERAL_F_REQUIRED:
            return "general_f_required";
        case QK_ERR_NON_INTEGRAL:
            return "non_integral_c";
        case QK_ERR_EIGENVALUE_ONE:
            return "eigenvalue_one";
        case QK_ERR_DIMENSION:
            return "dimension_error";
        case QK_ERR_STRUCTURE:
            return "structure_error";
        case QK_ERR_ARGUMENT:
            return "argument_error";
        case QK_ERR_INTERNAL:
        default:
            return "internal_error";
    }
}

const char* qk_last_error(void) { return t_last_error.c_str(); }

}  // extern "C"
