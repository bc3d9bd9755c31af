// Command-line front end. Everything goes through the C API in quiverk.h.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "quiverk.h"

namespace {

int fail_with(qk_status status, bool json) {
    if (json) {
        // Keep the error shape identical to the library's JSON error objects.
        std::string msg = qk_last_error();
        std::string escaped;
        for (char c : msg) {
            if (c == '"' || c == '\\') escaped += '\\';
            if (c == '\n') {
                escaped += "\\n";
                continue;
            }
            escaped += c;
        }
        std::cout << "{\"error\":{\"code\":\"" << qk_status_name(status) << "\",\"message\":\""
                  << escaped << "\"}}" << std::endl;
    } else {
        std::cerr << "error: " << qk_last_error() << std::endl;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "quiverk: exact K0/K1 of the torus quiver C*-algebras O_{F,G}(T^d) from integer "
        "matrices F and G"};

    std::string input;
    std::string batch_path;
    bool flag_json = false, flag_breakdown = false, flag_check = false;
    bool flag_closed_form = false, flag_presentation = false, flag_general_f = false;

    app.add_option("input", input,
                   "job text, e.g. \"F=diag(2,3); G=[[1,1],[0,1]]\" (assignments separated by "
                   "';' or newlines)");
    app.add_option("--batch", batch_path,
                   "file with one job per line ('#' comments allowed); output is JSON lines");
    app.add_flag("--json", flag_json, "emit a JSON report instead of text");
    app.add_flag("--breakdown", flag_breakdown, "per-level table of ker rank and coker");
    app.add_flag("--check", flag_check, "verify the defining identities and the module "
                                        "homomorphism on monomials");
    app.add_flag("--closed-form", flag_closed_form,
                 "evaluate every applicable closed form and compare against the engine");
    app.add_flag("--presentation", flag_presentation,
                 "print the generators-and-relations presentation (diagonal F)");
    app.add_flag("--general-f", flag_general_f,
                 "opt in to non-diagonal F (extension beyond the established case)");

    CLI11_PARSE(app, argc, argv);

    if (!batch_path.empty()) {
        std::ifstream in(batch_path);
        if (!in) {
            std::cerr << "error: cannot open batch file '" << batch_path << "'" << std::endl;
            return 2;
        }
        std::ostringstream text;
        text << in.rdbuf();
        qk_report* rep = nullptr;
        const qk_status st = qk_run_batch(text.str().c_str(), flag_general_f ? 1 : 0, &rep);
        if (st != QK_OK) return fail_with(st, true);
        std::fputs(qk_report_body(rep), stdout);
        const int code = qk_report_exit_code(rep);
        qk_report_free(rep);
        return code;
    }

    if (input.empty()) {
        std::cerr << "error: no input; pass a job string or --batch FILE (try --help)"
                  << std::endl;
        return 2;
    }

    qk_job* job = nullptr;
    qk_status st = qk_job_parse(input.c_str(), &job);
    if (st != QK_OK) return fail_with(st, flag_json);

    qk_job_set_option(job, "json", flag_json ? 1 : 0);
    qk_job_set_option(job, "breakdown", flag_breakdown ? 1 : 0);
    qk_job_set_option(job, "check", flag_check ? 1 : 0);
    qk_job_set_option(job, "closed_form", flag_closed_form ? 1 : 0);
    qk_job_set_option(job, "presentation", flag_presentation ? 1 : 0);
    qk_job_set_option(job, "general_f", flag_general_f ? 1 : 0);

    qk_report* rep = nullptr;
    st = qk_job_run(job, &rep);
    if (st != QK_OK) {
        const int code = fail_with(st, flag_json);
        qk_job_free(job);
        return code;
    }

    std::fputs(qk_report_body(rep), stdout);
    const std::string body = qk_report_body(rep);
    if (!body.empty() && body.back() != '\n') std::fputs("\n", stdout);
    const int code = qk_report_exit_code(rep);
    qk_report_free(rep);
    qk_job_free(job);
    return code;
}
