/* C API for the quiverk K-group engine.
 *
 * Usage pattern:
 *   qk_job *job = NULL;
 *   if (qk_job_parse("F=diag(2,3); G=[[1,1],[0,1]]", &job) != QK_OK) { ... }
 *   qk_job_set_option(job, "breakdown", 1);
 *   qk_report *rep = NULL;
 *   if (qk_job_run(job, &rep) != QK_OK) { fprintf(stderr, "%s\n", qk_last_error()); }
 *   fputs(qk_report_body(rep), stdout);
 *   int code = qk_report_exit_code(rep);
 *   qk_report_free(rep);
 *   qk_job_free(job);
 *
 * All handles are opaque; strings returned by qk_report_body stay valid until
 * the owning report is freed. qk_last_error returns a thread-local message
 * describing the most recent failure on the calling thread.
 */

#ifndef QUIVERK_H
#define QUIVERK_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qk_status {
    QK_OK = 0,
    QK_ERR_PARSE = 1,
    QK_ERR_SINGULAR_INPUT = 2,
    QK_ERR_CAPACITY = 3,
    QK_ERR_GENERAL_F_REQUIRED = 4,
    QK_ERR_NON_INTEGRAL = 5,
    QK_ERR_EIGENVALUE_ONE = 6,
    QK_ERR_DIMENSION = 7,
    QK_ERR_STRUCTURE = 8,
    QK_ERR_ARGUMENT = 9,
    QK_ERR_INTERNAL = 99
} qk_status;

typedef struct qk_job qk_job;
typedef struct qk_report qk_report;

/* Parse job text ("F=...; G=..."); determinant and size checks run eagerly.
 * On success *out owns a new job handle. Honors QUIVERK_MAX_BINOMIAL. */
qk_status qk_job_parse(const char *text, qk_job **out);

/* Option names: "breakdown", "check", "closed_form", "presentation",
 * "general_f", "json"; value 0 or 1. */
qk_status qk_job_set_option(qk_job *job, const char *name, int value);

/* Run the job. The report owns the rendered body (text or JSON per the
 * "json" option) and the CLI exit code: 0 ok, 1 a requested check or
 * closed-form comparison failed, 2 input error. */
qk_status qk_job_run(const qk_job *job, qk_report **out);

const char *qk_report_body(const qk_report *report);
int qk_report_exit_code(const qk_report *report);

/* Run a whole batch: one job per line, '#' comments and blank lines skipped.
 * The report body is one JSON object per line, in input order. */
qk_status qk_run_batch(const char *text, int general_f, qk_report **out);

void qk_job_free(qk_job *job);
void qk_report_free(qk_report *report);

/* Static name of a status code ("ok", "parse_error", ...). */
const char *qk_status_name(qk_status status);

/* Thread-local message for the most recent failure; empty string if none. */
const char *qk_last_error(void);

#ifdef __cplusplus
}
#endif

#endif /* QUIVERK_H */
