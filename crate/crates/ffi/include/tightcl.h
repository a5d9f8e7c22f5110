#ifndef TIGHTCL_H
#define TIGHTCL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TcCommand {
  TC_COMMAND_CHECK = 0,
  TC_COMMAND_CLOSURE = 1,
  TC_COMMAND_DECOMPOSE = 2,
  TC_COMMAND_INFO = 3,
} TcCommand;

/**
 * Result of every fallible call.
 */
typedef enum TcStatus {
  TC_STATUS_OK = 0,
  TC_STATUS_NULL_POINTER = 1,
  TC_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed or invalid problem text, or a request it cannot serve.
   */
  TC_STATUS_INPUT = 3,
  /**
   * The bundle did not split within the allowed field extensions.
   */
  TC_STATUS_UNDECIDED = 4,
  TC_STATUS_INTERNAL = 5,
  TC_STATUS_PANIC = 6,
} TcStatus;

typedef enum TcVerdict {
  TC_VERDICT_MEMBER = 0,
  TC_VERDICT_NON_MEMBER = 1,
} TcVerdict;

/**
 * A parsed problem.
 */
typedef struct TcProblem TcProblem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses problem text into a new handle stored in `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TcStatus tc_problem_parse(const char *text, struct TcProblem **out);

/**
 * Releases a handle from `tc_problem_parse`. Null is ignored.
 *
 * # Safety
 * `problem` must come from `tc_problem_parse` and not be used afterwards.
 */
void tc_problem_free(struct TcProblem *problem);

/**
 * Decides membership of the problem's candidate; the verdict goes to `*verdict`.
 *
 * # Safety
 * `problem` must be a live handle and `verdict` a valid pointer.
 */
enum TcStatus tc_check(const struct TcProblem *problem, enum TcVerdict *verdict);

/**
 * Runs a command and stores its JSON document (the `--json` output of `tc`) in `*json`.
 *
 * `degree` is used by `Decompose` when `has_degree` is nonzero; `e_max < 0`
 * selects the default Frobenius depth for `Check`. `*exit_code`, if not null,
 * receives the exit status `tc` would use.
 *
 * # Safety
 * `problem` must be a live handle, `json` a valid pointer, `exit_code` valid or null.
 */
enum TcStatus tc_run_json(const struct TcProblem *problem,
                          enum TcCommand command,
                          int64_t degree,
                          int32_t has_degree,
                          int32_t e_max,
                          char **json,
                          int32_t *exit_code);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void tc_string_free(char *s);

/**
 * Message of the last failure on this thread, or null. Valid until the next call on the thread.
 */
const char *tc_last_error_message(void);

/**
 * Code of the last failure on this thread (`"E_CHAR"`, ...), or null.
 */
const char *tc_last_error_code(void);

/**
 * Library version, static.
 */
const char *tc_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TIGHTCL_H */
