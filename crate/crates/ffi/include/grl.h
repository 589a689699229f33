#ifndef GRL_H
#define GRL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

/**
 * Cap passed to calls that want the library default.
 */
#define GRL_DEFAULT_CAP 1000

/**
 * Budget passed to calls that want the library default.
 */
#define GRL_DEFAULT_BUDGET 1000000

/**
 * Result of a call. Input and budget codes match the `grl` exit codes.
 */
typedef enum GrlStatus {
  GRL_STATUS_OK = 0,
  GRL_STATUS_NULL_POINTER = 1,
  GRL_STATUS_INVALID_UTF8 = 2,
  GRL_STATUS_INVALID_INPUT = 3,
  GRL_STATUS_BUDGET_EXCEEDED = 4,
  GRL_STATUS_PANIC = 5,
} GrlStatus;

/**
 * Outcome of a verification run.
 */
typedef enum GrlVerdict {
  GRL_VERDICT_PASS = 0,
  GRL_VERDICT_FAIL = 2,
  GRL_VERDICT_BUDGET_EXCEEDED = 4,
  GRL_VERDICT_UNSUPPORTED = 5,
} GrlVerdict;

/**
 * A parsed instance: a graded algebra or a group ring with named elements.
 */
typedef struct GrlInstance GrlInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses an instance from JSON text. `name` may be NULL, in which case the
 * instance is called `instance` unless the JSON names it.
 *
 * # Safety
 * `json` and `name` must be NULL or valid NUL-terminated strings; `out`
 * must be a valid pointer. The handle written to `out` must be released
 * with [`grl_instance_free`].
 */
enum GrlStatus grl_instance_from_json(const char *json, const char *name, struct GrlInstance **out);

/**
 * Releases an instance. NULL is ignored.
 *
 * # Safety
 * `instance` must be NULL or a handle from [`grl_instance_from_json`] that
 * has not been freed.
 */
void grl_instance_free(struct GrlInstance *instance);

/**
 * Writes a newly allocated copy of the instance name to `out`.
 *
 * # Safety
 * `instance` must be a live handle and `out` a valid pointer.
 */
enum GrlStatus grl_instance_name(const struct GrlInstance *instance, char **out);

/**
 * Dimension of the instance as a graded algebra over its field. Fails with
 * `InvalidInput` for group rings over infinite groups.
 *
 * # Safety
 * `instance` must be a live handle and `out` a valid pointer.
 */
enum GrlStatus grl_instance_dimension(const struct GrlInstance *instance, size_t *out);

/**
 * Counts the central idempotents by exhaustive enumeration, zero included.
 *
 * # Safety
 * `instance` must be a live handle and `out` a valid pointer.
 */
enum GrlStatus grl_instance_count_central_idempotents(const struct GrlInstance *instance,
                                                      uint64_t budget,
                                                      size_t *out);

/**
 * Checks the instance and writes the report as JSON to `report_json`.
 * `transforms` is NULL or a newline-separated list such as
 * `"dorroh\nphi"`.
 *
 * # Safety
 * `instance` must be a live handle; `transforms` NULL or a valid string;
 * `verdict` and `report_json` valid pointers. The report must be released
 * with [`grl_string_free`].
 */
enum GrlStatus grl_instance_check(const struct GrlInstance *instance,
                                  const char *transforms,
                                  size_t cap,
                                  uint64_t budget,
                                  enum GrlVerdict *verdict,
                                  char **report_json);

/**
 * Runs a built-in example by name and writes its report as JSON.
 *
 * # Safety
 * `name` must be a valid string; `verdict` and `report_json` valid
 * pointers. The report must be released with [`grl_string_free`].
 */
enum GrlStatus grl_fixture_run(const char *name,
                               size_t cap,
                               uint64_t budget,
                               enum GrlVerdict *verdict,
                               char **report_json);

/**
 * Message for the most recent failed call on this thread, or NULL. The
 * pointer stays valid until the next call into this library.
 */
const char *grl_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must be NULL or a string from this library that has not been freed.
 */
void grl_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRL_H */
