#ifndef PERMNORM_H
#define PERMNORM_H

/* Generated by cbindgen from permnorm-ffi. Do not edit; regenerate with: PERMNORM_BLESS_HEADER=1 cargo test -p permnorm-ffi --test header */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum {
  /**
   * The call succeeded and all out-parameters are filled in.
   */
  PN_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  PN_STATUS_NULL_ARGUMENT = 1,
  /**
   * A text argument was not valid UTF-8.
   */
  PN_STATUS_INVALID_UTF8 = 2,
  /**
   * The input text could not be parsed.
   */
  PN_STATUS_PARSE_ERROR = 3,
  /**
   * The input was well-formed but violated a precondition.
   */
  PN_STATUS_INVALID_INPUT = 4,
  /**
   * A configured enumeration, coset, or backtrack limit was exceeded.
   */
  PN_STATUS_RESOURCE_LIMIT = 5,
  /**
   * The library panicked; the panic was caught at the boundary.
   */
  PN_STATUS_PANIC = 6,
} PnStatus;

/**
 * A permutation group behind an opaque handle.
 */
typedef struct PnGroup PnGroup;

/**
 * Search limits; a zero field means the built-in default for that limit.
 */
typedef struct {
  /**
   * Cap on explicit element enumeration (default 1000000).
   */
  size_t enum_limit;
  /**
   * Cap on coset enumeration in the almost-simple path (default 4096).
   */
  size_t coset_limit;
  /**
   * Cap on backtrack nodes (default 10000000).
   */
  size_t backtrack_limit;
} PnLimits;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The default search limits.
 */
PnLimits pn_limits_default(void);

/**
 * Parses a group file (degree line, then one generator per line) into a
 * fresh handle. On success `*out_group` owns the group.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out_group` a valid
 * pointer.
 */
PnStatus pn_group_parse(const char *text, PnGroup **out_group);

/**
 * Builds a named fixture group (`cyclic-7`, `m11`, `wreath-5-1-2`, ...).
 *
 * # Safety
 * `name` must be a valid NUL-terminated string and `out_group` a valid
 * pointer.
 */
PnStatus pn_group_fixture(const char *name, PnGroup **out_group);

/**
 * Releases a handle. Null is a no-op.
 *
 * # Safety
 * `group` must be null or a handle from this library, not yet freed.
 */
void pn_group_free(PnGroup *group);

/**
 * Number of points the group acts on.
 *
 * # Safety
 * `group` must be a live handle and `out_degree` a valid pointer.
 */
PnStatus pn_group_degree(const PnGroup *group, size_t *out_degree);

/**
 * Group order as a decimal string (orders routinely exceed 64 bits).
 *
 * # Safety
 * `group` must be a live handle and `out_order` a valid pointer.
 */
PnStatus pn_group_order(const PnGroup *group, char **out_order);

/**
 * The group rendered back in group-file format.
 *
 * # Safety
 * `group` must be a live handle and `out_text` a valid pointer.
 */
PnStatus pn_group_text(const PnGroup *group, char **out_text);

/**
 * Primitivity classification plus normaliser in the symmetric group, as the
 * CLI's `classify` JSON report.
 *
 * # Safety
 * `group` must be a live handle and `out_json` a valid pointer.
 */
PnStatus pn_classify_json(const PnGroup *group, PnLimits limits, char **out_json);

/**
 * Normaliser of `group` inside `ambient` (null ambient means the full
 * symmetric group of the same degree), as the CLI's `normalizer` JSON
 * report.
 *
 * # Safety
 * `group` must be a live handle, `ambient` null or a live handle, and
 * `out_json` a valid pointer.
 */
PnStatus pn_normalizer_json(const PnGroup *group,
                            const PnGroup *ambient,
                            PnLimits limits,
                            char **out_json);

/**
 * Releases a string produced by this library. Null is a no-op.
 *
 * # Safety
 * `text` must be null or a string from this library, not yet freed.
 */
void pn_string_free(char *text);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* PERMNORM_H */
