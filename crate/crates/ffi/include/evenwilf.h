#ifndef EVENWILF_H
#define EVENWILF_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes.
 */
typedef enum ew_status {
  EW_STATUS_OK = 0,
  /*
   Text could not be parsed as a permutation or shape.
   */
  EW_STATUS_PARSE_ERROR = 1,
  /*
   An argument was out of range or inconsistent.
   */
  EW_STATUS_INVALID_ARGUMENT = 2,
  /*
   A resource budget (length, box size) was exceeded.
   */
  EW_STATUS_BUDGET_EXCEEDED = 3,
  /*
   The permutation is not a transversal of the shape.
   */
  EW_STATUS_NOT_TRANSVERSAL = 4,
  /*
   A required pointer argument was null.
   */
  EW_STATUS_NULL_POINTER = 5,
  /*
   No check with the given name exists.
   */
  EW_STATUS_UNKNOWN_CHECK = 6,
  /*
   Internal failure, including caught panics.
   */
  EW_STATUS_INTERNAL = 7,
} ew_status;

/*
 Opaque permutation handle.
 */
typedef struct ew_permutation ew_permutation;

/*
 Opaque transversal handle.
 */
typedef struct ew_transversal ew_transversal;

/*
 Avoider counts split by sign.
 */
typedef struct ew_counts {
  uint64_t total;
  uint64_t even;
  uint64_t odd;
} ew_counts;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the most recent failure on this thread, or null. The pointer
 stays valid until the next failing call on this thread.
 */
const char *ew_last_error_message(void);

/*
 Library version as a static NUL-terminated string.
 */
const char *ew_version(void);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void ew_string_free(char *s);

/*
 Parses one-line notation (`"2413"`, `"10 2 1 ..."`) into a new handle.

 # Safety
 `text_in` must be a NUL-terminated string; `out` must be writable.
 */
enum ew_status ew_permutation_parse(const char *text_in, struct ew_permutation **out);

/*
 # Safety
 `p` must be null or a handle from this library, freed at most once.
 */
void ew_permutation_free(struct ew_permutation *p);

/*
 Length of the permutation, or 0 for a null handle.

 # Safety
 `p` must be null or a valid handle.
 */
size_t ew_permutation_len(const struct ew_permutation *p);

/*
 1 if even, 0 if odd, -1 for a null handle.

 # Safety
 `p` must be null or a valid handle.
 */
int ew_permutation_is_even(const struct ew_permutation *p);

/*
 One-line notation as a new string (release with `ew_string_free`), or
 null for a null handle.

 # Safety
 `p` must be null or a valid handle.
 */
char *ew_permutation_to_string(const struct ew_permutation *p);

/*
 Views `perm` as a transversal of `shape` (row lengths, bottom row first,
 e.g. `"5,5,3,2,2"`), or of the square when `shape` is null.

 # Safety
 `shape` must be null or NUL-terminated; `perm` a valid handle; `out`
 writable.
 */
enum ew_status ew_transversal_new(const char *shape,
                                  const struct ew_permutation *perm,
                                  struct ew_transversal **out);

/*
 # Safety
 `t` must be null or a handle from this library, freed at most once.
 */
void ew_transversal_free(struct ew_transversal *t);

/*
 Copies the underlying permutation into a new handle.

 # Safety
 `t` must be a valid handle; `out` writable.
 */
enum ew_status ew_transversal_permutation(const struct ew_transversal *t,
                                          struct ew_permutation **out);

/*
 Counts permutations of length `n` avoiding `pattern`.

 # Safety
 `pattern` must be a valid handle; `out` writable.
 */
enum ew_status ew_count_avoiders(const struct ew_permutation *pattern,
                                 size_t n,
                                 struct ew_counts *out);

/*
 Counts transversals of `shape` avoiding `pattern`.

 # Safety
 `shape` must be NUL-terminated; `pattern` a valid handle; `out` writable.
 */
enum ew_status ew_count_avoiders_shape(const char *shape,
                                       const struct ew_permutation *pattern,
                                       struct ew_counts *out);

/*
 Applies the starred map with copy size `t`: forward (`backward == 0`)
 removes `J_t` copies, backward removes `F_t` copies. The number of single
 steps is written to `steps` when it is not null.

 # Safety
 `input` must be a valid handle; `out` writable; `steps` null or writable.
 */
enum ew_status ew_map(const struct ew_transversal *input,
                      size_t t,
                      int backward,
                      struct ew_transversal **out,
                      size_t *steps);

/*
 Runs a named check. Zero for `t`, `box_size`, `max_n` or `k` selects the
 check's default. The JSON report is written to `report_json` (release
 with `ew_string_free`); a refutation is reported there, not as an error.

 # Safety
 `name` must be NUL-terminated; `report_json` writable.
 */
enum ew_status ew_verify(const char *name,
                         size_t t,
                         size_t box_size,
                         size_t max_n,
                         size_t k,
                         char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EVENWILF_H */
