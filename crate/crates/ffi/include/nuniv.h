#ifndef NUNIV_H
#define NUNIV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum NunivStatus {
  NUNIV_STATUS_OK = 0,
  /**
   * A required pointer was NULL or a string was not UTF-8.
   */
  NUNIV_STATUS_NULL_OR_ENCODING = 1,
  /**
   * Malformed alphabet, word, or parameter.
   */
  NUNIV_STATUS_INVALID = 2,
  /**
   * The operation's precondition does not hold for the input.
   */
  NUNIV_STATUS_PRECONDITION = 3,
  /**
   * The configured budget is too small for the requested enumeration.
   */
  NUNIV_STATUS_CAPACITY = 4,
  /**
   * A count does not fit the result type.
   */
  NUNIV_STATUS_OVERFLOW = 5,
  /**
   * An internal invariant failed; the library state is unaffected.
   */
  NUNIV_STATUS_INTERNAL = 6,
} NunivStatus;

/**
 * Which scattered factors two congruent words must share.
 */
typedef enum NunivMode {
  /**
   * Equal sets of length-k factors.
   */
  NUNIV_MODE_EXACT_K = 0,
  /**
   * Equal sets of length-j factors for every j <= k.
   */
  NUNIV_MODE_UP_TO_K = 1,
} NunivMode;

/**
 * An ordered alphabet of distinct lowercase ASCII letters.
 */
typedef struct NunivAlphabet NunivAlphabet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates an alphabet from its letters in order (e.g. `"abc"`).
 *
 * # Safety
 * `spec` is a NUL-terminated string; `out` is valid for writes.
 */
enum NunivStatus nuniv_alphabet_new(const char *spec, struct NunivAlphabet **out);

/**
 * Releases an alphabet. NULL is ignored.
 *
 * # Safety
 * `alpha` is NULL or a live handle; it must not be used afterwards.
 */
void nuniv_alphabet_free(struct NunivAlphabet *alpha);

/**
 * Number of letters, or 0 for NULL.
 *
 * # Safety
 * `alpha` is NULL or a live handle.
 */
size_t nuniv_alphabet_size(const struct NunivAlphabet *alpha);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` is NULL or a string returned by this library and not yet freed.
 */
void nuniv_string_free(char *s);

/**
 * Message for the last failure on this thread, or NULL. Valid until the next
 * failing call on the same thread; do not free.
 */
const char *nuniv_last_error(void);

/**
 * Number of arches of `word`.
 *
 * # Safety
 * Pointers follow the crate conventions; `out` is valid for writes.
 */
enum NunivStatus nuniv_universality_index(const struct NunivAlphabet *alpha,
                                          const char *word,
                                          size_t *out);

/**
 * Number of absent length-`k` scattered factors. Fails with
 * `NUNIV_STATUS_OVERFLOW` when it exceeds 2^64 - 1.
 *
 * # Safety
 * Pointers follow the crate conventions; `out` is valid for writes.
 */
enum NunivStatus nuniv_deficiency(const struct NunivAlphabet *alpha,
                                  const char *word,
                                  size_t k,
                                  uint64_t *out);

/**
 * Decides nearly `k`-universality. On success `*is_nearly` holds the verdict;
 * if `absent` is not NULL it receives the absent factor (caller frees) or NULL
 * when the word is not nearly `k`-universal.
 *
 * # Safety
 * Pointers follow the crate conventions; `is_nearly` is valid for writes and
 * `absent` is NULL or valid for writes.
 */
enum NunivStatus nuniv_check_nearly(const struct NunivAlphabet *alpha,
                                    const char *word,
                                    size_t k,
                                    bool *is_nearly,
                                    char **absent);

/**
 * The minimal word whose only absent `|u|`-factor is `u` (caller frees).
 *
 * # Safety
 * Pointers follow the crate conventions; `out` is valid for writes.
 */
enum NunivStatus nuniv_construct(const struct NunivAlphabet *alpha, const char *u, char **out);

/**
 * Absent length-`k` factors, sorted and separated by single spaces (caller
 * frees). With `structured` set the candidate-graph method is used, which
 * requires exactly `k-1` arches.
 *
 * # Safety
 * Pointers follow the crate conventions; `out` is valid for writes.
 */
enum NunivStatus nuniv_absent_factors(const struct NunivAlphabet *alpha,
                                      const char *word,
                                      size_t k,
                                      bool structured,
                                      uint64_t budget,
                                      char **out);

/**
 * Simon congruence of `w1` and `w2` at level `k`; `mode` is a `NunivMode` value.
 *
 * # Safety
 * Pointers follow the crate conventions; `out` is valid for writes.
 */
enum NunivStatus nuniv_congruent(const struct NunivAlphabet *alpha,
                                 const char *w1,
                                 const char *w2,
                                 size_t k,
                                 uint32_t mode,
                                 uint64_t budget,
                                 bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NUNIV_H */
