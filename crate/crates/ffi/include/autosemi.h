#ifndef AUTOSEMI_H
#define AUTOSEMI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a call. Decision questions answer `OK` for yes and `NO` for no.
 */
typedef enum AutosemiStatus {
  AUTOSEMI_STATUS_OK = 0,
  AUTOSEMI_STATUS_NO = 1,
  AUTOSEMI_STATUS_ERROR = 2,
  AUTOSEMI_STATUS_NULL_ARGUMENT = 3,
  AUTOSEMI_STATUS_INVALID_UTF8 = 4,
  AUTOSEMI_STATUS_PANIC = 5,
} AutosemiStatus;

typedef enum AutosemiProperty {
  AUTOSEMI_PROPERTY_HAS_ZERO = 0,
  AUTOSEMI_PROPERTY_HAS_IDENTITY = 1,
  AUTOSEMI_PROPERTY_RIGHT_CANCELLATIVE = 2,
  AUTOSEMI_PROPERTY_COMPLETELY_SIMPLE = 3,
  AUTOSEMI_PROPERTY_COMPLETELY_ZERO_SIMPLE = 4,
  AUTOSEMI_PROPERTY_HAS_LEFT_ZERO = 5,
} AutosemiProperty;

/**
 * An interpreted automatic structure with its decision procedures.
 */
typedef struct AutosemiStructure AutosemiStructure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; valid until the next failing call.
 */
const char *autosemi_last_error(void);

/**
 * Static version string.
 */
const char *autosemi_version(void);

/**
 * Load a structure from a JSON document.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum AutosemiStatus autosemi_structure_from_json(const char *json, struct AutosemiStructure **out);

/**
 * Build the structure of a finite semigroup from a table: the order `n`, then `n` rows of
 * `n` element indices.
 *
 * # Safety
 * `table` must be a nul-terminated string and `out` a valid pointer.
 */
enum AutosemiStatus autosemi_structure_from_cayley(const char *table,
                                                   struct AutosemiStructure **out);

/**
 * The bicyclic monoid on `q`, `p` with `pq = 1`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum AutosemiStatus autosemi_structure_bicyclic(struct AutosemiStructure **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. Null is ignored.
 */
void autosemi_structure_free(struct AutosemiStructure *s);

/**
 * # Safety
 * `s` must be a string returned by this library. Null is ignored.
 */
void autosemi_string_free(char *s);

/**
 * Serialize a structure as a JSON document.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum AutosemiStatus autosemi_structure_to_json(const struct AutosemiStructure *s, char **out);

/**
 * Representative of a word, written in the structure's notation.
 *
 * # Safety
 * `s` must be a live handle, `word` a nul-terminated string, `out` a valid pointer.
 */
enum AutosemiStatus autosemi_find_representative(const struct AutosemiStructure *s,
                                                 const char *word,
                                                 char **out);

/**
 * `OK` if `u` and `v` represent the same element, `NO` otherwise.
 *
 * # Safety
 * `s` must be a live handle; `u` and `v` nul-terminated strings.
 */
enum AutosemiStatus autosemi_word_problem(const struct AutosemiStructure *s,
                                          const char *u,
                                          const char *v);

/**
 * # Safety
 * `s` must be a live handle.
 */
enum AutosemiStatus autosemi_property(const struct AutosemiStructure *s,
                                      enum AutosemiProperty property);

/**
 * `OK` if the word represents a unit of the monoid; `ERROR` if there is no identity.
 *
 * # Safety
 * `s` must be a live handle and `word` a nul-terminated string.
 */
enum AutosemiStatus autosemi_is_unit(const struct AutosemiStructure *s, const char *word);

/**
 * Rees matrix decomposition as JSON. `simple` nonzero treats the input as completely simple.
 * Returns `NO` (and leaves `out` untouched) when the semigroup has no such decomposition.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum AutosemiStatus autosemi_rees_json(const struct AutosemiStructure *s,
                                       int32_t simple,
                                       char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AUTOSEMI_H */
