#ifndef ARTIN_H
#define ARTIN_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call.
 */
typedef enum ArtinStatus {
  ARTIN_STATUS_OK = 0,
  ARTIN_STATUS_NULL_POINTER = 1,
  ARTIN_STATUS_INVALID_UTF8 = 2,
  ARTIN_STATUS_PARSE = 3,
  ARTIN_STATUS_PRECONDITION = 4,
  /**
   * A search limit was reached before an answer was found.
   */
  ARTIN_STATUS_BUDGET = 5,
  ARTIN_STATUS_PANIC = 6,
} ArtinStatus;

/**
 * Outcome of [`artin_words_equal`].
 */
typedef enum ArtinEquality {
  ARTIN_EQUALITY_NOT_EQUAL = 0,
  ARTIN_EQUALITY_EQUAL = 1,
  /**
   * Not shown equal within the search limits.
   */
  ARTIN_EQUALITY_NOT_EQUAL_UP_TO_BOUND = 2,
} ArtinEquality;

/**
 * A parsed defining graph.
 */
typedef struct ArtinGraph ArtinGraph;

/**
 * A word-problem oracle for one graph, with its caches.
 */
typedef struct ArtinOracle ArtinOracle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *artin_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void artin_string_free(char *s);

/**
 * Parses a defining graph such as `"a b c; a b 3; b c 3"`.
 *
 * # Safety
 * `text_ptr` must be a NUL-terminated string and `out_graph` a valid pointer.
 */
enum ArtinStatus artin_graph_parse(const char *text_ptr, struct ArtinGraph **out_graph);

/**
 * Frees a graph. NULL is ignored.
 *
 * # Safety
 * `graph` must come from [`artin_graph_parse`] and not have been freed.
 */
void artin_graph_free(struct ArtinGraph *graph);

/**
 * Number of generators.
 *
 * # Safety
 * `graph` must be a live handle and `out_rank` a valid pointer.
 */
enum ArtinStatus artin_graph_rank(const struct ArtinGraph *graph, size_t *out_rank);

/**
 * Writes the covering case of the main theorem as JSON, e.g.
 * `{"case":"LargeTriangle","witness":["a","b","c"]}`.
 *
 * # Safety
 * `graph` must be a live handle and `out_json` a valid pointer.
 */
enum ArtinStatus artin_graph_classify(const struct ArtinGraph *graph, char **out_json);

/**
 * Whether the special subgroup on the space-separated generator names is
 * of spherical type. An empty string names the trivial subgroup.
 *
 * # Safety
 * `graph` must be a live handle, `names` a NUL-terminated string and
 * `out_spherical` a valid pointer.
 */
enum ArtinStatus artin_graph_is_spherical(const struct ArtinGraph *graph,
                                          const char *names,
                                          bool *out_spherical);

/**
 * Creates an oracle with default search limits. The graph may be freed
 * afterwards.
 *
 * # Safety
 * `graph` must be a live handle and `out_oracle` a valid pointer.
 */
enum ArtinStatus artin_oracle_new(const struct ArtinGraph *graph, struct ArtinOracle **out_oracle);

/**
 * Frees an oracle. NULL is ignored.
 *
 * # Safety
 * `oracle` must come from [`artin_oracle_new`] and not have been freed.
 */
void artin_oracle_free(struct ArtinOracle *oracle);

/**
 * Decides whether two words spell the same element.
 *
 * # Safety
 * `oracle` must be a live handle, `u` and `v` NUL-terminated strings and
 * `out_result` a valid pointer.
 */
enum ArtinStatus artin_words_equal(const struct ArtinOracle *oracle,
                                   const char *u,
                                   const char *v,
                                   enum ArtinEquality *out_result);

/**
 * Whether the word is geodesic over the standard generators.
 *
 * # Safety
 * `oracle` must be a live handle, `w` a NUL-terminated string and
 * `out_geodesic` a valid pointer.
 */
enum ArtinStatus artin_is_geodesic(const struct ArtinOracle *oracle,
                                   const char *w,
                                   bool *out_geodesic);

/**
 * Length of a geodesic word for the element.
 *
 * # Safety
 * `oracle` must be a live handle, `w` a NUL-terminated string and
 * `out_len` a valid pointer.
 */
enum ArtinStatus artin_geodesic_length(const struct ArtinOracle *oracle,
                                       const char *w,
                                       size_t *out_len);

/**
 * Number of maximal same-sign blocks of the word as written.
 *
 * # Safety
 * `oracle` must be a live handle, `w` a NUL-terminated string and
 * `out_len` a valid pointer.
 */
enum ArtinStatus artin_monoidal_length(const struct ArtinOracle *oracle,
                                       const char *w,
                                       size_t *out_len);

/**
 * Distance from `g` to `h` in the Cayley graph whose generators are the
 * positive elements of word length at most `factor_bound`, searched up to
 * `cap` (0 for no cap). `out_witness`, if not NULL, receives a shortest
 * factorization such as `"[a b][c' a']"`. Returns `Budget` when the
 * distance was not settled.
 *
 * # Safety
 * `oracle` must be a live handle, `g` and `h` NUL-terminated strings,
 * `out_distance` a valid pointer and `out_witness` NULL or valid.
 */
enum ArtinStatus artin_m_distance(const struct ArtinOracle *oracle,
                                  const char *g,
                                  const char *h,
                                  size_t factor_bound,
                                  uint32_t cap,
                                  uint32_t *out_distance,
                                  char **out_witness);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ARTIN_H */
