#ifndef DBWALK_H
#define DBWALK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum DbwStatus {
  DBW_STATUS_OK = 0,
  DBW_STATUS_NULL_POINTER = 1,
  DBW_STATUS_INVALID_UTF8 = 2,
  /**
   * Bad input or violated precondition.
   */
  DBW_STATUS_DOMAIN = 3,
  /**
   * A configured size cap would be exceeded.
   */
  DBW_STATUS_RESOURCE = 4,
  /**
   * The graph has no closed dominating walk.
   */
  DBW_STATUS_INFEASIBLE = 5,
  DBW_STATUS_PANIC = 6,
} DbwStatus;

typedef enum DbwGenerator {
  DBW_GENERATOR_FKM = 0,
  DBW_GENERATOR_GREEDY = 1,
  DBW_GENERATOR_EULERIAN = 2,
} DbwGenerator;

typedef enum DbwVerdict {
  DBW_VERDICT_PROVABLY_NOT_WATCHMAN = 0,
  DBW_VERDICT_PROVABLY_WATCHMAN = 1,
  DBW_VERDICT_UNDETERMINED = 2,
} DbwVerdict;

typedef enum DbwReason {
  DBW_REASON_CONSTANT_RUN = 0,
  DBW_REASON_DOUBLED_SEQUENCE = 1,
  DBW_REASON_DISTINCT_WINDOWS = 2,
  DBW_REASON_NONE = 3,
} DbwReason;

/**
 * Opaque digraph.
 */
typedef struct DbwGraph DbwGraph;

/**
 * Opaque cyclic sequence.
 */
typedef struct DbwSequence DbwSequence;

/**
 * Summary of an exact solve; the witness is available as JSON.
 */
typedef struct DbwSolveSummary {
  size_t optimum;
  uint64_t explored_states;
} DbwSolveSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. Valid
 * until the next failing call on the same thread.
 */
const char *dbw_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void dbw_string_free(char *s);

/**
 * # Safety
 * `text` must be a valid nul-terminated string; `out` must be writable.
 */
enum DbwStatus dbw_sequence_parse(const char *text, uint32_t alphabet, struct DbwSequence **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum DbwStatus dbw_sequence_generate(uint32_t alphabet,
                                     uint32_t order,
                                     enum DbwGenerator generator,
                                     struct DbwSequence **out);

/**
 * # Safety
 * `seq` must be null or a handle from this library, not yet freed.
 */
void dbw_sequence_free(struct DbwSequence *seq);

/**
 * Symbol count; 0 for a null handle.
 *
 * # Safety
 * `seq` must be null or a live handle.
 */
size_t dbw_sequence_len(const struct DbwSequence *seq);

/**
 * # Safety
 * `seq` must be a live handle; `out` must be writable.
 */
enum DbwStatus dbw_sequence_to_string(const struct DbwSequence *seq, char **out);

/**
 * # Safety
 * `seq` must be a live handle; `out` must be writable.
 */
enum DbwStatus dbw_sequence_is_de_bruijn(const struct DbwSequence *seq, uint32_t order, bool *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum DbwStatus dbw_graph_de_bruijn(uint32_t alphabet, uint32_t order, struct DbwGraph **out);

/**
 * # Safety
 * `seq` must be a live handle; `out` must be writable.
 */
enum DbwStatus dbw_graph_generated(const struct DbwSequence *seq,
                                   uint32_t order,
                                   struct DbwGraph **out);

/**
 * Parses the graph JSON format.
 *
 * # Safety
 * `json` must be a valid nul-terminated string; `out` must be writable.
 */
enum DbwStatus dbw_graph_from_json(const char *json, struct DbwGraph **out);

/**
 * # Safety
 * `graph` must be null or a handle from this library, not yet freed.
 */
void dbw_graph_free(struct DbwGraph *graph);

/**
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t dbw_graph_vertex_count(const struct DbwGraph *graph);

/**
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t dbw_graph_arc_count(const struct DbwGraph *graph);

/**
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum DbwStatus dbw_graph_to_json(const struct DbwGraph *graph, char **out);

/**
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum DbwStatus dbw_graph_to_dot(const struct DbwGraph *graph, char **out);

/**
 * `a^(k-1)`, for `k >= 2`.
 *
 * # Safety
 * `out` must be writable.
 */
enum DbwStatus dbw_watchman_number(uint32_t alphabet, uint32_t order, uint64_t *out);

/**
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum DbwStatus dbw_solve(const struct DbwGraph *graph, struct DbwSolveSummary *out);

/**
 * Solve result as JSON (`optimum`, `witness`, `explored_states`).
 *
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum DbwStatus dbw_solve_json(const struct DbwGraph *graph, char **out);

/**
 * Number of minimum closed dominating walks, one per rotation class.
 *
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum DbwStatus dbw_count_min_walks(const struct DbwGraph *graph, size_t *out);

/**
 * # Safety
 * `seq` must be a live handle; `verdict` and `reason` must be writable.
 */
enum DbwStatus dbw_classify(const struct DbwSequence *seq,
                            uint32_t order,
                            enum DbwVerdict *verdict,
                            enum DbwReason *reason);

/**
 * Verification record as JSON.
 *
 * # Safety
 * `seq` must be a live handle; `out` must be writable.
 */
enum DbwStatus dbw_verify_json(const struct DbwSequence *seq, uint32_t order, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DBWALK_H */
