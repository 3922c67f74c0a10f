/* C interface to the expander-matching library. */

#ifndef EXPANDER_MATCHING_H
#define EXPANDER_MATCHING_H

/* Generated by cbindgen from the Rust sources; do not edit by hand. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result of every fallible call. Non-zero means the out-parameters are
// untouched and a message is available from `em_last_error_message`.
typedef enum {
  // The call succeeded.
  EM_OK = 0,
  // A required pointer argument was null.
  EM_NULL_ARGUMENT = 1,
  // Arguments were structurally invalid (bad sizes, parse failures,
  // parameters outside their domain).
  EM_INVALID_ARGUMENT = 2,
  // A file could not be read or written.
  EM_IO = 3,
  // A numeric routine failed to converge or sizes disagreed.
  EM_NUMERIC = 4,
  // The problem exceeds an exact-computation cap.
  EM_TOO_LARGE = 5,
  // A randomized routine exhausted its step, retry, or sample budget.
  EM_BUDGET_EXHAUSTED = 6,
  // A panic was caught at the boundary; the library state is unharmed
  // but the call did nothing.
  EM_PANIC = 7,
} em_status;

// Opaque graph handle.
typedef struct em_graph em_graph;

// Opaque matching handle.
typedef struct em_matching em_matching;

// Aggregate result of a counting run.
typedef struct {
  // Estimated number of perfect matchings.
  double estimate;
  // Natural log of the estimate (`-inf` when the estimate is zero).
  double log_estimate;
  // Total chain steps spent across all levels.
  uint64_t steps_total;
  // True when the top level never reached a perfect matching, which is
  // the expected outcome on graphs without one; `estimate` is then zero.
  bool degenerate_top;
} em_count_result;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Returns the library version as a static NUL-terminated string.
// The pointer is valid for the lifetime of the process; do not free it.
const char *em_version(void);

// Returns the most recent error message on this thread as a NUL-terminated
// string, or an empty string when no call has failed yet. The pointer stays
// valid until the next failing `em_` call on the same thread; do not free it.
const char *em_last_error_message(void);

// Frees a string previously returned by this library.
//
// # Safety
// `s` must be null or a pointer obtained from an `em_` function documented
// to transfer string ownership, and must not be used afterwards.
void em_string_free(char *s);

// Builds the complete graph on `2 * n` vertices.
//
// # Safety
// `out` must be a valid pointer to writable storage for one graph handle pointer.
em_status em_graph_complete(size_t n, em_graph **out);

// Builds the cocktail-party graph on `2 * n` vertices (the complete graph
// minus a perfect matching).
//
// # Safety
// `out` must be a valid pointer to writable storage for one graph handle pointer.
em_status em_graph_cocktail(size_t n, em_graph **out);

// Builds the Petersen graph.
//
// # Safety
// `out` must be a valid pointer to writable storage for one graph handle pointer.
em_status em_graph_petersen(em_graph **out);

// Samples a random `d`-regular simple graph on `2 * n` vertices,
// deterministically in `seed`.
//
// # Safety
// `out` must be a valid pointer to writable storage for one graph handle pointer.
em_status em_graph_random_regular(size_t n, size_t d, uint64_t seed, em_graph **out);

// Parses a graph from its text form (`"<num_vertices> <num_edges>"` header
// followed by one `u v` pair per line).
//
// # Safety
// `text` must be a valid NUL-terminated string; `out` must be a valid
// pointer to writable storage for one graph handle pointer.
em_status em_graph_from_text(const char *text, em_graph **out);

// Loads a graph from a text file.
//
// # Safety
// `path` must be a valid NUL-terminated UTF-8 path; `out` must be a valid
// pointer to writable storage for one graph handle pointer.
em_status em_graph_load(const char *path, em_graph **out);

// Writes a graph to a text file, creating or truncating it.
//
// # Safety
// `g` must be a live graph handle; `path` must be a valid NUL-terminated
// UTF-8 path.
em_status em_graph_save(const em_graph *g, const char *path);

// Releases a graph handle. Null is ignored.
//
// # Safety
// `g` must be null or a pointer returned by a graph constructor, and must
// not be used afterwards.
void em_graph_free(em_graph *g);

// Number of vertices, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live graph handle.
size_t em_graph_num_vertices(const em_graph *g);

// Number of edges, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live graph handle.
size_t em_graph_num_edges(const em_graph *g);

// Renders the graph in its text form. On success `*out` receives a
// NUL-terminated string owned by the caller; free it with `em_string_free`.
//
// # Safety
// `g` must be a live graph handle; `out` must be a valid pointer to
// writable storage for one `char*`.
em_status em_graph_to_text(const em_graph *g, char **out);

// Writes the graph's content hash (16 lowercase hex characters) to `*out`.
// The string is owned by the caller; free it with `em_string_free`.
//
// # Safety
// `g` must be a live graph handle; `out` must be a valid pointer to
// writable storage for one `char*`.
em_status em_graph_content_hash(const em_graph *g, char **out);

// Computes `sigma2`, the largest non-trivial eigenvalue magnitude of the
// degree-normalized adjacency matrix.
//
// # Safety
// `g` must be a live graph handle; `out_sigma2` must be a valid pointer to
// writable storage for one `double`.
em_status em_graph_sigma2(const em_graph *g, double *out_sigma2);

// Sets `*out_is` to whether the graph is an `eps`-expander, i.e. whether
// `sigma2 <= eps` up to a small fixed tolerance.
//
// # Safety
// `g` must be a live graph handle; `out_is` must be a valid pointer to
// writable storage for one `bool`.
em_status em_graph_is_expander(const em_graph *g, double eps, bool *out_is);

// Draws an approximately uniform perfect matching, deterministically in
// `seed`. `steps_override` of 0 uses the schedule derived from `eps` and
// `delta`; a positive value forces that many chain steps per checkpoint.
// Fails with `EM_BUDGET_EXHAUSTED` when no perfect matching is reached,
// which on a graph without one is the expected outcome.
//
// # Safety
// `g` must be a live graph handle; `out` must be a valid pointer to
// writable storage for one matching handle pointer.
em_status em_sample_perfect_matching(const em_graph *g,
                                     double eps,
                                     double delta,
                                     uint64_t seed,
                                     uint64_t steps_override,
                                     em_matching **out);

// Estimates the number of perfect matchings, deterministically in `seed`.
// A graph without any perfect matching yields `EM_OK` with
// `degenerate_top = true` and `estimate = 0`.
//
// # Safety
// `g` must be a live graph handle; `out` must be a valid pointer to
// writable storage for one count-result struct.
em_status em_count_perfect_matchings(const em_graph *g,
                                     double eps,
                                     double delta,
                                     uint64_t seed,
                                     em_count_result *out);

// Number of matched pairs, or 0 for a null handle.
//
// # Safety
// `m` must be null or a live matching handle.
size_t em_matching_size(const em_matching *m);

// Partner of vertex `v`, or -1 when `v` is unmatched or out of range.
//
// # Safety
// `m` must be a live matching handle.
int64_t em_matching_partner(const em_matching *m, size_t v);

// Copies the matched pairs into `buf` as `2 * em_matching_size(m)`
// interleaved vertex ids `u0 v0 u1 v1 ...`, ordered by smaller endpoint.
// `cap` is the capacity of `buf` in elements; the call fails with
// `EM_INVALID_ARGUMENT` when it is too small.
//
// # Safety
// `m` must be a live matching handle; `buf` must point to writable storage
// for at least `cap` elements of type `size_t`.
em_status em_matching_copy_pairs(const em_matching *m, size_t *buf, size_t cap);

// Releases a matching handle. Null is ignored.
//
// # Safety
// `m` must be null or a pointer returned by a sampling function, and must
// not be used afterwards.
void em_matching_free(em_matching *m);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EXPANDER_MATCHING_H */
