#ifndef GIRTHLAB_H
#define GIRTHLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result code of every fallible call.
 */
typedef enum {
  GL_STATUS_OK = 0,
  GL_STATUS_NULL_POINTER = 1,
  GL_STATUS_INVALID_ARGUMENT = 2,
  GL_STATUS_PARSE_ERROR = 3,
  GL_STATUS_GRAPH_ERROR = 4,
  GL_STATUS_NOT_FOUND = 5,
  GL_STATUS_PRECONDITION = 6,
  GL_STATUS_TOO_LARGE = 7,
  GL_STATUS_BUFFER_TOO_SMALL = 8,
  GL_STATUS_NUMERIC = 9,
  GL_STATUS_PANIC = 10,
} GlStatus;

/**
 * Opaque digraph handle.
 */
typedef struct GlDigraph GlDigraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last non-OK status on this thread; valid until the next call.
 */
const char *gl_last_error(void);

/**
 * Builds a digraph from `edge_count` pairs stored flat in `edges`.
 *
 * # Safety
 * `edges` must point to `2 * edge_count` readable values (or be null when
 * `edge_count == 0`); `out` must be writable.
 */
GlStatus gl_digraph_from_edges(size_t n, const size_t *edges, size_t edge_count, GlDigraph **out);

/**
 * Parses the edge-list text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
GlStatus gl_digraph_parse(const char *text, GlDigraph **out);

/**
 * # Safety
 * `offsets` must point to `count` readable values; `out` must be writable.
 */
GlStatus gl_digraph_circulant(size_t n, const size_t *offsets, size_t count, GlDigraph **out);

/**
 * # Safety
 * `out` must be writable.
 */
GlStatus gl_digraph_random_outregular(size_t n, size_t r, uint64_t seed, GlDigraph **out);

/**
 * # Safety
 * `out` must be writable.
 */
GlStatus gl_digraph_random_mfree(size_t n,
                                 size_t m,
                                 double density,
                                 uint64_t seed,
                                 GlDigraph **out);

/**
 * # Safety
 * `d` must be null or a handle from this library not freed before.
 */
void gl_digraph_free(GlDigraph *d);

/**
 * Vertex count, or 0 for a null handle.
 *
 * # Safety
 * `d` must be null or a live handle.
 */
size_t gl_digraph_n(const GlDigraph *d);

/**
 * Edge count, or 0 for a null handle.
 *
 * # Safety
 * `d` must be null or a live handle.
 */
size_t gl_digraph_edge_count(const GlDigraph *d);

/**
 * Missing edges, or 0 for a null handle.
 *
 * # Safety
 * `d` must be null or a live handle.
 */
size_t gl_gamma(const GlDigraph *d);

/**
 * Canonical edge-list text.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
GlStatus gl_digraph_to_text(const GlDigraph *d, char **out);

/**
 * `NotFound` when the digraph is acyclic.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
GlStatus gl_girth(const GlDigraph *d, size_t *out);

/**
 * Writes a shortest cycle into `buf`; `out_len` receives its length even
 * when `cap` is too small.
 *
 * # Safety
 * `d` must be a live handle, `buf` writable for `cap` values, `out_len` writable.
 */
GlStatus gl_shortest_cycle(const GlDigraph *d, size_t *buf, size_t cap, size_t *out_len);

/**
 * Constructive search for a cycle of length at most `m` under minimum
 * outdegree `ceil(alpha n)`.
 *
 * # Safety
 * As for `gl_shortest_cycle`.
 */
GlStatus gl_find_short_cycle(const GlDigraph *d,
                             size_t m,
                             double alpha,
                             size_t *buf,
                             size_t cap,
                             size_t *out_len);

/**
 * Exact minimum feedback arc set size (`n <= 20`).
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
GlStatus gl_beta(const GlDigraph *d, size_t *out);

/**
 * JSON object with `edges`, `vertices` and `global` statistics.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
GlStatus gl_edge_stats_json(const GlDigraph *d, char **out);

/**
 * Root of `(1-x)^(m-2) = 3x/(2-x)` in `(0, 1)`.
 *
 * # Safety
 * `out` must be writable.
 */
GlStatus gl_alpha(size_t m, double *out);

/**
 * # Safety
 * `out` must be writable.
 */
GlStatus gl_c(size_t m, double *out);

/**
 * # Safety
 * `out_a` and `out_b` must be writable.
 */
GlStatus gl_ab(size_t m, double alpha, double *out_a, double *out_b);

/**
 * # Safety
 * `out` must be writable.
 */
GlStatus gl_tau_star(size_t m, double alpha, double *out);

/**
 * `W0(2(m - 2.5)/3) / (m - 2.5)`.
 *
 * # Safety
 * `out` must be writable.
 */
GlStatus gl_lambert_bound(size_t m, double *out);

/**
 * Principal branch of the Lambert W function.
 *
 * # Safety
 * `out` must be writable.
 */
GlStatus gl_lambert_w0(double x, double *out);

/**
 * `*out_certified` is set on `Ok`; `grid` of 0 selects the default.
 *
 * # Safety
 * `out_certified` must be writable.
 */
GlStatus gl_certify_theorem2(size_t m, double alpha, size_t grid, bool *out_certified);

/**
 * JSON array of per-`m` constant rows for `m_from..=m_to`.
 *
 * # Safety
 * `out` must be writable.
 */
GlStatus gl_bound_table_json(size_t m_from, size_t m_to, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not freed before.
 */
void gl_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GIRTHLAB_H */
