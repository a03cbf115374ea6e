/*
 * C interface for the lightsout library.
 *
 * All handle types are opaque; every constructor has a matching _free
 * function, and every fallible call returns an LoStatus with out-parameters
 * for results. Vertex sets are u64 bitmasks (bit v = vertex v), which is
 * also the library's hard capacity of 64 vertices.
 */

#ifndef LIGHTSOUT_H
#define LIGHTSOUT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call in this interface.
 */
typedef enum {
  /**
   * The call succeeded and all out-parameters are filled in.
   */
  LO_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  LO_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  LO_STATUS_INVALID_UTF8 = 2,
  /**
   * A graph description could not be parsed.
   */
  LO_STATUS_PARSE_ERROR = 3,
  /**
   * An argument was outside the supported range.
   */
  LO_STATUS_RANGE_ERROR = 4,
  /**
   * A graph exceeded the 64-vertex capacity.
   */
  LO_STATUS_CAPACITY_EXCEEDED = 5,
  /**
   * The requested configuration has no solution for this graph.
   */
  LO_STATUS_UNSOLVABLE = 6,
  /**
   * The provided buffer is too small; `written` holds the required size.
   */
  LO_STATUS_BUFFER_TOO_SMALL = 7,
  /**
   * An internal invariant failed (panic or numeric breakdown).
   */
  LO_STATUS_INTERNAL_ERROR = 8,
} LoStatus;

/**
 * A census/probability engine with internal memoization; reuse one handle
 * across calls to amortize enumeration work.
 */
typedef struct LoCatalog LoCatalog;

/**
 * An undirected graph handle.
 */
typedef struct LoGraph LoGraph;

/**
 * A uniform sampler over isomorphism classes with fixed vertex and edge
 * counts.
 */
typedef struct LoSampler LoSampler;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *lo_version(void);

/**
 * Static human-readable name for a status code.
 */
const char *lo_status_name(LoStatus status);

/**
 * Parse a graph from either graph6 (`"DQc"`) or an edge list
 * (`"n=5; 0-1,1-2"`). On success `*out` owns a new graph handle.
 *
 * # Safety
 * `text` must point to a NUL-terminated string; `out` must be valid.
 */
LoStatus lo_graph_parse(const char *text, LoGraph **out);

/**
 * Build a graph on `n` vertices from `pair_count` edges given as a flat
 * array `[u0, v0, u1, v1, ...]` of `2 * pair_count` vertex indices.
 * `endpoints` may be null when `pair_count` is zero.
 *
 * # Safety
 * `endpoints` must point to `2 * pair_count` readable entries.
 */
LoStatus lo_graph_from_edges(size_t n, const size_t *endpoints, size_t pair_count, LoGraph **out);

/**
 * Copy a graph handle.
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be valid.
 */
LoStatus lo_graph_clone(const LoGraph *g, LoGraph **out);

/**
 * Release a graph handle. Null is ignored.
 *
 * # Safety
 * `g` must be null or a handle returned by this library, not yet freed.
 */
void lo_graph_free(LoGraph *g);

/**
 * Number of vertices.
 *
 * # Safety
 * `g` and `out` must be valid.
 */
LoStatus lo_graph_vertex_count(const LoGraph *g, size_t *out);

/**
 * Number of edges.
 *
 * # Safety
 * `g` and `out` must be valid.
 */
LoStatus lo_graph_edge_count(const LoGraph *g, size_t *out);

/**
 * Whether vertices `u` and `v` are adjacent.
 *
 * # Safety
 * `g` and `out` must be valid.
 */
LoStatus lo_graph_has_edge(const LoGraph *g, size_t u, size_t v, bool *out);

/**
 * Complement graph as a new handle.
 *
 * # Safety
 * `g` and `out` must be valid.
 */
LoStatus lo_graph_complement(const LoGraph *g, LoGraph **out);

/**
 * Excess degree: (number of isolated vertices) + 2·(edges) − (vertices).
 *
 * # Safety
 * `g` and `out` must be valid.
 */
LoStatus lo_graph_excess_degree(const LoGraph *g, size_t *out);

/**
 * Render the graph in graph6 format into a caller buffer.
 * `written` always receives the required size including the terminator;
 * when `cap` is too small nothing is written and the call returns
 * `LO_STATUS_BUFFER_TOO_SMALL`.
 *
 * # Safety
 * `g` and `written` must be valid; `buf` must have `cap` writable bytes.
 */
LoStatus lo_graph_to_graph6(const LoGraph *g, char *buf, size_t cap, size_t *written);

/**
 * Whether every lamp configuration on this graph can be switched off.
 *
 * # Safety
 * `g` and `out` must be valid.
 */
LoStatus lo_graph_is_universally_solvable(const LoGraph *g, bool *out);

/**
 * Find a press set clearing the lamp configuration `lit` (bitmask).
 * Writes the press set to `presses` on success; returns
 * `LO_STATUS_UNSOLVABLE` when no press set works.
 *
 * # Safety
 * `g` and `presses` must be valid.
 */
LoStatus lo_graph_solve(const LoGraph *g, uint64_t lit, uint64_t *presses);

/**
 * Find an odd dominating set (a set whose closed neighborhoods cover every
 * vertex an odd number of times). `*found` reports existence; `*set` is the
 * bitmask, written only when found.
 *
 * # Safety
 * `g`, `found`, and `set` must be valid.
 */
LoStatus lo_graph_odd_dominating_set(const LoGraph *g, bool *found, uint64_t *set);

/**
 * Create a census/probability engine.
 *
 * # Safety
 * `out` must be valid.
 */
LoStatus lo_catalog_new(LoCatalog **out);

/**
 * Release a catalog handle. Null is ignored.
 *
 * # Safety
 * `cat` must be null or a handle returned by this library, not yet freed.
 */
void lo_catalog_free(LoCatalog *cat);

/**
 * Number of isomorphism classes of graphs with `n` vertices and `e` edges.
 * Returns `LO_STATUS_RANGE_ERROR` when the count does not fit in 64 bits.
 *
 * # Safety
 * `cat` and `out` must be valid.
 */
LoStatus lo_catalog_class_count(const LoCatalog *cat, size_t n, size_t e, uint64_t *out);

/**
 * Number of classes on `n` vertices with excess degree `d` whose complement
 * is universally solvable.
 *
 * # Safety
 * `cat` and `out` must be valid.
 */
LoStatus lo_catalog_excess_census_count(const LoCatalog *cat, size_t n, size_t d, uint64_t *out);

/**
 * Number of universally solvable classes with `n` vertices and
 * `C(n,2) − floor(n/2) − m` edges.
 *
 * # Safety
 * `cat` and `out` must be valid.
 */
LoStatus lo_catalog_solvable_census_count(const LoCatalog *cat, size_t n, size_t m, uint64_t *out);

/**
 * Exact probability that a uniformly random isomorphism class with `n`
 * vertices and `e` edges is universally solvable, rounded to f64.
 *
 * # Safety
 * `cat` and `out` must be valid.
 */
LoStatus lo_catalog_exact_probability(const LoCatalog *cat, size_t n, size_t e, double *out);

/**
 * Exact probability as a reduced fraction string, e.g. `"1/2"`.
 * Buffer semantics match [`lo_graph_to_graph6`].
 *
 * # Safety
 * `cat` and `written` must be valid; `buf` must have `cap` writable bytes.
 */
LoStatus lo_catalog_exact_probability_string(const LoCatalog *cat,
                                             size_t n,
                                             size_t e,
                                             char *buf,
                                             size_t cap,
                                             size_t *written);

/**
 * Create a uniform sampler over isomorphism classes with `n` vertices and
 * `e` edges.
 *
 * # Safety
 * `out` must be valid.
 */
LoStatus lo_sampler_new(size_t n, size_t e, LoSampler **out);

/**
 * Release a sampler handle. Null is ignored.
 *
 * # Safety
 * `sampler` must be null or a handle returned by this library, not yet freed.
 */
void lo_sampler_free(LoSampler *sampler);

/**
 * Draw one uniform sample as a new graph handle. Draws are deterministic in
 * `(seed, index)` and independent across indices, so a sequence of draws can
 * be reproduced or distributed in any order.
 *
 * # Safety
 * `sampler` and `out` must be valid.
 */
LoStatus lo_sampler_draw(const LoSampler *sampler, uint64_t seed, uint64_t index, LoGraph **out);

/**
 * Monte Carlo estimate of the probability that a uniform isomorphism class
 * with `n` vertices and `e` edges is universally solvable. Writes the point
 * estimate and its 95% margin of error. `workers = 0` means one worker.
 *
 * # Safety
 * `p_hat` and `moe95` must be valid.
 */
LoStatus lo_estimate_probability(size_t n,
                                 size_t e,
                                 uint64_t trials,
                                 uint64_t seed,
                                 size_t workers,
                                 double *p_hat,
                                 double *moe95);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIGHTSOUT_H */
