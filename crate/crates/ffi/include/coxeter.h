#ifndef COXETER_H
#define COXETER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CxClass {
  CX_CLASS_SPHERICAL = 0,
  CX_CLASS_AFFINE = 1,
  CX_CLASS_STRONGLY_HYPERBOLIC = 2,
  CX_CLASS_WEAKLY_HYPERBOLIC = 3,
  CX_CLASS_HIGHER_RANK = 4,
} CxClass;

/**
 * Status codes. Values 1, 2, 3 and 5 match the CLI exit codes.
 */
typedef enum CxStatus {
  CX_STATUS_OK = 0,
  /**
   * Malformed graph text or an invalid graph.
   */
  CX_STATUS_PARSE_ERROR = 1,
  /**
   * Unknown name, bad tolerance, or an input the operation does not accept.
   */
  CX_STATUS_PRECONDITION = 2,
  /**
   * A search bound was exceeded.
   */
  CX_STATUS_RESOURCE = 3,
  /**
   * Numerical failure or internal invariant breach.
   */
  CX_STATUS_INTERNAL = 5,
  /**
   * Null pointer or non-UTF-8 string.
   */
  CX_STATUS_INVALID_ARGUMENT = 6,
  /**
   * A panic was caught at the boundary.
   */
  CX_STATUS_PANIC = 7,
} CxStatus;

/**
 * Opaque graph handle.
 */
typedef struct CxGraph CxGraph;

/**
 * Result of [`cx_classify`]. `lambda2` is NaN when the graph has one vertex.
 */
typedef struct CxClassification {
  enum CxClass class_;
  size_t p;
  size_t q;
  size_t r;
  double lambda1;
  double lambda2;
  double tolerance;
  bool exact;
  bool approximate;
} CxClassification;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses the graph text format. On success `*out` owns a new handle.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CxStatus cx_graph_parse(const char *text_ptr, struct CxGraph **out);

/**
 * Builds a fixture graph: `fig1`, `fig2` or `fig3_example`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CxStatus cx_graph_figure(const char *name, struct CxGraph **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `graph` must come from this library and not be freed twice.
 */
void cx_graph_free(struct CxGraph *graph);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t cx_graph_vertex_count(const struct CxGraph *graph);

/**
 * Serializes the graph in the text format.
 *
 * # Safety
 * `graph` must be a live handle and `out` a valid pointer.
 */
enum CxStatus cx_graph_serialize(const struct CxGraph *graph, char **out);

/**
 * Canonical form as lowercase hex.
 *
 * # Safety
 * `graph` must be a live handle and `out` a valid pointer.
 */
enum CxStatus cx_canonical_form_hex(const struct CxGraph *graph, char **out);

/**
 * Classifies the graph. `tolerance <= 0` selects the default `1e-8 * n`;
 * a positive value is an absolute band around 2.
 *
 * # Safety
 * `graph` must be a live handle and `out` a valid pointer.
 */
enum CxStatus cx_classify(const struct CxGraph *graph,
                          double tolerance,
                          struct CxClassification *out);

/**
 * Decomposes a connected higher-rank graph and writes the JSON report
 * (same document as `coxeter decompose --json`).
 *
 * # Safety
 * `graph` must be a live handle and `out` a valid pointer.
 */
enum CxStatus cx_decompose_json(const struct CxGraph *graph, char **out);

/**
 * Searches for a separated hyperbolic pair on graphs with at most `max_n`
 * vertices and writes the JSON report. `certificate` is null when none
 * exists.
 *
 * # Safety
 * `graph` must be a live handle and `out` a valid pointer.
 */
enum CxStatus cx_search_separated_json(const struct CxGraph *graph, size_t max_n, char **out);

/**
 * Message for the last failing call on this thread; empty after a success.
 * The pointer stays valid until the next call into the library.
 */
const char *cx_last_error_message(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void cx_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* COXETER_H */
