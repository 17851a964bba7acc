#ifndef B0VPG_H
#define B0VPG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum B0vpgStatus {
  B0VPG_STATUS_OK = 0,
  B0VPG_STATUS_NULL_POINTER = 1,
  B0VPG_STATUS_INVALID_ARGUMENT = 2,
  B0VPG_STATUS_PARSE = 3,
  B0VPG_STATUS_WRONG_VERDICT = 4,
  B0VPG_STATUS_BUFFER_TOO_SMALL = 5,
  B0VPG_STATUS_INTERNAL = 6,
  B0VPG_STATUS_PANIC = 7,
} B0vpgStatus;

typedef enum B0vpgVerdict {
  B0VPG_VERDICT_ACCEPT = 0,
  B0VPG_VERDICT_REJECT = 1,
  B0VPG_VERDICT_NOT_BLOCK_GRAPH = 2,
} B0vpgVerdict;

// Opaque graph handle.
typedef struct B0vpgGraph B0vpgGraph;

// Opaque recognition result handle.
typedef struct B0vpgResult B0vpgResult;

// One grid path. `horizontal` is 1 for a horizontal path and 0 for a
// vertical one; `line` is its row or column, `lo..=hi` its span.
typedef struct B0vpgPath {
  size_t vertex;
  uint8_t horizontal;
  int64_t line;
  int64_t lo;
  int64_t hi;
} B0vpgPath;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer
// stays valid until the next failing call on the same thread.
const char *b0vpg_last_error(void);

// New graph with `n` isolated vertices.
struct B0vpgGraph *b0vpg_graph_new(size_t n);

// Adds the edge `u v` (0-based). Adding an existing edge is not an error.
//
// # Safety
// `graph` must be null or a live handle from this library.
enum B0vpgStatus b0vpg_graph_add_edge(struct B0vpgGraph *graph, size_t u, size_t v);

// Parses a graph file (`p n m` header, `e u v` lines, 1-based ids).
//
// # Safety
// `text` must be null or a nul-terminated string; `out` must be null or
// valid for a pointer write.
enum B0vpgStatus b0vpg_graph_parse(const char *text, struct B0vpgGraph **out);

// Number of vertices, or 0 for a null handle.
//
// # Safety
// `graph` must be null or a live handle.
size_t b0vpg_graph_vertex_count(const struct B0vpgGraph *graph);

// # Safety
// `graph` must be null or a handle not yet freed.
void b0vpg_graph_free(struct B0vpgGraph *graph);

// Recognizes `graph`. `seed` is used only when `use_seed` is nonzero; a
// negative `start_block` keeps the default start.
//
// # Safety
// `graph` must be null or a live handle; `out` must be null or valid for a
// pointer write.
enum B0vpgStatus b0vpg_recognize(const struct B0vpgGraph *graph,
                                 uint8_t use_seed,
                                 uint64_t seed,
                                 int64_t start_block,
                                 struct B0vpgResult **out);

// # Safety
// `result` must be a live handle.
enum B0vpgVerdict b0vpg_result_verdict(const struct B0vpgResult *result);

// Number of paths of an accepted result, 0 otherwise.
//
// # Safety
// `result` must be null or a live handle.
size_t b0vpg_result_path_count(const struct B0vpgResult *result);

// Copies the path of vertex `index` of an accepted result.
//
// # Safety
// `result` must be null or a live handle; `out` must be null or valid for
// a write.
enum B0vpgStatus b0vpg_result_path(const struct B0vpgResult *result,
                                   size_t index,
                                   struct B0vpgPath *out);

// Copies the certificate of a rejected result: `k` and the 0-based vertex
// ids. `*len` always receives the number of vertices; when it exceeds
// `capacity` nothing is copied and the call fails with `BufferTooSmall`.
//
// # Safety
// `result` must be null or a live handle; `k` and `len` must be null or
// valid for writes; `vertices` must be valid for `capacity` writes.
enum B0vpgStatus b0vpg_result_certificate(const struct B0vpgResult *result,
                                          size_t *k,
                                          size_t *vertices,
                                          size_t capacity,
                                          size_t *len);

// JSON for the result: the representation file on accept, the
// certificate file otherwise. Free with [`b0vpg_string_free`]. Null on a
// null handle.
//
// # Safety
// `result` must be null or a live handle.
char *b0vpg_result_to_json(const struct B0vpgResult *result);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void b0vpg_string_free(char *s);

// # Safety
// `result` must be null or a handle not yet freed.
void b0vpg_result_free(struct B0vpgResult *result);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* B0VPG_H */
