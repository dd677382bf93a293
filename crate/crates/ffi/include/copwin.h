/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef COPWIN_H
#define COPWIN_H

#pragma once

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CopwinStatus {
  COPWIN_STATUS_OK = 0,
  COPWIN_STATUS_NULL_POINTER = 1,
  COPWIN_STATUS_INVALID_ARGUMENT = 2,
  COPWIN_STATUS_PARSE = 3,
  COPWIN_STATUS_NOT_CONSTRUCTIBLE = 4,
  COPWIN_STATUS_STRATEGY = 5,
  COPWIN_STATUS_BUFFER_TOO_SMALL = 6,
  COPWIN_STATUS_PANIC = 7,
} CopwinStatus;

typedef enum CopwinCop {
  COPWIN_COP_S_STAR = 0,
  COPWIN_COP_RECURSIVE = 1,
  COPWIN_COP_PROTECTIVE = 2,
  COPWIN_COP_OPTIMAL = 3,
} CopwinCop;

typedef enum CopwinRobber {
  COPWIN_ROBBER_STATIONARY = 0,
  COPWIN_ROBBER_GREEDY = 1,
  COPWIN_ROBBER_ADVERSARIAL = 2,
} CopwinRobber;

// A finite reflexive graph.
typedef struct CopwinGraph CopwinGraph;

// A dominating order of some graph.
typedef struct CopwinOrder CopwinOrder;

typedef struct CopwinGameResult {
  bool captured;
  // Capture round, or the number of rounds played.
  size_t rounds;
  size_t max_visits;
} CopwinGameResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after success.
// The pointer stays valid until the next call on the same thread.
const char *copwin_last_error(void);

// Parses the graph text format (vertex count, then `u v` edge lines).
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum CopwinStatus copwin_graph_from_text(const char *text, struct CopwinGraph **out);

// Builds a named family, e.g. `("cycle", "n=5")`. `seed` is used by the
// random families when `has_seed` is set; `radius` sizes the ball of the
// infinite families when `has_radius` is set.
//
// # Safety
// `family` and `params` must be NUL-terminated strings and `out` a valid pointer.
enum CopwinStatus copwin_graph_from_family(const char *family,
                                           const char *params,
                                           uint64_t seed,
                                           bool has_seed,
                                           size_t radius,
                                           bool has_radius,
                                           struct CopwinGraph **out);

// # Safety
// `graph` must come from this library and not be freed twice. Null is ignored.
void copwin_graph_free(struct CopwinGraph *graph);

// # Safety
// `graph` must be a live handle and `out` a valid pointer.
enum CopwinStatus copwin_graph_order(const struct CopwinGraph *graph, size_t *out);

// Adjacency including loops: every vertex is adjacent to itself.
//
// # Safety
// `graph` must be a live handle and `out` a valid pointer.
enum CopwinStatus copwin_graph_adjacent(const struct CopwinGraph *graph,
                                        size_t u,
                                        size_t v,
                                        bool *out);

// Exact decision of the one-cop game.
//
// # Safety
// `graph` must be a live handle and `out` a valid pointer.
enum CopwinStatus copwin_decide_cop_win(const struct CopwinGraph *graph, bool *out);

// Greedy dominating order. Returns `NotConstructible` and leaves `*out`
// null when there is none.
//
// # Safety
// `graph` must be a live handle and `out` a valid pointer.
enum CopwinStatus copwin_find_dominating_order(const struct CopwinGraph *graph,
                                               struct CopwinOrder **out);

// # Safety
// `order` must come from this library and not be freed twice. Null is ignored.
void copwin_order_free(struct CopwinOrder *order);

// Copies the vertex sequence into `buf`. `*len` holds the capacity on entry
// and the sequence length on return; a short buffer yields `BufferTooSmall`.
//
// # Safety
// `order` must be a live handle, `len` valid, and `buf` valid for `*len` writes.
enum CopwinStatus copwin_order_sequence(const struct CopwinOrder *order, size_t *buf, size_t *len);

// # Safety
// Both handles must be live and `out` a valid pointer.
enum CopwinStatus copwin_order_verify(const struct CopwinGraph *graph,
                                      const struct CopwinOrder *order,
                                      bool *out);

// Plays one game with the robber choosing his own start. `order` may be
// null, in which case one is computed; `horizon` 0 selects the default.
//
// # Safety
// `graph` must be a live handle, `order` null or live, `out` valid.
enum CopwinStatus copwin_play(const struct CopwinGraph *graph,
                              const struct CopwinOrder *order,
                              enum CopwinCop cop,
                              enum CopwinRobber robber,
                              size_t horizon,
                              struct CopwinGameResult *out);

// Text form of a graph; release with [`copwin_string_free`].
//
// # Safety
// `graph` must be a live handle and `out` a valid pointer.
enum CopwinStatus copwin_graph_to_text(const struct CopwinGraph *graph, char **out);

// # Safety
// `s` must come from this library and not be freed twice. Null is ignored.
void copwin_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COPWIN_H */
