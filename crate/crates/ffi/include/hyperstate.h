/* C interface to the hyperstate library. */

#ifndef HYPERSTATE_H
#define HYPERSTATE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible call.
 */
typedef enum HsStatus {
  HS_STATUS_OK = 0,
  HS_STATUS_INVALID_ARGUMENT = 1,
  HS_STATUS_UNSUPPORTED_SIZE = 2,
  HS_STATUS_PARSE_ERROR = 3,
  HS_STATUS_NULL_POINTER = 4,
  HS_STATUS_INVALID_UTF8 = 5,
} HsStatus;

/**
 * Opaque hypergraph.
 */
typedef struct HsHypergraph HsHypergraph;

/**
 * Opaque entanglement-measure result.
 */
typedef struct HsResult HsResult;

/**
 * Opaque dense state vector.
 */
typedef struct HsState HsState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread, or NULL if no
 * call has failed yet. The pointer stays valid until the next failing call
 * on the same thread; do not free it.
 */
const char *hs_last_error_message(void);

/**
 * Release a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must be a string obtained from this library and not yet freed.
 */
void hs_string_free(char *s);

/**
 * Equally weighted superposition of all 2^n basis states.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum HsStatus hs_uniform_superposition(size_t n, struct HsState **out);

/**
 * State after the first oracle call for the given solution indices:
 * amplitudes (−1)^{f(x)} / sqrt(2^n).
 *
 * # Safety
 * `solutions` must point to `solution_count` readable values (or be unused
 * with a zero count) and `out` must be a valid pointer.
 */
enum HsStatus hs_rew_state(size_t n,
                           const size_t *solutions,
                           size_t solution_count,
                           struct HsState **out);

/**
 * Number of qubits of a state.
 *
 * # Safety
 * `state` must be a live handle from this library; `out` must be valid.
 */
enum HsStatus hs_state_qubits(const struct HsState *state, size_t *out);

/**
 * Amplitude of basis index `index` as a (re, im) pair.
 *
 * # Safety
 * `state` must be a live handle from this library; `re` and `im` must be
 * valid pointers.
 */
enum HsStatus hs_state_amplitude(const struct HsState *state, size_t index, double *re, double *im);

/**
 * Negate the amplitudes of the given solution indices, returning a new state.
 *
 * # Safety
 * `state` must be a live handle; `solutions` must point to
 * `solution_count` readable values; `out` must be valid.
 */
enum HsStatus hs_state_apply_oracle(const struct HsState *state,
                                    const size_t *solutions,
                                    size_t solution_count,
                                    struct HsState **out);

/**
 * Apply C^kZ on the index-bit mask, returning a new state.
 *
 * # Safety
 * `state` must be a live handle; `out` must be valid.
 */
enum HsStatus hs_state_apply_ckz(const struct HsState *state, size_t mask, struct HsState **out);

/**
 * Release a state handle. NULL is ignored.
 *
 * # Safety
 * `state` must come from this library and not be used afterwards.
 */
void hs_state_free(struct HsState *state);

/**
 * Hypergraph of the one-solution Grover state: a single order-n edge.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum HsStatus hs_grover_m1_hypergraph(size_t n, struct HsHypergraph **out);

/**
 * Hypergraph of the canonical two-solution Grover state at Hamming
 * distance d.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum HsStatus hs_grover_m2_hypergraph(size_t n, size_t d, struct HsHypergraph **out);

/**
 * Parse the canonical JSON form `{"n":..,"phase":±1,"edges":[[..],..]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be valid.
 */
enum HsStatus hs_hypergraph_from_json(const char *json, struct HsHypergraph **out);

/**
 * Canonical JSON serialization; release with hs_string_free.
 *
 * # Safety
 * `hypergraph` must be a live handle; `out` must be valid.
 */
enum HsStatus hs_hypergraph_to_json(const struct HsHypergraph *hypergraph, char **out);

/**
 * Graphviz DOT rendering; release with hs_string_free.
 *
 * # Safety
 * `hypergraph` must be a live handle; `out` must be valid.
 */
enum HsStatus hs_hypergraph_to_dot(const struct HsHypergraph *hypergraph, char **out);

/**
 * Vertex count, edge count, and global phase (+1 or -1) of a hypergraph.
 *
 * # Safety
 * `hypergraph` must be a live handle; the out-pointers must be valid.
 */
enum HsStatus hs_hypergraph_info(const struct HsHypergraph *hypergraph,
                                 size_t *n,
                                 size_t *edge_count,
                                 int8_t *phase);

/**
 * Index-bit mask of edge `index` (edges are in canonical order).
 *
 * # Safety
 * `hypergraph` must be a live handle; `out` must be valid.
 */
enum HsStatus hs_hypergraph_edge_mask(const struct HsHypergraph *hypergraph,
                                      size_t index,
                                      size_t *out);

/**
 * Synthesize the hypergraph state: phase · Π_e C^eZ ∣ψ₀⟩.
 *
 * # Safety
 * `hypergraph` must be a live handle; `out` must be valid.
 */
enum HsStatus hs_hypergraph_state(const struct HsHypergraph *hypergraph, struct HsState **out);

/**
 * Release a hypergraph handle. NULL is ignored.
 *
 * # Safety
 * `hypergraph` must come from this library and not be used afterwards.
 */
void hs_hypergraph_free(struct HsHypergraph *hypergraph);

/**
 * E_n of the canonical one-solution state (β = 0 one-dimensional search).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum HsStatus hs_measure_m1(size_t n, struct HsResult **out);

/**
 * E_n of the canonical two-solution state at Hamming distance d, with the
 * multi-start optimizer seeded by `seed`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum HsStatus hs_measure_m2(size_t n, size_t d, uint64_t seed, struct HsResult **out);

/**
 * Unrestricted E_n of an arbitrary state (at most 7 qubits).
 *
 * # Safety
 * `state` must be a live handle; `out` must be valid.
 */
enum HsStatus hs_measure_bruteforce(const struct HsState *state,
                                    uint64_t seed,
                                    struct HsResult **out);

/**
 * E_n value of a result.
 *
 * # Safety
 * `result` must be a live handle; `out` must be valid.
 */
enum HsStatus hs_result_value(const struct HsResult *result, double *out);

/**
 * Maximal squared overlap of a result.
 *
 * # Safety
 * `result` must be a live handle; `out` must be valid.
 */
enum HsStatus hs_result_overlap(const struct HsResult *result, double *out);

/**
 * Whether the best two optimizer starts agreed to 1e-9.
 *
 * # Safety
 * `result` must be a live handle; `out` must be valid.
 */
enum HsStatus hs_result_converged(const struct HsResult *result, bool *out);

/**
 * Number of blocks of the optimal product ansatz.
 *
 * # Safety
 * `result` must be a live handle; `out` must be valid.
 */
enum HsStatus hs_result_block_count(const struct HsResult *result, size_t *out);

/**
 * Size and angles of ansatz block `index`.
 *
 * # Safety
 * `result` must be a live handle; the out-pointers must be valid.
 */
enum HsStatus hs_result_block(const struct HsResult *result,
                              size_t index,
                              size_t *size,
                              double *alpha,
                              double *beta);

/**
 * Release a result handle. NULL is ignored.
 *
 * # Safety
 * `result` must come from this library and not be used afterwards.
 */
void hs_result_free(struct HsResult *result);

/**
 * Success probabilities of a Grover run: writes `iterations + 1` values
 * (entry k is the probability after k full iterations) into
 * `probabilities`, which must have that capacity.
 *
 * # Safety
 * `solutions` must point to `solution_count` readable values and
 * `probabilities` to `iterations + 1` writable doubles.
 */
enum HsStatus hs_grover_success_trace(size_t n,
                                      const size_t *solutions,
                                      size_t solution_count,
                                      size_t iterations,
                                      double *probabilities);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERSTATE_H */
