/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef TOURTRACK_H
#define TOURTRACK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every call.
 */
typedef enum TtStatus {
  TT_STATUS_OK = 0,
  TT_STATUS_NULL_POINTER = 1,
  TT_STATUS_INVALID_UTF8 = 2,
  TT_STATUS_INVALID_INPUT = 3,
  TT_STATUS_NOT_UNIQUE = 4,
  TT_STATUS_NOT_DECOMPOSABLE = 5,
  TT_STATUS_OUT_OF_RANGE = 6,
  TT_STATUS_BUFFER_TOO_SMALL = 7,
  TT_STATUS_PANIC = 8,
} TtStatus;

/**
 * Compiled automaton for one tracking rule.
 */
typedef struct TtDfa TtDfa;

/**
 * Tournament on `n` labelled nodes.
 */
typedef struct TtTournament TtTournament;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of `status`. Never free the result.
 */
const char *tt_status_message(enum TtStatus status);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void tt_string_free(char *s);

/**
 * Window-oracle classification of `bits` under rule `(m, n, l)`.
 *
 * # Safety
 * `bits` must be a NUL-terminated string; `out` must be writable.
 */
enum TtStatus tt_is_tracking(const char *bits, size_t m, size_t n, size_t l, bool *out);

/**
 * Builds the automaton for rule `(m, n, l)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum TtStatus tt_dfa_build(size_t m, size_t n, size_t l, struct TtDfa **out);

/**
 * Minimal automaton equivalent to `dfa`, as a new handle.
 *
 * # Safety
 * `dfa` must be a live handle; `out` must be writable.
 */
enum TtStatus tt_dfa_minimize(const struct TtDfa *dfa, struct TtDfa **out);

/**
 * # Safety
 * `dfa` must be a live handle; `out` must be writable.
 */
enum TtStatus tt_dfa_state_count(const struct TtDfa *dfa, size_t *out);

/**
 * True in `out` iff `bits` ends in the tracked state.
 *
 * # Safety
 * `dfa` must be a live handle, `bits` NUL-terminated, `out` writable.
 */
enum TtStatus tt_dfa_run(const struct TtDfa *dfa, const char *bits, bool *out);

/**
 * # Safety
 * `dfa` must be null or a handle not yet freed.
 */
void tt_dfa_free(struct TtDfa *dfa);

/**
 * NTr(k) for rule 3,5,2 as a decimal string.
 *
 * # Safety
 * `out` must be writable; free the result with [`tt_string_free`].
 */
enum TtStatus tt_ntr(size_t k, char **out);

/**
 * UT(n) for `n >= 1` as a decimal string.
 *
 * # Safety
 * `out` must be writable; free the result with [`tt_string_free`].
 */
enum TtStatus tt_ut(size_t n, char **out);

/**
 * Parses a tournament from `n:hex` or the JSON edge-list form.
 *
 * # Safety
 * `encoded` must be NUL-terminated; `out` must be writable.
 */
enum TtStatus tt_tournament_parse(const char *encoded, struct TtTournament **out);

/**
 * Unique tournament encoded by an initial-loss string.
 *
 * # Safety
 * `bits` must be NUL-terminated; `out` must be writable.
 */
enum TtStatus tt_tournament_from_il_string(const char *bits, struct TtTournament **out);

/**
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum TtStatus tt_tournament_node_count(const struct TtTournament *t, size_t *out);

/**
 * Whether node `i` beats node `j`.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum TtStatus tt_tournament_beats(const struct TtTournament *t, size_t i, size_t j, bool *out);

/**
 * Sorted score vector. `len` is always set to the node count; when `cap`
 * is smaller the call fails with `BufferTooSmall` and writes nothing else.
 *
 * # Safety
 * `t` must be a live handle, `len` writable and `buf` valid for `cap` writes.
 */
enum TtStatus tt_tournament_score_vector(const struct TtTournament *t,
                                         size_t *buf,
                                         size_t cap,
                                         size_t *len);

/**
 * Tournament with every edge reversed.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum TtStatus tt_tournament_dual(const struct TtTournament *t, struct TtTournament **out);

/**
 * `a + b`: nodes of `a` first, every node of `b` beats every node of `a`.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum TtStatus tt_tournament_compose(const struct TtTournament *a,
                                    const struct TtTournament *b,
                                    struct TtTournament **out);

/**
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum TtStatus tt_tournament_is_isomorphic(const struct TtTournament *a,
                                          const struct TtTournament *b,
                                          bool *out);

/**
 * Initial-loss string of a unique tournament; `NotUnique` otherwise.
 *
 * # Safety
 * `t` must be a live handle; free the result with [`tt_string_free`].
 */
enum TtStatus tt_tournament_to_il_string(const struct TtTournament *t, char **out);

/**
 * `n:hex` encoding.
 *
 * # Safety
 * `t` must be a live handle; free the result with [`tt_string_free`].
 */
enum TtStatus tt_tournament_to_hex(const struct TtTournament *t, char **out);

/**
 * # Safety
 * `t` must be null or a handle not yet freed.
 */
void tt_tournament_free(struct TtTournament *t);

/**
 * Block factorization written as `0 + 001 + ...`.
 *
 * # Safety
 * `bits` must be NUL-terminated; free the result with [`tt_string_free`].
 */
enum TtStatus tt_il_decompose(const char *bits, char **out);

/**
 * Initial-loss string of the dual tournament.
 *
 * # Safety
 * `bits` must be NUL-terminated; free the result with [`tt_string_free`].
 */
enum TtStatus tt_il_dual(const char *bits, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TOURTRACK_H */
