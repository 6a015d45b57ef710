#ifndef DAMERAU_CODES_H
#define DAMERAU_CODES_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DcStatus {
  DC_STATUS_OK = 0,
  DC_STATUS_NULL_POINTER = 1,
  DC_STATUS_INVALID_ARGUMENT = 2,
  DC_STATUS_INVALID_WORD = 3,
  DC_STATUS_DECODE_FAILURE = 4,
  DC_STATUS_BUFFER_TOO_SMALL = 5,
  DC_STATUS_OUT_OF_RANGE = 6,
  DC_STATUS_PANIC = 7,
} DcStatus;

/**
 * Error ball of one word, sorted lexicographically.
 */
typedef struct DcBall DcBall;

/**
 * A code with its codebook, built on first use.
 */
typedef struct DcCode DcCode;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *dc_status_message(enum DcStatus status);

/**
 * Single transposition or deletion code with VT-type residue `a`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum DcStatus dc_code_t_or_d_new(size_t n, uint64_t a, struct DcCode **out);

/**
 * Code for `ell` adjacent transpositions and one deletion.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum DcStatus dc_code_td_new(size_t n, uint64_t a, uint8_t parity, size_t ell, struct DcCode **out);

/**
 * Code for one transposition and one deletion; `n` must be even.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum DcStatus dc_code_one_td_new(size_t n, uint64_t a1, uint64_t a2, struct DcCode **out);

/**
 * Burst code for at most `b` deletions, or exactly odd lengths when `odd`
 * is set. Zero `window` or `svt_mod` selects the default of the scale.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum DcStatus dc_code_burst_new(size_t n,
                                size_t b,
                                bool scaled,
                                size_t window,
                                uint64_t svt_mod,
                                bool odd,
                                struct DcCode **out);

/**
 * Code for one block transposition and one block deletion of length `b`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum DcStatus dc_code_block_td_new(size_t n,
                                   size_t b,
                                   bool scaled,
                                   size_t window,
                                   uint64_t svt_mod,
                                   struct DcCode **out);

/**
 * # Safety
 * `code` must come from a `dc_code_*_new` call and not be used afterwards.
 */
void dc_code_free(struct DcCode *code);

/**
 * Word length of the code, or 0 for a null handle.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
size_t dc_code_length(const struct DcCode *code);

/**
 * # Safety
 * `code` must be a live handle, `word` a NUL-terminated string and `out`
 * valid for writes.
 */
enum DcStatus dc_code_contains(const struct DcCode *code, const char *word, bool *out);

/**
 * Decodes `received` into `buf`, which must hold n + 1 bytes.
 *
 * # Safety
 * `code` must be a live handle, `received` a NUL-terminated string and
 * `buf` valid for `len` bytes.
 */
enum DcStatus dc_code_decode(const struct DcCode *code,
                             const char *received,
                             char *buf,
                             size_t len);

/**
 * Number of codewords. Enumerates the code on first use.
 *
 * # Safety
 * `code` must be a live handle and `out` valid for writes.
 */
enum DcStatus dc_code_size(struct DcCode *code, size_t *out);

/**
 * Codeword `index` in lexicographic order, written to `buf`.
 *
 * # Safety
 * `code` must be a live handle and `buf` valid for `len` bytes.
 */
enum DcStatus dc_code_codeword(struct DcCode *code, size_t index, char *buf, size_t len);

/**
 * Error ball of `word`. `kind` is a tag such as "t-or-d", "tl-d" or
 * "bt-and-d"; `ell` and `b` are ignored by kinds that take no parameter
 * and must be nonzero for kinds that do.
 *
 * # Safety
 * `word` and `kind` must be NUL-terminated strings and `out` valid for writes.
 */
enum DcStatus dc_ball_new(const char *word,
                          const char *kind,
                          size_t ell,
                          size_t b,
                          struct DcBall **out);

/**
 * # Safety
 * `ball` must be null or a live handle.
 */
size_t dc_ball_len(const struct DcBall *ball);

/**
 * Member `index` of the ball, written to `buf`.
 *
 * # Safety
 * `ball` must be a live handle and `buf` valid for `len` bytes.
 */
enum DcStatus dc_ball_get(const struct DcBall *ball, size_t index, char *buf, size_t len);

/**
 * # Safety
 * `ball` must come from `dc_ball_new` and not be used afterwards.
 */
void dc_ball_free(struct DcBall *ball);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DAMERAU_CODES_H */
