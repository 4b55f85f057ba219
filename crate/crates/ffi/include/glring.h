/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef GLRING_H
#define GLRING_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every exported function.
typedef enum GlrStatus {
  GLR_STATUS_OK = 0,
  GLR_STATUS_NULL_POINTER = 1,
  GLR_STATUS_INVALID_ARGUMENT = 2,
  GLR_STATUS_RESOURCE_LIMIT = 3,
  GLR_STATUS_OVERFLOW = 4,
  GLR_STATUS_PARSE = 5,
  GLR_STATUS_IO = 6,
  GLR_STATUS_PANIC = 7,
} GlrStatus;

// Which ring an element lives in.
typedef enum GlrMode {
  GLR_MODE_M = 0,
  GLR_MODE_GL = 1,
} GlrMode;

// Opaque ring element.
typedef struct GlrElement GlrElement;

// Opaque big-integer matrix.
typedef struct GlrMatrix GlrMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread. Valid until the next
// failing call on the same thread.
const char *glr_last_error(void);

// Library version as a static NUL-terminated string.
const char *glr_version(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must come from this library and not be freed twice.
void glr_string_free(char *s);

// `[S^k]` in `R(M_n(F2))`, optionally reduced mod 2.
//
// # Safety
// `out` must be a valid pointer.
enum GlrStatus glr_sym_power(uint32_t n, uint32_t k, bool mod2, struct GlrElement **out);

// Parses additive table notation such as `(1)+2(2)-(4,1)`.
//
// # Safety
// `text` must be a NUL-terminated string; `out` a valid pointer.
enum GlrStatus glr_element_parse(const char *text,
                                 enum GlrMode mode,
                                 uint32_t n,
                                 struct GlrElement **out);

// The product of exterior powers with the given exponents.
//
// # Safety
// `exponents` must point to `len` values (or be null with `len == 0`); `out` valid.
enum GlrStatus glr_lambda_product(const uint32_t *exponents,
                                  size_t len,
                                  enum GlrMode mode,
                                  uint32_t n,
                                  struct GlrElement **out);

// `a · b`; both must live in the same ring.
//
// # Safety
// `a`, `b` must be live handles; `out` valid.
enum GlrStatus glr_element_multiply(const struct GlrElement *a,
                                    const struct GlrElement *b,
                                    struct GlrElement **out);

// `a · Σ_i [Λ^i]`.
//
// # Safety
// `a` must be a live handle; `out` valid.
enum GlrStatus glr_element_mult_sum_lambda(const struct GlrElement *a, struct GlrElement **out);

// Number of nonzero terms, or 0 for a null handle.
//
// # Safety
// `e` must be null or a live handle.
size_t glr_element_num_terms(const struct GlrElement *e);

// Renders in table notation; the unit prints as `1(0)`.
//
// # Safety
// `e` must be a live handle; `out` valid. Free the string with `glr_string_free`.
enum GlrStatus glr_element_render(const struct GlrElement *e, char **out);

// # Safety
// `e` must be null or a handle from this library, not freed twice.
void glr_element_free(struct GlrElement *e);

// The printed `τ_n` (GL-mode multiplication matrix, columns are images).
//
// # Safety
// `out` must be valid.
enum GlrStatus glr_tau_matrix(uint32_t n, struct GlrMatrix **out);

// `t_n`, the transpose of the M-mode multiplication matrix.
//
// # Safety
// `out` must be valid.
enum GlrStatus glr_t_matrix(uint32_t n, struct GlrMatrix **out);

// # Safety
// `m` must be null or a live handle.
size_t glr_matrix_rows(const struct GlrMatrix *m);

// # Safety
// `m` must be null or a live handle.
size_t glr_matrix_cols(const struct GlrMatrix *m);

// Entry `(i, j)` as `int64_t`; `GLR_STATUS_OVERFLOW` if it does not fit.
//
// # Safety
// `m` must be a live handle; `out` valid.
enum GlrStatus glr_matrix_entry_i64(const struct GlrMatrix *m, size_t i, size_t j, int64_t *out);

// Entry `(i, j)` as a decimal string.
//
// # Safety
// `m` must be a live handle; `out` valid. Free the string with `glr_string_free`.
enum GlrStatus glr_matrix_entry_string(const struct GlrMatrix *m, size_t i, size_t j, char **out);

// Exact rank over the rationals.
//
// # Safety
// `m` must be a live handle; `out` valid.
enum GlrStatus glr_matrix_rank(const struct GlrMatrix *m, size_t *out);

// # Safety
// `m` must be null or a handle from this library, not freed twice.
void glr_matrix_free(struct GlrMatrix *m);

// Checks diagonalizability of `t_n` with eigenvalues `2^i` of the expected
// multiplicities. Writes the verdict to `passed`.
//
// # Safety
// `passed` must be valid.
enum GlrStatus glr_eigen_check(uint32_t n, bool *passed);

// `λ_1 + 2 λ_2 + .. + 2^(h-1) λ_h` for a strictly decreasing partition.
//
// # Safety
// `parts` must point to `len` values (or be null with `len == 0`); `out` valid.
enum GlrStatus glr_connectivity(const uint32_t *parts, size_t len, uint64_t *out);

// F2-dimension of the Young-symmetrizer image for `lambda` on `(F2^m)^{⊗|λ|}`.
//
// # Safety
// `parts` must point to `len` values (or be null with `len == 0`); `out` valid.
enum GlrStatus glr_jk_image_dim(const uint32_t *parts, size_t len, size_t m, size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GLRING_H */
