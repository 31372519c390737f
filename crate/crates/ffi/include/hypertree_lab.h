#ifndef HYPERTREE_LAB_H
#define HYPERTREE_LAB_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result codes. Zero is success.
 */
typedef enum HtlStatus {
  HTL_STATUS_OK = 0,
  HTL_STATUS_NULL_POINTER = 1,
  HTL_STATUS_INVALID_ARGUMENT = 2,
  HTL_STATUS_PARSE_ERROR = 3,
  HTL_STATUS_NOT_SKELETON = 4,
  HTL_STATUS_PRECONDITION_FAILED = 5,
  HTL_STATUS_TOO_LARGE = 6,
  HTL_STATUS_PANIC = 7,
} HtlStatus;

/**
 * Opaque complex handle.
 */
typedef struct HtlComplex HtlComplex;

/**
 * Builds the complex with full (k-1)-skeleton on n vertices and the given
 * top faces. `faces` holds `count` rows of k+1 vertices each.
 *
 * # Safety
 * `faces` must point to `count * (k + 1)` readable values; `out` must be writable.
 */
enum HtlStatus htl_complex_from_top_faces(size_t n,
                                          size_t k,
                                          const uint32_t *faces,
                                          size_t count,
                                          struct HtlComplex **out);

/**
 * Parses the text complex format.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum HtlStatus htl_complex_parse(const char *text, struct HtlComplex **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `x` must come from this library and not be used afterwards.
 */
void htl_complex_free(struct HtlComplex *x);

/**
 * # Safety
 * `out` must be writable.
 */
enum HtlStatus htl_construct_j(size_t n, size_t k, struct HtlComplex **out);

/**
 * Sum complex over the residues `a[0..len]` modulo n with top dimension s.
 *
 * # Safety
 * `a` must point to `len` readable values; `out` must be writable.
 */
enum HtlStatus htl_construct_sum(size_t n,
                                 const uint64_t *a,
                                 size_t len,
                                 size_t s,
                                 struct HtlComplex **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum HtlStatus htl_construct_fano(struct HtlComplex **out);

/**
 * Link-completed sum complex, candidates in lexicographic order.
 *
 * # Safety
 * `out` must be writable.
 */
enum HtlStatus htl_construct_xnkl(size_t n,
                                  size_t k,
                                  size_t ell,
                                  uint32_t field,
                                  struct HtlComplex **out);

/**
 * Reduced Betti number in degree j. `field` is a prime, or 0 for Q.
 *
 * # Safety
 * `x` must be a live handle; `out` must be writable.
 */
enum HtlStatus htl_betti(const struct HtlComplex *x, ptrdiff_t j, uint32_t field, uint64_t *out);

/**
 * Dimension of the complex (-1 for {∅}, -2 for the void complex).
 *
 * # Safety
 * `x` must be a live handle; `out` must be writable.
 */
enum HtlStatus htl_dim(const struct HtlComplex *x, ptrdiff_t *out);

/**
 * Writes f_0, f_1, ... into `buf`. `len` receives the number of entries;
 * when `buf` is null or `cap` too small only `len` is written.
 *
 * # Safety
 * `buf` must have room for `cap` values; `len` must be writable.
 */
enum HtlStatus htl_f_vector(const struct HtlComplex *x, uint64_t *buf, size_t cap, size_t *len);

/**
 * Sum of tb_j over the links of all ℓ-faces.
 *
 * # Safety
 * `x` must be a live skeleton handle; `out` must be writable.
 */
enum HtlStatus htl_lambda(const struct HtlComplex *x,
                          ptrdiff_t ell,
                          ptrdiff_t j,
                          uint32_t field,
                          uint64_t *out);

/**
 * Bound certificate for (X, ℓ) as a JSON string, freed with `htl_string_free`.
 *
 * # Safety
 * `x` must be a live skeleton handle; `out` must be writable.
 */
enum HtlStatus htl_certificate_json(const struct HtlComplex *x,
                                    size_t ell,
                                    uint32_t field,
                                    char **out);

/**
 * Whether lk(X, τ) is an r-hypertree over the field. `tau` holds `len` vertices.
 *
 * # Safety
 * `x` must be a live handle, `tau` must point to `len` values, `out` must be writable.
 */
enum HtlStatus htl_link_is_hypertree(const struct HtlComplex *x,
                                     const uint32_t *tau,
                                     size_t len,
                                     ptrdiff_t r,
                                     uint32_t field,
                                     bool *out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void htl_string_free(char *s);

/**
 * Message of the last failure on this thread, or null. Valid until the next
 * failing call on the same thread.
 */
const char *htl_last_error_message(void);

/**
 * Library version, a static string.
 */
const char *htl_version(void);

#endif  /* HYPERTREE_LAB_H */
