#ifndef KUNUM_H
#define KUNUM_H

/* Generated by cbindgen from kunum-ffi; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum KunumStatus {
  KUNUM_STATUS_OK = 0,
  KUNUM_STATUS_NULL_POINTER = 1,
  KUNUM_STATUS_INVALID_ARGUMENT = 2,
  KUNUM_STATUS_DOMAIN_ERROR = 3,
  KUNUM_STATUS_INTERNAL_ERROR = 4,
  KUNUM_STATUS_PANIC = 5,
} KunumStatus;

/*
 Opaque certificate handle.
 */
typedef struct KunumCertificate KunumCertificate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failure on this thread, or NULL. Owned by the
 library; valid until the next failing call on the same thread.
 */
const char *kunum_last_error(void);

/*
 `a1·b2 − b1·a2`.

 # Safety
 `out` must be a valid pointer.
 */
enum KunumStatus kunum_cross(int64_t a1, int64_t b1, int64_t a2, int64_t b2, int64_t *out);

/*
 Pick decomposition `v = v₋ + v₊` of the primitive vector `(a, b)`.

 # Safety
 All out pointers must be valid.
 */
enum KunumStatus kunum_pick(int64_t a,
                            int64_t b,
                            int64_t *minus_a,
                            int64_t *minus_b,
                            int64_t *plus_a,
                            int64_t *plus_b);

/*
 Euler pairing on the cubic threefold lattice, in `(α, β)` coordinates.

 # Safety
 `out` must be a valid pointer.
 */
enum KunumStatus kunum_chi(int64_t n1, int64_t m1, int64_t n2, int64_t m2, int64_t *out);

/*
 Dimension of the moduli space of stable objects of class `nα + mβ`.

 # Safety
 `out` must be a valid pointer.
 */
enum KunumStatus kunum_moduli_dim(int64_t n, int64_t m, int64_t *out);

/*
 Class of `I_C(m)` for a curve of degree `d` and genus `g`.

 # Safety
 `out_n` and `out_m` must be valid pointers.
 */
enum KunumStatus kunum_hilbert_character(int64_t d,
                                         int64_t g,
                                         int64_t m,
                                         int64_t *out_n,
                                         int64_t *out_m);

/*
 Whether the birationality graph up to `sum_bound` is connected.

 # Safety
 `out` must be a valid pointer.
 */
enum KunumStatus kunum_birgraph_connected(int64_t sum_bound, bool *out);

/*
 Certificate for the class `(a, b)` on catalog entry `(index, degree)`.

 # Safety
 `out` must be a valid pointer; on success it receives a handle to free
 with [`kunum_certificate_free`].
 */
enum KunumStatus kunum_certify(uint32_t index,
                               uint32_t degree,
                               int64_t a,
                               int64_t b,
                               struct KunumCertificate **out);

/*
 Runs the independent checker.

 # Safety
 `cert` must come from [`kunum_certify`]; `out` must be valid.
 */
enum KunumStatus kunum_certificate_verify(const struct KunumCertificate *cert, bool *out);

/*
 Number of nodes and depth of a certificate.

 # Safety
 `cert` must come from [`kunum_certify`]; out pointers must be valid.
 */
enum KunumStatus kunum_certificate_shape(const struct KunumCertificate *cert,
                                         size_t *nodes,
                                         size_t *depth);

/*
 Text rendering; free with [`kunum_string_free`]. NULL on failure.

 # Safety
 `cert` must come from [`kunum_certify`].
 */
char *kunum_certificate_to_text(const struct KunumCertificate *cert);

/*
 # Safety
 `cert` must come from [`kunum_certify`] and not be used afterwards.
 NULL is accepted.
 */
void kunum_certificate_free(struct KunumCertificate *cert);

/*
 # Safety
 `s` must come from this library and not be used afterwards. NULL is
 accepted.
 */
void kunum_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KUNUM_H */
