#ifndef PERMBASE_H
#define PERMBASE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PbStatus {
  PB_STATUS_OK = 0,
  PB_STATUS_NULL_POINTER = 1,
  PB_STATUS_INVALID_ARGUMENT = 2,
  PB_STATUS_PARSE = 3,
  PB_STATUS_NOT_TRANSITIVE = 4,
  PB_STATUS_LIMIT_EXCEEDED = 5,
  PB_STATUS_VERIFICATION_FAILED = 6,
  PB_STATUS_INTERNAL = 7,
} PbStatus;

/**
 * A 2-partition certificate together with the group it was built for.
 */
typedef struct PbCertificate PbCertificate;

/**
 * A permutation group.
 */
typedef struct PbGroup PbGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copy of the last error message on this thread, or null if none.
 * Release with `pb_string_free`.
 */
char *pb_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void pb_string_free(char *s);

/**
 * Builds a catalog group such as `linked_wreath(7,2,2)`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PbStatus pb_group_from_catalog(const char *name, struct PbGroup **out);

/**
 * Builds a group from `count` generators in 1-based cycle notation.
 *
 * # Safety
 * `generators` must point to `count` NUL-terminated strings.
 */
enum PbStatus pb_group_from_cycles(size_t degree,
                                   const char *const *generators,
                                   size_t count,
                                   struct PbGroup **out);

/**
 * # Safety
 * `g` must be null or a handle from this library, not yet freed.
 */
void pb_group_free(struct PbGroup *g);

/**
 * Degree of the group, 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t pb_group_degree(const struct PbGroup *g);

/**
 * Group order as a decimal string, or null on a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
char *pb_group_order(const struct PbGroup *g);

/**
 * Minimum base size by exhaustive search (degree at most 64).
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum PbStatus pb_group_base_size(const struct PbGroup *g, size_t *out);

/**
 * Builds and verifies a certificate for a transitive group.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum PbStatus pb_synthesize(const struct PbGroup *g, uint64_t seed, struct PbCertificate **out);

/**
 * Reads a certificate document. The group is taken from the document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PbStatus pb_certificate_from_json(const char *json, struct PbCertificate **out);

/**
 * The certificate document as JSON, or null on a null handle.
 *
 * # Safety
 * `c` must be null or a live handle.
 */
char *pb_certificate_to_json(const struct PbCertificate *c);

/**
 * Number of partitions, 0 for a null handle.
 *
 * # Safety
 * `c` must be null or a live handle.
 */
size_t pb_certificate_count(const struct PbCertificate *c);

/**
 * Whether the certificate records a trivial joint stabilizer.
 *
 * # Safety
 * `c` must be null or a live handle.
 */
bool pb_certificate_verified(const struct PbCertificate *c);

/**
 * `count / (1 + log|G| / n)`, NaN for a null handle.
 *
 * # Safety
 * `c` must be null or a live handle.
 */
double pb_certificate_bound_ratio(const struct PbCertificate *c);

/**
 * Re-checks the certificate against `g`. Returns `VerificationFailed` if
 * the joint stabilizer is nontrivial.
 *
 * # Safety
 * `c` and `g` must be live handles.
 */
enum PbStatus pb_certificate_check(const struct PbCertificate *c, const struct PbGroup *g);

/**
 * # Safety
 * `c` must be null or a handle from this library, not yet freed.
 */
void pb_certificate_free(struct PbCertificate *c);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PERMBASE_H */
