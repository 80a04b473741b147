#ifndef LEECHKIT_H
#define LEECHKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of `lk_is_isometric`.
typedef enum LkIsometry {
  LK_ISOMETRY_ISOMETRIC = 0,
  LK_ISOMETRY_NOT_ISOMETRIC = 1,
  LK_ISOMETRY_UNDECIDED = 2,
} LkIsometry;

typedef enum LkStatus {
  LK_STATUS_OK = 0,
  LK_STATUS_NULL_POINTER = 1,
  LK_STATUS_INVALID_ARGUMENT = 2,
  LK_STATUS_PARSE = 3,
  LK_STATUS_UNKNOWN_NAME = 4,
  LK_STATUS_NOT_A_LATTICE = 5,
  LK_STATUS_BOUND_EXCEEDED = 6,
  LK_STATUS_OVERFLOW = 7,
  LK_STATUS_CONSTRUCTION = 8,
  LK_STATUS_BUFFER_TOO_SMALL = 9,
  LK_STATUS_INTERNAL = 10,
} LkStatus;

// Opaque lattice handle.
typedef struct LkLattice LkLattice;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failing call on this thread, or null. The pointer is
// valid until the next failing call on this thread.
const char *lk_last_error(void);

// Library version, a static string.
const char *lk_version(void);

// `s` must be null or a string returned by this library, not yet freed.
void lk_string_free(char *s);

// Lattice from a row-major `n × n` Gram matrix.
// `gram` must point to `n * n` readable values; `out` must be writable.
enum LkStatus lk_lattice_from_gram(const int64_t *gram, size_t n, struct LkLattice **out);

// Lattice from Lattice JSON.
// `json` must be a NUL-terminated string; `out` must be writable.
enum LkStatus lk_lattice_from_json(const char *json, struct LkLattice **out);

// Named lattice: a catalog name such as `"S11"` or `"E8:-1"`, or a model
// such as `"niemeier:N23"`, `"holy:N22"`, `"quotient:w"`.
// `name` must be a NUL-terminated string; `out` must be writable.
enum LkStatus lk_lattice_named(const char *name, struct LkLattice **out);

// `l` must be null or a handle from this library, not yet freed.
void lk_lattice_free(struct LkLattice *l);

// Lattice JSON of `l`; free with `lk_string_free`.
// `l` must be a live handle; `out` must be writable.
enum LkStatus lk_lattice_to_json(const struct LkLattice *l, char **out);

// `l` must be a live handle; `out` must be writable.
enum LkStatus lk_lattice_rank(const struct LkLattice *l, size_t *out);

// Determinant of the Gram matrix; `LK_STATUS_OVERFLOW` if it does not fit.
// `l` must be a live handle; `out` must be writable.
enum LkStatus lk_lattice_det(const struct LkLattice *l, int64_t *out);

// `l` must be a live handle; `out` must be writable.
enum LkStatus lk_lattice_is_even(const struct LkLattice *l, bool *out);

// Number of vectors of norm ±2 of a definite lattice.
// `l` must be a live handle; `out` must be writable.
enum LkStatus lk_count_roots(const struct LkLattice *l, uint64_t *out);

// Theta coefficients `out[k]` = number of vectors of |norm| k for
// `k = 0..=bound`; `len` must be at least `bound + 1`.
// `l` must be a live handle; `out` must hold `len` writable values.
enum LkStatus lk_theta(const struct LkLattice *l, uint64_t bound, uint64_t *out, size_t len);

// Isometry test for definite lattices.
// `a`, `b` must be live handles; `out` must be writable.
enum LkStatus lk_is_isometric(const struct LkLattice *a,
                              const struct LkLattice *b,
                              enum LkIsometry *out);

// `a`, `b` must be live handles; `out` must be writable.
enum LkStatus lk_genus_equal(const struct LkLattice *a, const struct LkLattice *b, bool *out);

// Singular points of the Klein cubic fourfold over `F_p`.
// `out` must be writable.
enum LkStatus lk_klein_singular_points(uint64_t p, uint64_t *out);

// Runs one verification claim, or all of them when `id` is null, and
// writes the JSON report(s) to `json_out` (free with `lk_string_free`) and
// whether everything passed to `passed`.
// `id` must be null or NUL-terminated; `json_out` and `passed` writable.
enum LkStatus lk_verify(const char *id, char **json_out, bool *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LEECHKIT_H */
