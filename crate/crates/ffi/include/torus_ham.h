#ifndef TORUS_HAM_H
#define TORUS_HAM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TorusHamStatus {
  TORUS_HAM_STATUS_OK = 0,
  // No hamiltonian path exists: the congruence fails.
  TORUS_HAM_STATUS_REFUSED = 1,
  // The word is not a hamiltonian path between the given vertices.
  TORUS_HAM_STATUS_NOT_VERIFIED = 2,
  TORUS_HAM_STATUS_NULL_POINTER = 3,
  TORUS_HAM_STATUS_INVALID_ARGUMENT = 4,
  TORUS_HAM_STATUS_SIZE_CAP_EXCEEDED = 5,
  TORUS_HAM_STATUS_BUFFER_TOO_SMALL = 6,
  TORUS_HAM_STATUS_INTERNAL = 7,
  TORUS_HAM_STATUS_PANIC = 8,
} TorusHamStatus;

// A verified hamiltonian path.
typedef struct TorusHamPath TorusHamPath;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds a certified hamiltonian path from `from` to `to` in `(Z_m)^k`.
//
// `from` may be NULL for the zero vertex. On `OK`, `*out` holds a handle to
// release with `torus_ham_path_free`; otherwise `*out` is set to NULL.
// Returns `REFUSED` when no path can exist.
//
// # Safety
// `from` (if non-NULL) and `to` point to `k` values; `out` is writable.
enum TorusHamStatus torus_ham_construct(uint64_t m,
                                        size_t k,
                                        const uint64_t *from,
                                        const uint64_t *to,
                                        struct TorusHamPath **out);

// Releases a path handle. NULL is ignored.
//
// # Safety
// `path` is NULL or a handle from `torus_ham_construct` not yet freed.
void torus_ham_path_free(struct TorusHamPath *path);

// Number of steps (vertex count minus one); 0 for NULL.
//
// # Safety
// `path` is NULL or a live handle.
uint64_t torus_ham_path_length(const struct TorusHamPath *path);

// Number of coordinates; 0 for NULL.
//
// # Safety
// `path` is NULL or a live handle.
size_t torus_ham_path_dims(const struct TorusHamPath *path);

// # Safety
// `path` is NULL or a live handle.
bool torus_ham_path_is_verified(const struct TorusHamPath *path);

// The word in nested run-length form, e.g. `"(x1 x2^2)^3 x1"`. Release with
// `torus_ham_string_free`. NULL for a NULL handle.
//
// # Safety
// `path` is NULL or a live handle.
char *torus_ham_path_word(const struct TorusHamPath *path);

// Copies the flat word into `buf`. `*needed` always receives the full
// length; if it exceeds `cap`, nothing is copied and `BUFFER_TOO_SMALL` is
// returned. `buf` may be NULL when `cap` is 0.
//
// # Safety
// `path` is a live handle, `buf` has room for `cap` values, `needed` is
// writable.
enum TorusHamStatus torus_ham_path_generators(const struct TorusHamPath *path,
                                              uint32_t *buf,
                                              size_t cap,
                                              size_t *needed);

// Checks that `generators[0..len]` is a hamiltonian path of `(Z_m)^k` from
// `from` (NULL for zero) to `to`. Returns `OK` or `NOT_VERIFIED`, with the
// first defect in `torus_ham_last_error`.
//
// # Safety
// `from` (if non-NULL) and `to` point to `k` values; `generators` points to
// `len` values.
enum TorusHamStatus torus_ham_verify(uint64_t m,
                                     size_t k,
                                     const uint64_t *from,
                                     const uint64_t *to,
                                     const uint32_t *generators,
                                     size_t len);

// Exhaustive search: is there a hamiltonian path from 0 to `to` in the
// product of cycles of lengths `moduli[0..k]`? The size cap is read from
// `TORUS_HAM_CAP` (default 32 vertices).
//
// # Safety
// `moduli` and `to` point to `k` values; `exists` is writable.
enum TorusHamStatus torus_ham_oracle_path_exists(const uint64_t *moduli,
                                                 size_t k,
                                                 const uint64_t *to,
                                                 bool *exists);

// Message for the last failed call on this thread, or NULL. Valid until the
// next call into this library on the same thread.
const char *torus_ham_last_error(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` is NULL or came from `torus_ham_path_word` and was not freed.
void torus_ham_string_free(char *s);

// Library version, statically allocated.
const char *torus_ham_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORUS_HAM_H */
