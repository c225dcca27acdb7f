#ifndef TORIC_FFI_H
#define TORIC_FFI_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum ToricStatus {
  TORIC_STATUS_OK = 0,
  TORIC_STATUS_INVALID_INPUT = 1,
  TORIC_STATUS_SEARCH_EXHAUSTED = 2,
  TORIC_STATUS_CERTIFICATE_INVALID = 3,
  TORIC_STATUS_NULL_POINTER = 4,
  TORIC_STATUS_PANIC = 5,
} ToricStatus;

// Opaque fan handle.
typedef struct ToricFan ToricFan;

// Message of the last failed call on this thread, or null. Valid until the
// next call into this library on the same thread.
const char *toric_last_error(void);

// # Safety
// `s` must be null or a string returned by this library and not yet freed.
void toric_string_free(char *s);

// Parses a fan from its JSON text.
//
// # Safety
// `json` must be a nul-terminated string; `out` must be writable.
enum ToricStatus toric_fan_from_json(const char *json, struct ToricFan **out);

// One of the built-in fans: `"cube"`, `"octahedron"` or `"payne"`.
//
// # Safety
// `name` must be a nul-terminated string; `out` must be writable.
enum ToricStatus toric_fan_builtin(const char *name, struct ToricFan **out);

// # Safety
// `fan` must be null or a handle from this library that has not been freed.
void toric_fan_free(struct ToricFan *fan);

// Canonical fan JSON.
//
// # Safety
// `fan` must be a live handle; `out` must be writable.
enum ToricStatus toric_fan_to_json(const struct ToricFan *fan, char **out);

// Validation report; `valid` receives whether the fan passed.
//
// # Safety
// `fan` must be a live handle; `valid` and `out` must be writable.
enum ToricStatus toric_fan_validate(const struct ToricFan *fan, bool *valid, char **out);

// # Safety
// `fan` must be a live handle; `out` must be writable.
enum ToricStatus toric_fan_is_complete(const struct ToricFan *fan, bool *out);

// # Safety
// `fan` must be a live handle; `out` must be writable.
enum ToricStatus toric_fan_stats(const struct ToricFan *fan, char **out);

// # Safety
// `fan` must be a live handle; `out` must be writable.
enum ToricStatus toric_cpl(const struct ToricFan *fan, char **out);

// Nontrivial multivalued function; a negative `sigma` selects the default cone.
//
// # Safety
// `fan` must be a live handle; `out` must be writable.
enum ToricStatus toric_multival(const struct ToricFan *fan, int64_t sigma, char **out);

// Graded dimensions on the cone with the given ray indices. `degree` is
// comma-separated (`"1,-1,0"`, `"1/2,0,0"`); `lattice_json` may be null for
// the standard lattice.
//
// # Safety
// `fan` must be a live handle; `cone` must point to `cone_len` indices;
// strings must be nul-terminated; `out` must be writable.
enum ToricStatus toric_fdim(const struct ToricFan *fan,
                            const size_t *cone,
                            size_t cone_len,
                            const char *degree,
                            const char *lattice_json,
                            char **out);

// Wall certificate for the wall with the given ray indices.
//
// # Safety
// As for `toric_fdim`.
enum ToricStatus toric_certify(const struct ToricFan *fan,
                               const size_t *wall,
                               size_t wall_len,
                               const char *degree,
                               const char *lattice_json,
                               char **out);

// All valid wall certificates with degrees of sup-norm at most `radius`.
//
// # Safety
// `fan` must be a live handle; `lattice_json` null or nul-terminated; `out` writable.
enum ToricStatus toric_search(const struct ToricFan *fan,
                              uint32_t radius,
                              const char *lattice_json,
                              char **out);

// Line bundle or K-group witness.
//
// # Safety
// `fan` must be a live handle; `out` must be writable.
enum ToricStatus toric_dichotomy(const struct ToricFan *fan, uint32_t radius, char **out);

#endif  /* TORIC_FFI_H */
