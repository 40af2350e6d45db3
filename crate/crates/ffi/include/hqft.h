#ifndef HQFT_H
#define HQFT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum HqftStatus {
  HQFT_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  HQFT_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not UTF-8.
   */
  HQFT_STATUS_INVALID_UTF8 = 2,
  /**
   * Unparseable input or a reference to something that does not exist.
   */
  HQFT_STATUS_MALFORMED = 3,
  /**
   * Well-formed input violating a mathematical invariant.
   */
  HQFT_STATUS_INVARIANT = 4,
  /**
   * The handles belong to different base complexes.
   */
  HQFT_STATUS_MISMATCH = 5,
  /**
   * A panic was caught at the boundary.
   */
  HQFT_STATUS_INTERNAL = 6,
} HqftStatus;

/**
 * A cochain on a complex.
 */
typedef struct HqftCochain HqftCochain;

/**
 * A simplicial complex.
 */
typedef struct HqftComplex HqftComplex;

/**
 * A surface mapped into a complex.
 */
typedef struct HqftSurface HqftSurface;

/**
 * The field theory of a 2-cocycle.
 */
typedef struct HqftTheory HqftTheory;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread; empty after a
 * successful call. Owned by the library.
 */
const char *hqft_last_error(void);

/**
 * Library version, static storage.
 */
const char *hqft_version(void);

void hqft_string_free(char *s);

/**
 * Parses `{"vertices": n, "maximal_simplices": [...]}`.
 */
enum HqftStatus hqft_complex_from_json(const char *text, struct HqftComplex **out);

void hqft_complex_free(struct HqftComplex *x);

/**
 * `H_degree` as text, e.g. `Z^2 + Z/2`.
 */
enum HqftStatus hqft_homology(const struct HqftComplex *x, size_t degree, char **out);

/**
 * Parses a cochain file against `x`.
 */
enum HqftStatus hqft_cochain_from_json(const struct HqftComplex *x,
                                       const char *text,
                                       struct HqftCochain **out);

void hqft_cochain_free(struct HqftCochain *c);

/**
 * The theory of a 2-cocycle; [`HqftStatus::Invariant`] when the cochain
 * is not a cocycle.
 */
enum HqftStatus hqft_theory_new(const struct HqftCochain *c, struct HqftTheory **out);

void hqft_theory_free(struct HqftTheory *h);

/**
 * Parses a surface bundle with inline complex, map and cycle.
 */
enum HqftStatus hqft_surface_from_json(const struct HqftComplex *x,
                                       const char *text,
                                       struct HqftSurface **out);

/**
 * A closed surface whose fundamental cycle pushes forward to the given
 * integral 2-cycle.
 */
enum HqftStatus hqft_surface_from_cycle(const struct HqftComplex *x,
                                        const char *chain,
                                        struct HqftSurface **out);

/**
 * The surface as bundle JSON.
 */
enum HqftStatus hqft_surface_to_json(const struct HqftSurface *g, char **out);

/**
 * Euler characteristic of the surface.
 */
enum HqftStatus hqft_surface_euler_characteristic(const struct HqftSurface *g, int64_t *out);

void hqft_surface_free(struct HqftSurface *g);

/**
 * Holonomy of a closed surface, as a coefficient literal (`1/3`, `2`).
 */
enum HqftStatus hqft_holonomy(const struct HqftTheory *h, const struct HqftSurface *g, char **out);

/**
 * Runs a randomized suite (`surgery`, `functoriality` or `group`) and
 * writes its JSON report; `*passed` is 1 when every check passed.
 */
enum HqftStatus hqft_verify(const struct HqftComplex *x,
                            const char *suite,
                            const char *group,
                            size_t count,
                            uint64_t seed,
                            char **report,
                            int32_t *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HQFT_H */
