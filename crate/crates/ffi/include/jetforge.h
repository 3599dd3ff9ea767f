#ifndef JETFORGE_H
#define JETFORGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum JfStatus {
  JF_STATUS_OK = 0,
  /**
   * The jet system has no solution; not an error.
   */
  JF_STATUS_UNSOLVABLE = 1,
  JF_STATUS_NULL_POINTER = 2,
  JF_STATUS_INVALID_UTF8 = 3,
  JF_STATUS_PARSE = 4,
  JF_STATUS_DIMENSION_MISMATCH = 5,
  JF_STATUS_DUPLICATE_POINTS = 6,
  JF_STATUS_INVALID_INPUT = 7,
  /**
   * A panic was caught at the boundary.
   */
  JF_STATUS_INTERNAL = 8,
} JfStatus;

typedef enum JfVanishing {
  JF_VANISHING_NOT_VANISHING = 0,
  JF_VANISHING_EXACTLY = 1,
  JF_VANISHING_IDENTICALLY_ZERO = 2,
} JfVanishing;

/**
 * A polynomial over the Gaussian rationals.
 */
typedef struct JfPoly JfPoly;

/**
 * A linear operator, `Σ f_α ∂^α`.
 */
typedef struct JfSymbol JfSymbol;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *jf_last_error(void);

/**
 * Library version as a static string.
 */
const char *jf_version(void);

/**
 * Parses a linear operator like `"d[1,0] + x1*d[0,1]"`. `dim` and `order`
 * of 0 and -1 mean "infer".
 *
 * # Safety
 * `text` must be a valid C string and `out` writable.
 */
enum JfStatus jf_symbol_parse(const char *text_ptr,
                              size_t dim,
                              int64_t order,
                              struct JfSymbol **out_sym);

/**
 * # Safety
 * `sym` must come from [`jf_symbol_parse`] (or be null) and not be used afterwards.
 */
void jf_symbol_free(struct JfSymbol *sym);

/**
 * # Safety
 * `sym` must be a live handle.
 */
size_t jf_symbol_dim(const struct JfSymbol *sym);

/**
 * # Safety
 * `sym` must be a live handle.
 */
size_t jf_symbol_order(const struct JfSymbol *sym);

/**
 * Parses a polynomial in `x1..x_m`.
 *
 * # Safety
 * `text` must be a valid C string and `out` writable.
 */
enum JfStatus jf_poly_parse(const char *text_ptr, size_t m, struct JfPoly **out_poly);

/**
 * # Safety
 * `poly` must come from this library (or be null) and not be used afterwards.
 */
void jf_poly_free(struct JfPoly *poly);

/**
 * Renders a polynomial in the DSL; free the result with [`jf_string_free`].
 *
 * # Safety
 * `poly` must be a live handle.
 */
char *jf_poly_to_string(const struct JfPoly *poly);

/**
 * # Safety
 * `s` must come from this library (or be null) and not be used afterwards.
 */
void jf_string_free(char *s);

/**
 * Vanishing order at a point. `out_c` receives `c` for
 * [`JfVanishing::Exactly`] and 0 otherwise.
 *
 * # Safety
 * Pointers must be valid as documented on the module.
 */
enum JfStatus jf_vanishing_order(const struct JfSymbol *sym,
                                 const char *point_text,
                                 enum JfVanishing *out_kind,
                                 size_t *out_c);

/**
 * Smallest prolongation level `≤ cap` with a nonzero fiber map, or -1.
 *
 * # Safety
 * Pointers must be valid as documented on the module.
 */
enum JfStatus jf_desingularization_order(const struct JfSymbol *sym,
                                         const char *point_text,
                                         size_t cap,
                                         int64_t *out_level);

/**
 * Rank of the level-`k` fiber map at a point and whether it is onto.
 *
 * # Safety
 * Pointers must be valid as documented on the module.
 */
enum JfStatus jf_check_surjectivity(const struct JfSymbol *sym,
                                    const char *point_text,
                                    size_t k,
                                    size_t *out_rank,
                                    bool *out_full);

/**
 * Solves `P(f) = g` to jet order `s` at one point. On
 * [`JfStatus::Unsolvable`] `*out_poly` is set to null.
 *
 * # Safety
 * Pointers must be valid as documented on the module.
 */
enum JfStatus jf_solve_to_order(const struct JfSymbol *sym,
                                const struct JfPoly *g,
                                const char *point_text,
                                size_t s,
                                struct JfPoly **out_poly);

/**
 * Solves at one or more `;`-separated points and writes the JSON solve
 * report (the same document `jetforge solve-multi --output json` prints).
 *
 * # Safety
 * Pointers must be valid as documented on the module.
 */
enum JfStatus jf_solve_json(const struct JfSymbol *sym,
                            const struct JfPoly *g,
                            const char *points_text,
                            size_t s,
                            char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* JETFORGE_H */
