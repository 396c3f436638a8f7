#ifndef HOPFREN_H
#define HOPFREN_H

/* Generated by cbindgen from crates/ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HopfrenSide {
  HOPFREN_SIDE_LEFT = 0,
  HOPFREN_SIDE_RIGHT = 1,
} HopfrenSide;

typedef enum HopfrenStatus {
  HOPFREN_STATUS_OK = 0,
  HOPFREN_STATUS_NULL_POINTER = 1,
  HOPFREN_STATUS_INVALID_UTF8 = 2,
  HOPFREN_STATUS_INVALID_ALPHABET = 3,
  HOPFREN_STATUS_PARSE_ERROR = 4,
  HOPFREN_STATUS_NOT_IRREDUCIBLE = 5,
  HOPFREN_STATUS_EXPANSION_ERROR = 6,
  HOPFREN_STATUS_QUADRATURE_ERROR = 7,
  HOPFREN_STATUS_PANIC = 99,
} HopfrenStatus;

/**
 * Opaque handle.
 */
typedef struct HopfrenContext HopfrenContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a context. `alphabet` is a declaration such as `"x1,x2:3"`; NULL
 * selects `x1..x9` with weight `i` for `xi`.
 *
 * # Safety
 * `alphabet` must be NULL or a valid C string; `out` must be writable.
 */
enum HopfrenStatus hopfren_context_new(const char *alphabet, struct HopfrenContext **out);

/**
 * # Safety
 * `ctx` must come from [`hopfren_context_new`] and not be used afterwards.
 */
void hopfren_context_free(struct HopfrenContext *ctx);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library.
 */
void hopfren_string_free(char *s);

/**
 * Message for the last failure on this thread, or NULL. Valid until the
 * next failing call on the same thread.
 */
const char *hopfren_last_error(void);

/**
 * Canonical rendering of `word`.
 *
 * # Safety
 * Pointers must be valid; the result must be freed with [`hopfren_string_free`].
 */
enum HopfrenStatus hopfren_canonicalize(const struct HopfrenContext *ctx,
                                        const char *word,
                                        char **out);

/**
 * Number of letters in `word`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum HopfrenStatus hopfren_word_length(const struct HopfrenContext *ctx,
                                       const char *word,
                                       uintptr_t *out);

/**
 * Coproduct as a JSON term list `[{"coeff": "p/q", "word": [u, v]}, ..]`.
 *
 * # Safety
 * Pointers must be valid; the result must be freed with [`hopfren_string_free`].
 */
enum HopfrenStatus hopfren_coproduct_json(const struct HopfrenContext *ctx,
                                          const char *word,
                                          char **out);

/**
 * Antipode as a JSON term list `[{"coeff": "p/q", "word": w}, ..]`.
 *
 * # Safety
 * Pointers must be valid; the result must be freed with [`hopfren_string_free`].
 */
enum HopfrenStatus hopfren_antipode_json(const struct HopfrenContext *ctx,
                                         const char *word,
                                         enum HopfrenSide side,
                                         char **out);

/**
 * `1` if `m(S⊗id)Δ[w] = m(id⊗S)Δ[w] = E∘ē[w]`, else `0`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum HopfrenStatus hopfren_hopf_axiom_check(const struct HopfrenContext *ctx,
                                            const char *word,
                                            bool *out);

/**
 * Counter term `S_R[w]` as `{"word", "value", "laurent"}` JSON.
 *
 * # Safety
 * Pointers must be valid; the result must be freed with [`hopfren_string_free`].
 */
enum HopfrenStatus hopfren_counterterm_json(const struct HopfrenContext *ctx,
                                            const char *word,
                                            int32_t order,
                                            char **out);

/**
 * Counter term from the forest recursion, same JSON layout as
 * [`hopfren_counterterm_json`].
 *
 * # Safety
 * Pointers must be valid; the result must be freed with [`hopfren_string_free`].
 */
enum HopfrenStatus hopfren_forest_json(const struct HopfrenContext *ctx,
                                       const char *word,
                                       int32_t order,
                                       char **out);

/**
 * Renormalized value of an irreducible word as
 * `{"word", "value", "laurent", "finite", "limit"}` JSON.
 *
 * # Safety
 * Pointers must be valid; the result must be freed with [`hopfren_string_free`].
 */
enum HopfrenStatus hopfren_renormalize_json(const struct HopfrenContext *ctx,
                                            const char *word,
                                            int32_t order,
                                            char **out);

/**
 * Numeric `φ(w)` at scale `c` and regulator `eps` by adaptive quadrature.
 *
 * # Safety
 * Pointers must be valid.
 */
enum HopfrenStatus hopfren_quadrature_oracle(const struct HopfrenContext *ctx,
                                             const char *word,
                                             double c,
                                             double eps,
                                             double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOPFREN_H */
