#ifndef INDMOD_H
#define INDMOD_H

/* Generated by cbindgen from indmod-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Reducibility verdict for a model pair.
 */
typedef enum {
  INDMOD_REDUCIBILITY_REDUCIBLE = 0,
  /**
   * Both step counts hit the cutoff and compare as presumed-equal.
   */
  INDMOD_REDUCIBILITY_REDUCIBLE_PRESUMED = 1,
  INDMOD_REDUCIBILITY_NOT_REDUCIBLE = 2,
  INDMOD_REDUCIBILITY_UNDECIDED = 3,
} IndmodReducibility;

/**
 * Result codes shared by all fallible entry points.
 */
typedef enum {
  INDMOD_STATUS_OK = 0,
  INDMOD_STATUS_NULL_POINTER = 1,
  INDMOD_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed document or model-file schema violation.
   */
  INDMOD_STATUS_SCHEMA_ERROR = 3,
  /**
   * Well-formed input the mathematics refuses (impossible construction,
   * wrong-way reduction, unverified relation).
   */
  INDMOD_STATUS_DOMAIN_ERROR = 4,
  /**
   * Arity mismatch or integer overflow during evaluation.
   */
  INDMOD_STATUS_EVAL_ERROR = 5,
  /**
   * Invalid bound parameters or empty materialized base.
   */
  INDMOD_STATUS_BOUND_ERROR = 6,
  INDMOD_STATUS_INTERNAL_ERROR = 7,
} IndmodStatus;

/**
 * Opaque handle to a parsed induction model.
 */
typedef struct IndmodModel IndmodModel;

/**
 * Bounded-semantics parameters by value.
 */
typedef struct {
  uint64_t universe;
  uint64_t cap;
  uint32_t cutoff;
} IndmodBound;

/**
 * Summary of a bounded closure run.
 */
typedef struct {
  bool covered;
  /**
   * True when the step count was decided before the cutoff.
   */
  bool step_count_is_finite;
  /**
   * The decided step count, or the cutoff when it was exhausted.
   */
  uint64_t step_count;
  uint64_t closure_size;
  uint64_t missing_count;
} IndmodAnalysis;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; never freed.
 */
const char *indmod_version(void);

/**
 * Message of the most recent error on this thread; valid until the next
 * failing call. Never NULL.
 */
const char *indmod_last_error_message(void);

/**
 * Default bound: universe 60, cap 136, cutoff 64.
 */
IndmodBound indmod_bound_default(void);

/**
 * Parses a model from its JSON document; on success stores a handle the
 * caller must release with `indmod_model_free`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be a valid pointer.
 */
IndmodStatus indmod_model_parse(const char *json, IndmodModel **out);

/**
 * Releases a model handle; NULL is ignored.
 *
 * # Safety
 * `model` must have come from `indmod_model_parse` and not be freed twice.
 */
void indmod_model_free(IndmodModel *model);

/**
 * Serializes the model back to its JSON document. Returns NULL on error;
 * free the result with `indmod_string_free`.
 *
 * # Safety
 * `model` must be a live handle.
 */
char *indmod_model_to_json(const IndmodModel *model);

/**
 * Frees a string returned by this library; NULL is ignored.
 *
 * # Safety
 * `s` must have been returned by an indmod function and not freed before.
 */
void indmod_string_free(char *s);

/**
 * Runs the bounded closure and fills the analysis summary.
 *
 * # Safety
 * `model` must be a live handle and `out` a valid pointer.
 */
IndmodStatus indmod_analyze(const IndmodModel *model, IndmodBound bound, IndmodAnalysis *out);

/**
 * Full trace report (levels, l-table, verdict) as a JSON string. Returns
 * NULL on error; free with `indmod_string_free`.
 *
 * # Safety
 * `model` must be a live handle.
 */
char *indmod_analyze_json(const IndmodModel *model, IndmodBound bound);

/**
 * Structure report (additive/multiplicative flags plus self-loop search up
 * to `search_cap`) as JSON. Returns NULL on error.
 *
 * # Safety
 * `model` must be a live handle.
 */
char *indmod_classify_json(const IndmodModel *model, uint64_t search_cap);

/**
 * Decides whether `m1` reduces to `m2` by the step-count comparison.
 *
 * # Safety
 * Both handles must be live and `out` valid.
 */
IndmodStatus indmod_decide_reducible(const IndmodModel *m1,
                                     const IndmodModel *m2,
                                     IndmodBound bound,
                                     IndmodReducibility *out);

/**
 * Builds the recipe relation for a reducible pair and returns it in the
 * documented relation-file JSON form. Returns NULL (with a domain error)
 * when the pair is not reducible.
 *
 * # Safety
 * Both handles must be live.
 */
char *indmod_build_reduction_json(const IndmodModel *m1, const IndmodModel *m2, IndmodBound bound);

/**
 * Verifies a relation (in relation-file JSON form) against the three
 * reduction conditions; sets `out_verified` accordingly.
 *
 * # Safety
 * Handles must be live, `relation_json` NUL-terminated, `out_verified`
 * valid.
 */
IndmodStatus indmod_verify_reduction(const IndmodModel *m1,
                                     const IndmodModel *m2,
                                     const char *relation_json,
                                     IndmodBound bound,
                                     bool *out_verified);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* INDMOD_H */
