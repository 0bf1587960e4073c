#ifndef PARAORBIT_H
#define PARAORBIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every ABI call.
 */
typedef enum ParaorbitStatus {
  ParaorbitStatus_Ok = 0,
  ParaorbitStatus_NullPointer = 1,
  ParaorbitStatus_InvalidUtf8 = 2,
  /**
   * Input does not parse (literal, JSON, or unknown label/name).
   */
  ParaorbitStatus_Malformed = 3,
  /**
   * Input parses but breaks an invariant (monotonicity, ranks, ...).
   */
  ParaorbitStatus_InvariantViolated = 4,
  /**
   * A validator or theorem check reported failures.
   */
  ParaorbitStatus_CheckFailed = 5,
  /**
   * The instance has no duality/cosieve for homotopy-level operations.
   */
  ParaorbitStatus_MissingDuality = 6,
  /**
   * The tubular condition fails, so the duality lift is refused.
   */
  ParaorbitStatus_TubularConditionFailed = 7,
} ParaorbitStatus;

/**
 * Opaque orbit-instance handle.
 */
typedef struct InstanceHandle InstanceHandle;

/**
 * Opaque paracyclic morphism handle.
 */
typedef struct ParaHandle ParaHandle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on this thread. Borrowed; valid until
 * the next failing call on the same thread.
 */
const char *paraorbit_last_error(void);

/**
 * Releases a string returned by any `_format`/`_emit`/`_report` call.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void paraorbit_string_free(char *s);

/**
 * Parses the literal `n m : v0 ... vn` into a new morphism handle.
 *
 * # Safety
 * `literal` must be a NUL-terminated string and `out` a valid location.
 */
enum ParaorbitStatus paraorbit_para_parse(const char *literal, struct ParaHandle **out);

/**
 * # Safety
 * `out` must be a valid location.
 */
enum ParaorbitStatus paraorbit_para_identity(uintptr_t rank, struct ParaHandle **out);

/**
 * # Safety
 * `out` must be a valid location.
 */
enum ParaorbitStatus paraorbit_para_cycle(uintptr_t rank, struct ParaHandle **out);

/**
 * `outer ∘ inner` (apply `inner` first).
 *
 * # Safety
 * Handles must be live and `out` a valid location.
 */
enum ParaorbitStatus paraorbit_para_compose(const struct ParaHandle *outer,
                                            const struct ParaHandle *inner,
                                            struct ParaHandle **out);

/**
 * # Safety
 * `f` must be live and `out` a valid location.
 */
enum ParaorbitStatus paraorbit_para_dual(const struct ParaHandle *f, struct ParaHandle **out);

/**
 * Representative modulo full turns of the target.
 *
 * # Safety
 * `f` must be live and `out` a valid location.
 */
enum ParaorbitStatus paraorbit_para_canonical(const struct ParaHandle *f, struct ParaHandle **out);

/**
 * # Safety
 * `f` must be live and `out` a valid location.
 */
enum ParaorbitStatus paraorbit_para_eval(const struct ParaHandle *f, int64_t j, int64_t *out);

/**
 * # Safety
 * `f` must be live and `out` a valid location.
 */
enum ParaorbitStatus paraorbit_para_in_k(const struct ParaHandle *f, bool *out);

/**
 * # Safety
 * `f` must be live and `out` a valid location.
 */
enum ParaorbitStatus paraorbit_para_in_delta(const struct ParaHandle *f, bool *out);

/**
 * Renders the literal form; release with `paraorbit_string_free`.
 *
 * # Safety
 * `f` must be live and `out` a valid location.
 */
enum ParaorbitStatus paraorbit_para_format(const struct ParaHandle *f, char **out);

/**
 * # Safety
 * `f` must come from this library and not be freed twice.
 */
void paraorbit_para_free(struct ParaHandle *f);

/**
 * Builds a catalog instance by name.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid location.
 */
enum ParaorbitStatus paraorbit_instance_build(const char *name, struct InstanceHandle **out);

/**
 * Parses an instance file.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid location.
 */
enum ParaorbitStatus paraorbit_instance_parse(const char *json, struct InstanceHandle **out);

/**
 * Canonical instance-file text; release with `paraorbit_string_free`.
 *
 * # Safety
 * `inst` must be live and `out` a valid location.
 */
enum ParaorbitStatus paraorbit_instance_emit(const struct InstanceHandle *inst, char **out);

/**
 * Runs all structural validators: `Ok` or `CheckFailed`.
 *
 * # Safety
 * `inst` must be live.
 */
enum ParaorbitStatus paraorbit_instance_validate(const struct InstanceHandle *inst);

/**
 * Runs the full theorem suite: `Ok` or `CheckFailed`.
 *
 * # Safety
 * `inst` must be live.
 */
enum ParaorbitStatus paraorbit_instance_theorem(const struct InstanceHandle *inst);

/**
 * Text report of the theorem suite regardless of outcome; release with
 * `paraorbit_string_free`.
 *
 * # Safety
 * `inst` must be live and `out` a valid location.
 */
enum ParaorbitStatus paraorbit_instance_theorem_report(const struct InstanceHandle *inst,
                                                       char **out);

/**
 * Number of coset morphisms between two labelled objects.
 *
 * # Safety
 * `inst` must be live, labels NUL-terminated, `out` a valid location.
 */
enum ParaorbitStatus paraorbit_instance_hom_count(const struct InstanceHandle *inst,
                                                  const char *from,
                                                  const char *to,
                                                  uintptr_t *out);

/**
 * Number of homotopy classes between two labelled objects.
 *
 * # Safety
 * `inst` must be live, labels NUL-terminated, `out` a valid location.
 */
enum ParaorbitStatus paraorbit_instance_ho_count(const struct InstanceHandle *inst,
                                                 const char *from,
                                                 const char *to,
                                                 uintptr_t *out);

/**
 * # Safety
 * `inst` must come from this library and not be freed twice.
 */
void paraorbit_instance_free(struct InstanceHandle *inst);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* PARAORBIT_H */
