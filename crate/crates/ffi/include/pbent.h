#ifndef PBENT_H
#define PBENT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PbStatus {
  PB_STATUS_OK = 0,
  PB_STATUS_NULL_POINTER = 1,
  PB_STATUS_INVALID_ARGUMENT = 2,
  PB_STATUS_INVALID_FIELD = 3,
  PB_STATUS_PARSE = 4,
  PB_STATUS_IO = 5,
  PB_STATUS_PRECONDITION_FAILED = 6,
  PB_STATUS_VERIFICATION_FAILED = 7,
  PB_STATUS_PANIC = 99,
} PbStatus;

/**
 * GF(p^k) with a fixed modulus.
 */
typedef struct PbField PbField;

/**
 * A vectorial classification.
 */
typedef struct PbReport PbReport;

/**
 * A vectorial function GF(p^n) → GF(p^m) over default moduli.
 */
typedef struct PbVecFunc PbVecFunc;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or NULL. Free the
 * result with [`pb_string_free`].
 */
char *pb_last_error_message(void);

/**
 * # Safety
 * `s` must come from this library, or be NULL.
 */
void pb_string_free(char *s);

/**
 * Library version; static storage, do not free.
 */
const char *pb_version(void);

/**
 * GF(p^k) over `modulus` (k + 1 coefficients, constant term first, monic).
 *
 * # Safety
 * `modulus` must point to `len` values; `out` must be writable.
 */
enum PbStatus pb_field_new(uint32_t p,
                           const uint32_t *modulus,
                           uintptr_t len,
                           struct PbField **out_field);

/**
 * GF(p^k) over the least irreducible monic modulus.
 *
 * # Safety
 * `out_field` must be writable.
 */
enum PbStatus pb_field_default(uint32_t p, uintptr_t k, struct PbField **out_field);

/**
 * # Safety
 * `field` must come from this library, or be NULL.
 */
void pb_field_free(struct PbField *field);

/**
 * Number of elements, or 0 for NULL.
 *
 * # Safety
 * `field` must be a live handle or NULL.
 */
uint32_t pb_field_order(const struct PbField *field);

/**
 * Product of two elements given by canonical index.
 *
 * # Safety
 * `field` must be a live handle; `result` writable.
 */
enum PbStatus pb_field_mul(const struct PbField *field, uint32_t a, uint32_t b, uint32_t *result);

/**
 * # Safety
 * `field` must be a live handle; `result` writable.
 */
enum PbStatus pb_field_add(const struct PbField *field, uint32_t a, uint32_t b, uint32_t *result);

/**
 * Absolute trace into F_p.
 *
 * # Safety
 * `field` must be a live handle; `result` writable.
 */
enum PbStatus pb_field_trace(const struct PbField *field, uint32_t a, uint32_t *result);

/**
 * A function GF(p^n) → GF(p^m) from its table of p^n codomain indices.
 *
 * # Safety
 * `table` must point to `len` values; `out_func` writable.
 */
enum PbStatus pb_vfunc_from_table(uint32_t p,
                                  uintptr_t n,
                                  uintptr_t m,
                                  const uint32_t *table,
                                  uintptr_t len,
                                  struct PbVecFunc **out_func);

/**
 * Reads a `.ptt` truth table.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out_func` writable.
 */
enum PbStatus pb_vfunc_read_ptt(const char *path, struct PbVecFunc **out_func);

/**
 * # Safety
 * `func` must be a live handle; `path` a NUL-terminated string.
 */
enum PbStatus pb_vfunc_write_ptt(const struct PbVecFunc *func, const char *path);

/**
 * # Safety
 * `func` must be a live handle; `result` writable.
 */
enum PbStatus pb_vfunc_eval(const struct PbVecFunc *func, uint32_t x, uint32_t *result);

/**
 * # Safety
 * `func` must come from this library, or be NULL.
 */
void pb_vfunc_free(struct PbVecFunc *func);

/**
 * Classifies every component.
 *
 * # Safety
 * `func` must be a live handle; `out_report` writable.
 */
enum PbStatus pb_classify(const struct PbVecFunc *func, struct PbReport **out_report);

/**
 * Builds and classifies the ternary (8, 4) example; `reading` 0 is the
 * U-consistent reading, 1 the literal formula.
 *
 * # Safety
 * `out_report` must be writable.
 */
enum PbStatus pb_reproduce_example(uint32_t reading, struct PbReport **out_report);

/**
 * # Safety
 * `report` must come from this library, or be NULL.
 */
void pb_report_free(struct PbReport *report);

/**
 * 1 if every component is weakly regular bent, 0 otherwise or for NULL.
 *
 * # Safety
 * `report` must be a live handle or NULL.
 */
int32_t pb_report_weakly_regular(const struct PbReport *report);

/**
 * # Safety
 * `report` must be a live handle or NULL.
 */
int32_t pb_report_bent(const struct PbReport *report);

/**
 * # Safety
 * `report` must be a live handle or NULL.
 */
uintptr_t pb_report_component_count(const struct PbReport *report);

/**
 * Component `i` in ascending λ order. `epsilon` receives 0 when the
 * component is not weakly regular.
 *
 * # Safety
 * `report` must be a live handle; out-pointers writable.
 */
enum PbStatus pb_report_component(const struct PbReport *report,
                                  uintptr_t i,
                                  uint32_t *lambda,
                                  int32_t *weakly_regular,
                                  int32_t *epsilon);

/**
 * The JSON report; free with [`pb_string_free`]. NULL for a NULL handle.
 *
 * # Safety
 * `report` must be a live handle or NULL.
 */
char *pb_report_json(const struct PbReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PBENT_H */
