#ifndef POLYSEQ_H
#define POLYSEQ_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PolyseqStatus {
  POLYSEQ_STATUS_OK = 0,
  POLYSEQ_STATUS_NULL_POINTER = 1,
  POLYSEQ_STATUS_INVALID_UTF8 = 2,
  POLYSEQ_STATUS_INVALID_ARGUMENT = 3,
  POLYSEQ_STATUS_UNKNOWN_IDENTITY = 4,
  POLYSEQ_STATUS_HYPOTHESIS_VIOLATION = 5,
  POLYSEQ_STATUS_COMPUTE_ERROR = 6,
  POLYSEQ_STATUS_PANIC = 7,
} PolyseqStatus;

typedef enum PolyseqFamily {
  POLYSEQ_FAMILY_POLY_BERNOULLI_B = 0,
  POLYSEQ_FAMILY_POLY_BERNOULLI_C = 1,
  POLYSEQ_FAMILY_POLYCOSECANT = 2,
  POLYSEQ_FAMILY_POLYCOTANGENT = 3,
  POLYSEQ_FAMILY_TILDE_COSECANT = 4,
} PolyseqFamily;

// An exact rational number.
typedef struct PolyseqRational PolyseqRational;

// The outcome of an identity check.
typedef struct PolyseqReport PolyseqReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Writes the value of `family` at order `n` and weight `k` to `*out`.
//
// # Safety
// `out` must be a valid pointer to writable storage.
enum PolyseqStatus polyseq_family_value(enum PolyseqFamily family,
                                        int64_t n,
                                        int64_t k,
                                        struct PolyseqRational **out);

// `B_n^{(k)}`.
//
// # Safety
// See [`polyseq_family_value`].
enum PolyseqStatus polyseq_poly_bernoulli(int64_t n, int64_t k, struct PolyseqRational **out);

// `C_n^{(k)}`.
//
// # Safety
// See [`polyseq_family_value`].
enum PolyseqStatus polyseq_poly_bernoulli_c(int64_t n, int64_t k, struct PolyseqRational **out);

// `D_n^{(k)}`.
//
// # Safety
// See [`polyseq_family_value`].
enum PolyseqStatus polyseq_polycosecant(int64_t n, int64_t k, struct PolyseqRational **out);

// `β_n^{(k)}`.
//
// # Safety
// See [`polyseq_family_value`].
enum PolyseqStatus polyseq_polycotangent(int64_t n, int64_t k, struct PolyseqRational **out);

// Symmetrized poly-Bernoulli number `ℬ_m^{(-l)}(n)`.
//
// # Safety
// See [`polyseq_family_value`].
enum PolyseqStatus polyseq_sym_poly_bernoulli(int64_t m,
                                              int64_t l,
                                              int64_t n,
                                              struct PolyseqRational **out);

// Symmetrized polycosecant number `𝒟_m^{(-l)}(n)`.
//
// # Safety
// See [`polyseq_family_value`].
enum PolyseqStatus polyseq_sym_polycosecant(int64_t m,
                                            int64_t l,
                                            int64_t n,
                                            struct PolyseqRational **out);

// Stirling number of the second kind when `kind` is 2, unsigned first kind when `kind` is 1.
//
// # Safety
// See [`polyseq_family_value`].
enum PolyseqStatus polyseq_stirling(int32_t kind,
                                    int64_t n,
                                    int64_t m,
                                    struct PolyseqRational **out);

// Renders `value` as `a` or `a/b`. Release the string with [`polyseq_string_free`].
//
// # Safety
// `value` must be a live handle or null; `out` must be writable.
enum PolyseqStatus polyseq_rational_to_string(const struct PolyseqRational *value, char **out);

// Returns 1 if the two values are equal, 0 otherwise (or if either is null).
//
// # Safety
// Both arguments must be live handles or null.
int32_t polyseq_rational_equal(const struct PolyseqRational *a, const struct PolyseqRational *b);

// # Safety
// `value` must come from this library and not have been freed already.
void polyseq_rational_free(struct PolyseqRational *value);

// # Safety
// `s` must come from this library and not have been freed already.
void polyseq_string_free(char *s);

// Runs identity `identity` with parameters given as a JSON object, e.g.
// `{"p": 3, "N": 2, "k": 3, "m": 2, "n": 5}`. A failing check is not an
// error: the status is `Ok` and [`polyseq_report_passed`] returns 0.
//
// # Safety
// `identity` and `params_json` must be nul-terminated strings; `out` must be writable.
enum PolyseqStatus polyseq_verify(const char *identity,
                                  const char *params_json,
                                  struct PolyseqReport **out);

// 1 if every instance held, 0 otherwise (or if `report` is null).
//
// # Safety
// `report` must be a live handle or null.
int32_t polyseq_report_passed(const struct PolyseqReport *report);

// The report as pretty JSON. Release the string with [`polyseq_string_free`].
//
// # Safety
// `report` must be a live handle; `out` must be writable.
enum PolyseqStatus polyseq_report_to_json(const struct PolyseqReport *report, char **out);

// # Safety
// `report` must come from this library and not have been freed already.
void polyseq_report_free(struct PolyseqReport *report);

// Message for the last failed call on this thread, or null. The pointer
// stays valid until the next call into the library from the same thread.
const char *polyseq_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYSEQ_H */
