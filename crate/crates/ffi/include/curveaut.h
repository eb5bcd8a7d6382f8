#ifndef CURVEAUT_H
#define CURVEAUT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>

// Result of every fallible call. Codes 2 to 4 match the command-line
// exit codes.
typedef enum CurveautStatus {
  CURVEAUT_STATUS_OK = 0,
  // A required pointer argument was null.
  CURVEAUT_STATUS_NULL_ARGUMENT = 1,
  // Malformed text, unknown field, or an input the operation rejects.
  CURVEAUT_STATUS_INPUT = 2,
  CURVEAUT_STATUS_NOT_AN_AUTOMORPHISM = 3,
  CURVEAUT_STATUS_RESOURCE_CAP = 4,
  // A Rust panic was caught at the boundary.
  CURVEAUT_STATUS_INTERNAL = 5,
} CurveautStatus;

// The outcome of classifying a curve.
typedef struct CurveautClassification CurveautClassification;

// A plane curve `F(x, y) = 0` over a fixed field.
typedef struct CurveautCurve CurveautCurve;

// A polynomial automorphism of the affine plane, with its inverse.
typedef struct CurveautMap CurveautMap;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer
// stays valid until the next failing call on the same thread.
const char *curveaut_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed already.
void curveaut_string_free(char *s);

// Parses `text` over `field` (`"q"` or `"fp:<p>"`).
//
// # Safety
// `text` and `field` must be NUL-terminated strings; `out` must be writable.
enum CurveautStatus curveaut_curve_parse(const char *text,
                                         const char *field,
                                         struct CurveautCurve **out);

// # Safety
// `curve` must be null or a handle from this library not yet freed.
void curveaut_curve_free(struct CurveautCurve *curve);

// The normalised equation as text.
//
// # Safety
// `curve` must be a live handle; `out` must be writable.
enum CurveautStatus curveaut_curve_to_string(const struct CurveautCurve *curve, char **out);

// Builds the map `(x, y) -> (f, g)`, failing with
// `NotAnAutomorphism` when it is not invertible.
//
// # Safety
// String arguments must be NUL-terminated; `out` must be writable.
enum CurveautStatus curveaut_map_parse(const char *f,
                                       const char *g,
                                       const char *field,
                                       struct CurveautMap **out);

// # Safety
// `map` must be null or a handle from this library not yet freed.
void curveaut_map_free(struct CurveautMap *map);

// The number of elementary links in the reduced decomposition.
//
// # Safety
// `map` must be a live handle; `out` must be writable.
enum CurveautStatus curveaut_map_link_length(const struct CurveautMap *map, size_t *out);

// The image curve under `map`, as a new handle.
//
// # Safety
// Handles must be live; `out` must be writable.
enum CurveautStatus curveaut_map_pushforward(const struct CurveautMap *map,
                                             const struct CurveautCurve *curve,
                                             struct CurveautCurve **out);

// Whether `map` carries `curve` onto itself.
//
// # Safety
// Handles must be live; `out` must be writable.
enum CurveautStatus curveaut_map_preserves(const struct CurveautMap *map,
                                           const struct CurveautCurve *curve,
                                           bool *out);

// Classifies `curve` up to automorphisms of the plane.
//
// # Safety
// `curve` must be a live handle; `out` must be writable.
enum CurveautStatus curveaut_classify(const struct CurveautCurve *curve,
                                      struct CurveautClassification **out);

// # Safety
// `c` must be null or a handle from this library not yet freed.
void curveaut_classification_free(struct CurveautClassification *c);

// The case tag, such as `"Line"` or `"MonomialHyperbola"`.
//
// # Safety
// `c` must be a live handle; `out` must be writable.
enum CurveautStatus curveaut_classification_case(const struct CurveautClassification *c,
                                                 char **out);

// The full classification, in the layout of the `classify` report.
//
// # Safety
// `c` must be a live handle; `out` must be writable.
enum CurveautStatus curveaut_classification_to_json(const struct CurveautClassification *c,
                                                    char **out);

// The conjugating automorphism taking the curve to its normal form.
//
// # Safety
// `c` must be a live handle; `out` must be writable.
enum CurveautStatus curveaut_classification_conjugator(const struct CurveautClassification *c,
                                                       struct CurveautMap **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CURVEAUT_H */
