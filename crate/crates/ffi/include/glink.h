#ifndef GLINK_H
#define GLINK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GlinkStatus {
  GLINK_STATUS_OK = 0,
  GLINK_STATUS_NULL_POINTER = 1,
  GLINK_STATUS_INVALID_UTF8 = 2,
  GLINK_STATUS_PARSE = 3,
  GLINK_STATUS_INVALID_INPUT = 4,
  GLINK_STATUS_UNSUPPORTED = 5,
  GLINK_STATUS_VERIFY_FAILED = 6,
  GLINK_STATUS_INTERNAL = 7,
  GLINK_STATUS_PANIC = 8,
} GlinkStatus;

typedef enum GlinkGauge {
  GLINK_GAUGE_GL = 0,
  GLINK_GAUGE_SL = 1,
} GlinkGauge;

/**
 * Opaque link diagram.
 */
typedef struct GlinkDiagram GlinkDiagram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a braid word such as `strands=2; s1 s1 s1` and takes its closure.
 *
 * # Safety
 * `text` must be a valid C string and `out` a valid pointer.
 */
enum GlinkStatus glink_diagram_from_braid(const char *text, struct GlinkDiagram **out);

/**
 * Parses PD JSON.
 *
 * # Safety
 * `text` must be a valid C string and `out` a valid pointer.
 */
enum GlinkStatus glink_diagram_from_pd(const char *text, struct GlinkDiagram **out);

/**
 * # Safety
 * `d` must come from this library and not be freed twice. Null is ignored.
 */
void glink_diagram_free(struct GlinkDiagram *d);

/**
 * # Safety
 * `d` must be a live diagram handle.
 */
size_t glink_diagram_num_crossings(const struct GlinkDiagram *d);

/**
 * # Safety
 * `d` must be a live diagram handle.
 */
size_t glink_diagram_num_components(const struct GlinkDiagram *d);

/**
 * Canonical PD JSON of the diagram.
 *
 * # Safety
 * `d` must be a live diagram handle and `out` a valid pointer.
 */
enum GlinkStatus glink_diagram_to_pd(const struct GlinkDiagram *d, char **out);

/**
 * The invariant as canonical text, e.g. `q^2 + 1 + q^-2`.
 *
 * # Safety
 * `d` must be a live diagram handle and `out` a valid pointer.
 */
enum GlinkStatus glink_invariant(const struct GlinkDiagram *d,
                                 uint32_t rank,
                                 enum GlinkGauge gauge,
                                 char **out);

/**
 * Homology table as JSON. `sigma` (e.g. `1,-1`) may be null for `P = X^2`.
 *
 * # Safety
 * `d` must be a live diagram handle, `sigma` null or a C string, `out` valid.
 */
enum GlinkStatus glink_homology_json(const struct GlinkDiagram *d, const char *sigma, char **out);

/**
 * Total deformed dimension per coloring, as JSON keyed by root values.
 *
 * # Safety
 * `d` must be a live diagram handle, `sigma` a C string, `out` valid.
 */
enum GlinkStatus glink_split_json(const struct GlinkDiagram *d, const char *sigma, char **out);

/**
 * Runs a named relation suite. Returns `GLINK_STATUS_VERIFY_FAILED` when
 * the suite ran and found a failure.
 *
 * # Safety
 * `suite` must be a C string.
 */
enum GlinkStatus glink_verify(const char *suite, uint32_t rank);

/**
 * Message for the last failure on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *glink_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not be freed twice. Null is ignored.
 */
void glink_string_free(char *s);

/**
 * Library version, static storage.
 */
const char *glink_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GLINK_H */
