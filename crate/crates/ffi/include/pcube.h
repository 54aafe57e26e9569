#ifndef PCUBE_H
#define PCUBE_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PcubeStatus {
  PCUBE_STATUS_OK = 0,
  PCUBE_STATUS_NULL_POINTER = 1,
  PCUBE_STATUS_INVALID_UTF8 = 2,
  PCUBE_STATUS_PARSE = 3,
  PCUBE_STATUS_INVALID_ARGUMENT = 4,
  PCUBE_STATUS_NOT_PARTIAL_CUBE = 5,
  PCUBE_STATUS_PANIC = 6,
} PcubeStatus;

/**
 * A certificate of any kind.
 */
typedef struct PcubeCertificate PcubeCertificate;

/**
 * A named graph.
 */
typedef struct PcubeGraph PcubeGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call into this library from the same thread.
 */
const char *pcube_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void pcube_string_free(char *s);

/**
 * Parses the text graph format.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum PcubeStatus pcube_graph_parse(const char *text, struct PcubeGraph **out);

/**
 * Builds a generator family member, e.g. `("hypercube", [3], 1)`.
 *
 * # Safety
 * `family` must be a nul-terminated string, `params` must point to `len`
 * values (or be null when `len` is 0), and `out` must be writable.
 */
enum PcubeStatus pcube_graph_generate(const char *family,
                                      const uint64_t *params,
                                      size_t len,
                                      struct PcubeGraph **out);

/**
 * # Safety
 * `g` must be null or a graph from this library, not yet freed.
 */
void pcube_graph_free(struct PcubeGraph *g);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t pcube_graph_vertex_count(const struct PcubeGraph *g);

/**
 * Number of edges, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t pcube_graph_edge_count(const struct PcubeGraph *g);

/**
 * The graph in text format.
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum PcubeStatus pcube_graph_to_text(const struct PcubeGraph *g, char **out);

/**
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum PcubeStatus pcube_is_partial_cube(const struct PcubeGraph *g, bool *out);

/**
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum PcubeStatus pcube_is_planar(const struct PcubeGraph *g, bool *out);

/**
 * Number of Θ-classes of a partial cube.
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum PcubeStatus pcube_theta_class_count(const struct PcubeGraph *g, size_t *out);

/**
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum PcubeStatus pcube_is_minimal_obstruction(const struct PcubeGraph *g, bool *out);

/**
 * Decomposition certificate for a planar partial cube (`*holds` true), or
 * a refutation certificate (`*holds` false).
 *
 * # Safety
 * `g` must be a live graph handle; `out` and `holds` must be writable.
 */
enum PcubeStatus pcube_certify(const struct PcubeGraph *g,
                               struct PcubeCertificate **out,
                               bool *holds);

/**
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum PcubeStatus pcube_certificate_from_json(const char *text, struct PcubeCertificate **out);

/**
 * # Safety
 * `c` must be a live certificate handle; `out` must be writable.
 */
enum PcubeStatus pcube_certificate_to_json(const struct PcubeCertificate *c, char **out);

/**
 * The certificate kind: `decomposition`, `kuratowski`, `pc-refutation` or
 * `flaw-witness`.
 *
 * # Safety
 * `c` must be a live certificate handle; `out` must be writable.
 */
enum PcubeStatus pcube_certificate_kind(const struct PcubeCertificate *c, char **out);

/**
 * Checks the certificate; on rejection the reason is available from
 * [`pcube_last_error`] while the call still returns `Ok`.
 *
 * # Safety
 * `c` must be a live certificate handle; `valid` must be writable.
 */
enum PcubeStatus pcube_certificate_verify(const struct PcubeCertificate *c, bool *valid);

/**
 * # Safety
 * `c` must be null or a certificate from this library, not yet freed.
 */
void pcube_certificate_free(struct PcubeCertificate *c);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PCUBE_H */
