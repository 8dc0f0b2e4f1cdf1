#ifndef ZETAKIRCH_H
#define ZETAKIRCH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call. Values 1 to 5 match the command-line exit codes.
 */
typedef enum ZkStatus {
  ZK_STATUS_OK = 0,
  ZK_STATUS_IDENTITY_FAILURE = 1,
  ZK_STATUS_INVALID = 2,
  ZK_STATUS_SINGULAR = 3,
  ZK_STATUS_PRECONDITION = 4,
  ZK_STATUS_COVERING = 5,
  ZK_STATUS_NULL_ARGUMENT = 6,
  ZK_STATUS_INTERNAL = 7,
} ZkStatus;

/**
 * Opaque weighted graph.
 */
typedef struct ZkGraph ZkGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *zk_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be freed twice.
 */
void zk_string_free(char *s);

/**
 * Parses `.wgr` text into a new graph handle.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a writable pointer.
 */
enum ZkStatus zk_graph_parse(const char *text, struct ZkGraph **out);

/**
 * Releases a graph handle. NULL is ignored.
 *
 * # Safety
 * `g` must come from `zk_graph_parse` and must not be freed twice.
 */
void zk_graph_free(struct ZkGraph *g);

/**
 * Writes the vertex and edge counts.
 *
 * # Safety
 * `g` must be a live handle; `n` and `m` must be writable.
 */
enum ZkStatus zk_graph_size(const struct ZkGraph *g, size_t *n, size_t *m);

/**
 * Weighted complexity, resistance distances and the four Kirchhoff indices
 * as a JSON object with rationals written as strings.
 *
 * # Safety
 * `g` must be a live handle and `out` a writable pointer.
 */
enum ZkStatus zk_kirchhoff_json(const struct ZkGraph *g, char **out);

/**
 * Runs a verification suite (`t10`, `t11t12`, `t13`, `hn`, `c1` or `all`)
 * and writes a JSON report. Returns `IdentityFailure` when any check fails;
 * the report is written in that case too.
 *
 * # Safety
 * `g` must be a live handle, `suite` a nul-terminated string and `out`
 * a writable pointer.
 */
enum ZkStatus zk_verify_json(const struct ZkGraph *g, const char *suite, char **out);

/**
 * Builds the regular cover described by `.vlt` text, runs the covering
 * identities and writes a JSON report including the derived `.wgr` text.
 *
 * # Safety
 * `g` must be a live handle, `voltage` a nul-terminated string and `out`
 * a writable pointer.
 */
enum ZkStatus zk_cover_json(const struct ZkGraph *g, const char *voltage, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZETAKIRCH_H */
