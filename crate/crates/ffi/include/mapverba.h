/* Generated by cbindgen from the mapverba-ffi crate. Do not edit. */

#ifndef MAPVERBA_H
#define MAPVERBA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every call.
typedef enum MvStatus {
  MV_STATUS_OK = 0,
  // A required pointer argument was null.
  MV_STATUS_NULL = 1,
  // A string argument was not valid UTF-8.
  MV_STATUS_UTF8 = 2,
  // Input text could not be parsed, or an argument names nothing known.
  MV_STATUS_PARSE = 3,
  // The map breaks a document invariant.
  MV_STATUS_VALIDATION = 4,
  // A manifest refers to features, pairs or routes the map lacks.
  MV_STATUS_UNKNOWN_ID = 5,
  // The map is valid but cannot produce the requested output.
  MV_STATUS_PRECONDITION = 6,
  // A bug inside the library; the message says what went wrong.
  MV_STATUS_INTERNAL = 7,
} MvStatus;

// A parsed map document.
typedef struct MvMap MvMap;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a GeoJSON map. On success `*out` receives a handle to release
// with `mv_map_free`. Parsing does not validate; see
// `mv_map_validate_json`.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a writable pointer.
enum MvStatus mv_map_parse(const char *json, struct MvMap **out);

// Releases a map handle. Null is ignored.
//
// # Safety
// `map` must be null or a handle from `mv_map_parse` not yet freed.
void mv_map_free(struct MvMap *map);

// Number of features in the map.
//
// # Safety
// `map` must be a live handle and `out` a writable pointer.
enum MvStatus mv_map_feature_count(const struct MvMap *map, size_t *out);

// Writes the map's invariant violations as a JSON array of
// `{code, path, message}` objects; `[]` means the map is valid.
//
// # Safety
// `map` must be a live handle and `out` a writable pointer.
enum MvStatus mv_map_validate_json(const struct MvMap *map, char **out);

// Compiles the map into the representation named by `kind` (for example
// `"audio-description"`, `"mud-map"` or `"alt-grid"`) with default
// options. `*text_out` receives the rendered text and `*manifest_out` its
// manifest JSON.
//
// # Safety
// `map` must be a live handle, `kind` a NUL-terminated string and both
// out parameters writable pointers.
enum MvStatus mv_compile(const struct MvMap *map,
                         const char *kind,
                         char **text_out,
                         char **manifest_out);

// Scores a manifest against the map and renders the report in `format`
// (`"md"`, `"json-like"` or `"csv"`). `*all_pass` is set to 1 when no
// applicable criterion fails and 0 otherwise; it may be null.
//
// # Safety
// `map` must be a live handle, `manifest_json` and `format`
// NUL-terminated strings, `report_out` writable and `all_pass` null or
// writable.
enum MvStatus mv_evaluate(const struct MvMap *map,
                          const char *manifest_json,
                          const char *format,
                          char **report_out,
                          int32_t *all_pass);

// Writes the navigator bundle JSON for the map.
//
// # Safety
// `map` must be a live handle and `out` a writable pointer.
enum MvStatus mv_export_bundle(const struct MvMap *map, char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string from this library not yet freed.
void mv_string_free(char *s);

// Message for the most recent failed call on this thread, or the empty
// string after a successful one. The pointer stays valid until the next
// call into the library on the same thread; do not free it.
const char *mv_last_error(void);

// Library version as a static string.
const char *mv_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MAPVERBA_H */
