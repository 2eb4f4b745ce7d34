#ifndef MOMHIST_H
#define MOMHIST_H

/* Generated by cbindgen from the momhist-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible entry point.
typedef enum MomhistStatus {
  MOMHIST_STATUS_OK = 0,
  MOMHIST_STATUS_NULL_ARGUMENT = 1,
  MOMHIST_STATUS_INVALID_UTF8 = 2,
  MOMHIST_STATUS_PARSE_ERROR = 3,
  MOMHIST_STATUS_DEGENERATE_DATA = 4,
  MOMHIST_STATUS_INVALID_GRID = 5,
  MOMHIST_STATUS_INVALID_ARGUMENT = 6,
  MOMHIST_STATUS_INTERNAL_ERROR = 7,
} MomhistStatus;

// Opaque catalog handle.
typedef struct MomhistCatalog MomhistCatalog;

// Opaque dataset handle.
typedef struct MomhistDataset MomhistDataset;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses newline/comma-separated decimal text into a dataset handle.
//
// # Safety
// `text` must be a valid NUL-terminated string and `out` a valid pointer.
enum MomhistStatus momhist_dataset_parse(const char *text, struct MomhistDataset **out);

// Number of values in the dataset; 0 for a null handle.
//
// # Safety
// `ds` must be null or a live handle from `momhist_dataset_parse`.
size_t momhist_dataset_len(const struct MomhistDataset *ds);

// Releases a dataset handle. Null is a no-op.
//
// # Safety
// `ds` must be null or a live handle; it is invalid afterwards.
void momhist_dataset_free(struct MomhistDataset *ds);

// Enumerates all shape level sets into a catalog handle.
//
// # Safety
// `ds` must be a live dataset handle and `out` a valid pointer.
enum MomhistStatus momhist_catalog_build(const struct MomhistDataset *ds,
                                         uint32_t max_bins,
                                         bool exactly_k,
                                         struct MomhistCatalog **out);

// Number of shapes in the catalog; 0 for a null handle.
//
// # Safety
// `cat` must be null or a live handle from `momhist_catalog_build`.
size_t momhist_catalog_len(const struct MomhistCatalog *cat);

// Releases a catalog handle. Null is a no-op.
//
// # Safety
// `cat` must be null or a live handle; it is invalid afterwards.
void momhist_catalog_free(struct MomhistCatalog *cat);

// Serializes the catalog as JSON (level sets with exact vertices).
//
// # Safety
// `cat` must be a live catalog handle, `out` a valid pointer; the returned
// string must be released with `momhist_string_free`.
enum MomhistStatus momhist_catalog_json(const struct MomhistCatalog *cat, char **out);

// Serializes the full consistency/skewness classification as JSON.
//
// # Safety
// `cat` must be a live catalog handle, `out` a valid pointer; the returned
// string must be released with `momhist_string_free`.
enum MomhistStatus momhist_classify_json(const struct MomhistCatalog *cat,
                                         bool density_flavor,
                                         char **out);

// Serializes the width-stability cells as JSON.
//
// # Safety
// `cat` must be a live catalog handle, `out` a valid pointer; the returned
// string must be released with `momhist_string_free`.
enum MomhistStatus momhist_stability_json(const struct MomhistCatalog *cat, char **out);

// Audits one grid (anchor and width given as decimal or `p/q` strings)
// and serializes the verdict as JSON.
//
// # Safety
// `ds` must be a live dataset handle, `t0`/`h` valid NUL-terminated
// strings, `out` a valid pointer; release the result with
// `momhist_string_free`.
enum MomhistStatus momhist_audit_json(const struct MomhistDataset *ds,
                                      const char *t0,
                                      const char *h,
                                      uint32_t max_bins,
                                      char **out);

// Releases a string returned by this library. Null is a no-op.
//
// # Safety
// `s` must be null or a string produced by this library, not yet freed.
void momhist_string_free(char *s);

// Static description of a status code.
const char *momhist_status_message(enum MomhistStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MOMHIST_H */
