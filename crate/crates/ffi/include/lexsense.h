/* C interface for the lexsense disambiguation engine. */

#ifndef LEXSENSE_H
#define LEXSENSE_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by fallible functions.
typedef enum LexsenseStatus {
  LEXSENSE_STATUS_OK = 0,
  LEXSENSE_STATUS_NULL_ARGUMENT = 1,
  LEXSENSE_STATUS_INVALID_UTF8 = 2,
  LEXSENSE_STATUS_IO = 3,
  LEXSENSE_STATUS_PARSE_ERROR = 4,
  LEXSENSE_STATUS_DEGENERATE_DISTANCE = 5,
  LEXSENSE_STATUS_INTERNAL = 6,
} LexsenseStatus;

// Disambiguation engine behind the C interface.
typedef struct LexsenseEngine LexsenseEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Build an engine from a dictionary file and a class-lexicon file. When
// `rules_path` is NULL the rule base is extracted from the dictionary;
// otherwise it is loaded from the given file. Returns NULL on failure.
//
// # Safety
// `dict_path` and `lexicon_path` must be valid NUL-terminated strings;
// `rules_path` may be NULL. The returned handle must be released with
// [`lexsense_engine_free`].
struct LexsenseEngine *lexsense_engine_new(const char *dict_path,
                                           const char *lexicon_path,
                                           const char *rules_path);

// Release an engine handle. NULL is a no-op.
//
// # Safety
// `engine` must be NULL or a pointer returned by [`lexsense_engine_new`]
// that has not been freed yet.
void lexsense_engine_free(struct LexsenseEngine *engine);

// Number of rules held by the engine.
//
// # Safety
// `engine` must be a live handle from [`lexsense_engine_new`] (or NULL,
// which yields 0).
uint64_t lexsense_engine_rule_count(const struct LexsenseEngine *engine);

// Disambiguate a tagged corpus (the tab-separated token format) and return
// the assignment lines as a newly allocated string, or NULL on error.
//
// # Safety
// `engine` must be a live handle; `corpus` a valid NUL-terminated string.
char *lexsense_disambiguate_corpus(const struct LexsenseEngine *engine, const char *corpus);

// Disambiguate from a pre-extracted relation file.
//
// # Safety
// Same contract as [`lexsense_disambiguate_corpus`].
char *lexsense_disambiguate_relations(const struct LexsenseEngine *engine, const char *relations);

// Distance between two comma-separated class sets, written to `out`.
//
// # Safety
// `classes1` and `classes2` must be valid NUL-terminated strings and
// `out` a valid pointer to a double.
enum LexsenseStatus lexsense_class_distance(const char *classes1,
                                            const char *classes2,
                                            double *out);

// Release a string returned by this library. NULL is a no-op.
//
// # Safety
// `s` must be NULL or a pointer returned by a lexsense function, not yet
// freed.
void lexsense_string_free(char *s);

// The last error message raised on this thread, as a newly allocated
// string (free with [`lexsense_string_free`]), or NULL when no error has
// occurred.
char *lexsense_last_error(void);

// Library version as a static string; do not free.
const char *lexsense_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LEXSENSE_H */
