#ifndef ESSALG_H
#define ESSALG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result code of every fallible call.
 */
typedef enum EssalgStatus {
  ESSALG_STATUS_OK = 0,
  /*
   Malformed JSON or polynomial text.
   */
  ESSALG_STATUS_PARSE = 1,
  /*
   Well-formed but unusable input.
   */
  ESSALG_STATUS_INPUT = 2,
  /*
   A computation budget was exhausted.
   */
  ESSALG_STATUS_RESOURCE = 3,
  /*
   A required pointer was null or a string was not UTF-8.
   */
  ESSALG_STATUS_NULL_ARGUMENT = 4,
  /*
   Internal failure; the library caught a panic.
   */
  ESSALG_STATUS_INTERNAL = 5,
} EssalgStatus;

/*
 A parsed input file.
 */
typedef struct EssalgPresentation EssalgPresentation;

/*
 The result of one command.
 */
typedef struct EssalgReport EssalgReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or null. Owned by the
 library and valid until the next call on the same thread.
 */
const char *essalg_last_error_message(void);

/*
 Library version as a static string.
 */
const char *essalg_version(void);

/*
 Parses an input file given as JSON text.

 # Safety
 `json` must be a valid C string and `out` a valid pointer.
 */
enum EssalgStatus essalg_presentation_from_json(const char *json, struct EssalgPresentation **out);

/*
 The `kind` field of the input file, as a string to free with
 [`essalg_string_free`]. Null if `p` is null.

 # Safety
 `p` must be null or a live handle.
 */
char *essalg_presentation_kind(const struct EssalgPresentation *p);

/*
 # Safety
 `p` must be null or a handle not yet freed.
 */
void essalg_presentation_free(struct EssalgPresentation *p);

/*
 Runs a command described as JSON, e.g. `{"command":"krull","input":{...}}`.
 This is the same shape as the invocation part of a report.

 # Safety
 `invocation` must be a valid C string and `out` a valid pointer.
 */
enum EssalgStatus essalg_run(const char *invocation, struct EssalgReport **out);

/*
 Krull dimension of a commutative input (or of the standardization of a
 noncommutative one).

 # Safety
 `p` must be a live handle and `out` a valid pointer.
 */
enum EssalgStatus essalg_krull(const struct EssalgPresentation *p, struct EssalgReport **out);

/*
 Runs the degeneracy test. `sequence` may be null, otherwise it is a
 comma-separated candidate regular sequence.

 # Safety
 `p` must be a live handle, `sequence` null or a valid C string, `out` valid.
 */
enum EssalgStatus essalg_degeneracy(const struct EssalgPresentation *p,
                                    const char *sequence,
                                    struct EssalgReport **out);

/*
 Verdict of a report, or null for commands without one. Free with
 [`essalg_string_free`].

 # Safety
 `r` must be null or a live handle.
 */
char *essalg_report_verdict(const struct EssalgReport *r);

/*
 The full report as pretty JSON. Free with [`essalg_string_free`].

 # Safety
 `r` must be null or a live handle.
 */
char *essalg_report_json(const struct EssalgReport *r);

/*
 # Safety
 `r` must be null or a handle not yet freed.
 */
void essalg_report_free(struct EssalgReport *r);

/*
 Replays a stored report and writes the replay summary as JSON to `out`.
 A report whose witness fails to replay still returns `Ok`; the summary
 carries verdict `Failed`.

 # Safety
 `report_json` must be a valid C string and `out` a valid pointer.
 */
enum EssalgStatus essalg_verify_report(const char *report_json, char **out);

/*
 Releases a string returned by this library.

 # Safety
 `s` must be null or a string from this library not yet freed.
 */
void essalg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ESSALG_H */
