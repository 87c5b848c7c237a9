/*
  Copyright 2026 The SolitonScope Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

#ifndef SOLITONSCOPE_SOLITONSCOPE_H
#define SOLITONSCOPE_SOLITONSCOPE_H

#include <stddef.h>

#if defined(SOLITONSCOPE_BUILDING)
#define SS_API __attribute__((visibility("default")))
#else
#define SS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes returned by every fallible call. */
typedef enum ss_status {
  SS_OK = 0,
  SS_ERR_INPUT = 1,     /* syntax, unbound variable, schema or precondition */
  SS_ERR_NUMERICAL = 2, /* domain violation, singular metric, drop budget */
  SS_ERR_ARGUMENT = 3,  /* null handle or pointer, buffer too small */
  SS_ERR_INTERNAL = 4
} ss_status;

typedef struct ss_expr ss_expr;
typedef struct ss_session ss_session;

SS_API const char* ss_version(void);

/* Message of the last failure on the calling thread; "" if none. */
SS_API const char* ss_last_error(void);

/* Error kind of the last failure: "syntax", "unbound", "domain", "numerical",
   "config", "not-applicable", "argument", "internal" or "". */
SS_API const char* ss_last_error_kind(void);

/* Byte offset of the last syntax error, or -1. */
SS_API long ss_last_error_offset(void);

SS_API void ss_string_free(char* s);

/* Expressions. */
SS_API ss_status ss_expr_parse(const char* text, ss_expr** out);
SS_API void ss_expr_free(ss_expr* e);
/* Canonical text; release with ss_string_free. */
SS_API ss_status ss_expr_print(const ss_expr* e, char** out);
/* Value at a point. Names not listed are unbound. */
SS_API ss_status ss_expr_eval(const ss_expr* e, size_t nvars, const char* const* names, const double* values,
                              double* out);
/* Raw partial derivatives up to total order `order`, ordered by total degree
   and then by descending multi-index. `*count` receives the number of
   partials; when `capacity` is smaller the call fails with SS_ERR_ARGUMENT. */
SS_API ss_status ss_expr_eval_jet(const ss_expr* e, size_t nvars, const char* const* names, const double* values,
                                  int order, double* out, size_t capacity, size_t* count);

/* Gallery listing as JSON; release with ss_string_free. */
SS_API ss_status ss_gallery_list_json(char** out);

/* Sessions: one loaded config plus run options and the last report. */
SS_API ss_status ss_session_create(ss_session** out);
SS_API void ss_session_destroy(ss_session* s);
/* JSON document or a "gallery:<id>(k=v,...)" reference. */
SS_API ss_status ss_session_load_config(ss_session* s, const char* text);
/* "text", "json" or "csv"; NULL restores the config default. */
SS_API ss_status ss_session_set_format(ss_session* s, const char* format);
SS_API ss_status ss_session_set_jet_order(ss_session* s, int order);
SS_API ss_status ss_session_set_threads(ss_session* s, int threads);
/* "soliton", "not-soliton", "hyperplane", "cone", "hypersphere"; NULL clears. */
SS_API ss_status ss_session_set_expect(ss_session* s, const char* expect);
/* Output path from the loaded config, or NULL. */
SS_API const char* ss_session_output_path(const ss_session* s);
/* Runs verify, identities, classify, sweep or gallery. On SS_OK, `*exit_code`
   is 0 (success) or 1 (verification unmet). On failure it is 2 for input
   errors and 3 for numerical failures. */
SS_API ss_status ss_session_run(ss_session* s, const char* command, int* exit_code);
/* Report of the last successful run; owned by the session. */
SS_API const char* ss_session_report(const ss_session* s);
SS_API const char* ss_session_summary(const ss_session* s);
SS_API double ss_session_elapsed_ms(const ss_session* s);

#ifdef __cplusplus
}
#endif

#endif /* SOLITONSCOPE_SOLITONSCOPE_H */
