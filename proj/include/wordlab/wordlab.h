// Copyright 2026 The wordlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the wordlab library. All functions return a wl_status;
 * on failure, wl_last_error() describes the most recent error on the calling
 * thread. Handles are opaque and released with the matching *_free call.
 * Strings returned through char** are released with wl_string_free. */
#ifndef WORDLAB_WORDLAB_H_
#define WORDLAB_WORDLAB_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define WL_API __declspec(dllexport)
#else
#define WL_API __attribute__((visibility("default")))
#endif

typedef enum wl_status {
  WL_OK = 0,
  WL_INVALID_ARGUMENT = 1,
  WL_UNSUPPORTED_PARAMETER = 2,
  WL_MALFORMED_CAYLEY_TABLE = 3,
  WL_GROUP_MISMATCH = 4,
  WL_TOO_LARGE = 5,
  WL_BUDGET_EXCEEDED = 6,
  WL_BAD_LETTER = 7,
  WL_ZERO_VECTOR = 8,
  WL_EMPTY_WORD = 9,
  WL_RANK_MISMATCH = 10,
  WL_ZERO_SAMPLES = 11,
  WL_GAMMA_ZERO = 12,
  WL_STATE_CAP_EXCEEDED = 13,
  WL_NOT_GENERATING = 14,
  WL_DIMENSION_MISMATCH = 15,
  WL_NOT_IN_CATALOG = 16,
  WL_NOT_PERFECT = 17,
  WL_LIFT_FAILED_VERIFICATION = 18,
  WL_CONFIG = 19,
  WL_IO = 20,
  WL_INTERNAL = 99
} wl_status;

typedef struct wl_group wl_group;
typedef struct wl_word wl_word;
typedef struct wl_report wl_report;

WL_API const char* wl_version(void);
WL_API const char* wl_status_name(wl_status status);
WL_API const char* wl_last_error(void);
WL_API void wl_string_free(char* s);

/* Groups. Elements are dense indices, 0 is the identity. */
WL_API wl_status wl_group_create(const char* spec, wl_group** out);
WL_API void wl_group_free(wl_group* g);
WL_API uint64_t wl_group_order(const wl_group* g);
WL_API wl_status wl_group_multiply(const wl_group* g, uint32_t a, uint32_t b, uint32_t* out);
WL_API wl_status wl_group_invert(const wl_group* g, uint32_t a, uint32_t* out);
WL_API wl_status wl_group_power(const wl_group* g, uint32_t a, int64_t k, uint32_t* out);
WL_API wl_status wl_group_parse_element(const wl_group* g, const char* text, uint32_t* out);
WL_API wl_status wl_group_format_element(const wl_group* g, uint32_t a, char** out);

/* Words in F_d: "1 2 -1 -2" or "x1 x2 X1 X2". rank 0 infers the rank. */
WL_API wl_status wl_word_parse(const char* text, int rank, wl_word** out);
WL_API void wl_word_free(wl_word* w);
WL_API int wl_word_rank(const wl_word* w);
WL_API size_t wl_word_length(const wl_word* w);
WL_API wl_status wl_word_gamma(const wl_word* w, uint64_t* out);
/* Writes rank(w) exponent sums to out, which must hold out_len >= rank. */
WL_API wl_status wl_word_abelianize(const wl_word* w, int64_t* out, size_t out_len);
WL_API wl_status wl_word_evaluate(const wl_word* w, const wl_group* g, const uint32_t* tuple,
                                  size_t tuple_len, uint32_t* out);

/* Exact pushforward counts of the word map; counts has order(g) slots.
 * total receives |G|^rank. */
WL_API wl_status wl_exact_distribution(const wl_word* w, const wl_group* g, unsigned workers,
                                       uint64_t* counts, size_t counts_len, uint64_t* total);
/* Exact L1 distance to uniform as "num/den" and as a double. */
WL_API wl_status wl_l1_uniform_distance(const wl_word* w, const wl_group* g, unsigned workers,
                                        char** exact, double* value);
/* Law of the n-step simple walk on (Z/p^k)^d; probabilities has (p^k)^d slots,
 * states indexed with coordinate 0 least significant. */
WL_API wl_status wl_exact_mod_law(int d, uint64_t p, unsigned k, uint64_t n, double* probabilities,
                                  size_t probabilities_len);

/* Experiments. config_text and override_text use the "key = value" format;
 * override values replace config values. override_text may be NULL. */
WL_API wl_status wl_experiment_run(const char* config_text, const char* override_text,
                                   wl_report** out);
WL_API void wl_report_free(wl_report* r);
WL_API const char* wl_report_json(const wl_report* r);
WL_API const char* wl_report_output(const wl_report* r);
WL_API uint64_t wl_report_budget_failures(const wl_report* r);
WL_API size_t wl_report_table_count(const wl_report* r);
WL_API const char* wl_report_table_name(const wl_report* r, size_t i);
WL_API const char* wl_report_table_csv(const wl_report* r, size_t i);

/* Recomputes the aggregates of a JSON report. *diffs receives a JSON object
 * {"experiment", "checked", "diffs": [...]}; diff_count the number of diffs. */
WL_API wl_status wl_report_audit(const char* report_json, char** diffs, size_t* diff_count);

/* Validates a Cayley table file; *spec_json receives {"spec","order","name"}. */
WL_API wl_status wl_cayley_ingest(const char* path, char** spec_json);

#ifdef __cplusplus
}
#endif

#endif  // WORDLAB_WORDLAB_H_
