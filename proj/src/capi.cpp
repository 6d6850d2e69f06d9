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

#include "wordlab/wordlab.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "wordlab/harness.hpp"
#include "wordlab/lattice_walks.hpp"
#include "wordlab/measure.hpp"

static_assert(static_cast<int>(wordlab::ErrorCode::invalid_argument) == WL_INVALID_ARGUMENT);
static_assert(static_cast<int>(wordlab::ErrorCode::budget_exceeded) == WL_BUDGET_EXCEEDED);
static_assert(static_cast<int>(wordlab::ErrorCode::state_cap_exceeded) == WL_STATE_CAP_EXCEEDED);
static_assert(static_cast<int>(wordlab::ErrorCode::io) == WL_IO);

struct wl_group {
  wordlab::GroupPtr group;
};

struct wl_word {
  wordlab::Word word;
};

struct wl_report {
  std::string json;
  std::string output;
  std::uint64_t budget_failures = 0;
  std::vector<std::pair<std::string, std::string>> tables;
};

namespace {

thread_local std::string last_error;

wl_status set_error(wl_status status, const char* message) {
  last_error = message;
  return status;
}

template <class F>
wl_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return WL_OK;
  } catch (const wordlab::Error& e) {
    return set_error(static_cast<wl_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(WL_TOO_LARGE, "out of memory");
  } catch (const std::exception& e) {
    return set_error(WL_INTERNAL, e.what());
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw wordlab::Error(wordlab::ErrorCode::invalid_argument, what);
}

void check_index(const wl_group* g, std::uint32_t a) {
  if (a >= g->group->order())
    throw wordlab::Error(wordlab::ErrorCode::invalid_argument, "element index out of range");
}

}  // namespace

extern "C" {

const char* wl_version(void) { return wordlab::kToolVersion; }

const char* wl_status_name(wl_status status) {
  if (status == WL_OK) return "ok";
  if (status == WL_INTERNAL) return "internal";
  if (status < WL_INVALID_ARGUMENT || status > WL_IO) return "unknown";
  return wordlab::error_code_name(static_cast<wordlab::ErrorCode>(status));
}

const char* wl_last_error(void) { return last_error.c_str(); }

void wl_string_free(char* s) { std::free(s); }

wl_status wl_group_create(const char* spec, wl_group** out) {
  return guarded([&] {
    require(spec != nullptr && out != nullptr, "null argument");
    *out = new wl_group{wordlab::construct_group(std::string_view(spec))};
  });
}

void wl_group_free(wl_group* g) { delete g; }

uint64_t wl_group_order(const wl_group* g) { return g == nullptr ? 0 : g->group->order(); }

wl_status wl_group_multiply(const wl_group* g, uint32_t a, uint32_t b, uint32_t* out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    check_index(g, a);
    check_index(g, b);
    *out = g->group->mul(a, b);
  });
}

wl_status wl_group_invert(const wl_group* g, uint32_t a, uint32_t* out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    check_index(g, a);
    *out = g->group->inv(a);
  });
}

wl_status wl_group_power(const wl_group* g, uint32_t a, int64_t k, uint32_t* out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    check_index(g, a);
    *out = g->group->pow(a, k);
  });
}

wl_status wl_group_parse_element(const wl_group* g, const char* text, uint32_t* out) {
  return guarded([&] {
    require(g != nullptr && text != nullptr && out != nullptr, "null argument");
    *out = g->group->parse_element(text);
  });
}

wl_status wl_group_format_element(const wl_group* g, uint32_t a, char** out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    check_index(g, a);
    *out = duplicate(g->group->format(a));
  });
}

wl_status wl_word_parse(const char* text, int rank, wl_word** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    require(rank >= 0, "rank must be non-negative");
    *out = new wl_word{wordlab::Word::parse(text, rank)};
  });
}

void wl_word_free(wl_word* w) { delete w; }

int wl_word_rank(const wl_word* w) { return w == nullptr ? 0 : w->word.rank(); }

size_t wl_word_length(const wl_word* w) { return w == nullptr ? 0 : w->word.length(); }

wl_status wl_word_gamma(const wl_word* w, uint64_t* out) {
  return guarded([&] {
    require(w != nullptr && out != nullptr, "null argument");
    *out = wordlab::gamma(wordlab::abelianize(w->word));
  });
}

wl_status wl_word_abelianize(const wl_word* w, int64_t* out, size_t out_len) {
  return guarded([&] {
    require(w != nullptr && out != nullptr, "null argument");
    const auto v = wordlab::abelianize(w->word);
    if (out_len < v.size())
      throw wordlab::Error(wordlab::ErrorCode::dimension_mismatch, "output buffer shorter than the rank");
    std::copy(v.begin(), v.end(), out);
  });
}

wl_status wl_word_evaluate(const wl_word* w, const wl_group* g, const uint32_t* tuple,
                           size_t tuple_len, uint32_t* out) {
  return guarded([&] {
    require(w != nullptr && g != nullptr && out != nullptr, "null argument");
    require(tuple != nullptr || tuple_len == 0, "null tuple");
    std::vector<wordlab::Element> elems;
    for (size_t i = 0; i < tuple_len; ++i) elems.push_back(g->group->element(tuple[i]));
    *out = wordlab::evaluate(w->word, *g->group, elems).index;
  });
}

wl_status wl_exact_distribution(const wl_word* w, const wl_group* g, unsigned workers,
                                uint64_t* counts, size_t counts_len, uint64_t* total) {
  return guarded([&] {
    require(w != nullptr && g != nullptr && counts != nullptr && total != nullptr, "null argument");
    if (counts_len < g->group->order())
      throw wordlab::Error(wordlab::ErrorCode::dimension_mismatch, "counts buffer shorter than the group order");
    const auto dist = wordlab::exact_distribution(w->word, *g->group, workers == 0 ? 1 : workers);
    std::copy(dist.counts.begin(), dist.counts.end(), counts);
    *total = dist.total;
  });
}

wl_status wl_l1_uniform_distance(const wl_word* w, const wl_group* g, unsigned workers, char** exact,
                                 double* value) {
  return guarded([&] {
    require(w != nullptr && g != nullptr, "null argument");
    const auto dist = wordlab::exact_distribution(w->word, *g->group, workers == 0 ? 1 : workers);
    const wordlab::Rational r = wordlab::l1_uniform_distance(dist);
    if (value != nullptr) *value = wordlab::to_double(r);
    if (exact != nullptr) *exact = duplicate(wordlab::to_string(r));
  });
}

wl_status wl_exact_mod_law(int d, uint64_t p, unsigned k, uint64_t n, double* probabilities,
                           size_t probabilities_len) {
  return guarded([&] {
    require(probabilities != nullptr, "null argument");
    const auto law = wordlab::exact_mod_law(d, p, k, n);
    if (probabilities_len < law.state_count())
      throw wordlab::Error(wordlab::ErrorCode::dimension_mismatch, "buffer shorter than the state count");
    std::copy(law.probabilities.begin(), law.probabilities.end(), probabilities);
  });
}

wl_status wl_experiment_run(const char* config_text, const char* override_text, wl_report** out) {
  return guarded([&] {
    require(config_text != nullptr && out != nullptr, "null argument");
    const auto config =
        wordlab::ExperimentConfig::from_text(config_text, override_text == nullptr ? "" : override_text);
    auto result = wordlab::run_experiment(config);
    auto* r = new wl_report;
    r->json = result.json_text();
    r->output = config.output;
    r->budget_failures = result.budget_failures;
    r->tables = std::move(result.tables);
    *out = r;
  });
}

void wl_report_free(wl_report* r) { delete r; }

const char* wl_report_json(const wl_report* r) { return r == nullptr ? "" : r->json.c_str(); }

const char* wl_report_output(const wl_report* r) { return r == nullptr ? "" : r->output.c_str(); }

uint64_t wl_report_budget_failures(const wl_report* r) { return r == nullptr ? 0 : r->budget_failures; }

size_t wl_report_table_count(const wl_report* r) { return r == nullptr ? 0 : r->tables.size(); }

const char* wl_report_table_name(const wl_report* r, size_t i) {
  return r == nullptr || i >= r->tables.size() ? nullptr : r->tables[i].first.c_str();
}

const char* wl_report_table_csv(const wl_report* r, size_t i) {
  return r == nullptr || i >= r->tables.size() ? nullptr : r->tables[i].second.c_str();
}

wl_status wl_report_audit(const char* report_json, char** diffs, size_t* diff_count) {
  return guarded([&] {
    require(report_json != nullptr, "null argument");
    nlohmann::ordered_json report;
    try {
      report = nlohmann::ordered_json::parse(report_json);
    } catch (const nlohmann::json::exception& e) {
      throw wordlab::Error(wordlab::ErrorCode::invalid_argument, std::string("report is not JSON: ") + e.what());
    }
    const auto a = wordlab::audit_report(report);
    if (diff_count != nullptr) *diff_count = a.diffs.size();
    if (diffs != nullptr) {
      nlohmann::ordered_json j;
      j["experiment"] = a.experiment;
      j["checked"] = a.checked;
      j["diffs"] = a.diffs;
      *diffs = duplicate(j.dump(2) + "\n");
    }
  });
}

wl_status wl_cayley_ingest(const char* path, char** spec_json) {
  return guarded([&] {
    require(path != nullptr && spec_json != nullptr, "null argument");
    const auto r = wordlab::ingest_cayley_table(path);
    nlohmann::ordered_json j;
    j["spec"] = r.spec.str();
    j["order"] = r.order;
    j["name"] = r.name;
    *spec_json = duplicate(j.dump(2) + "\n");
  });
}

}  // extern "C"
