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

// Exercises the shared library through its C header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include "wordlab/wordlab.h"

namespace {

struct Group {
  wl_group* g = nullptr;
  explicit Group(const char* spec) { REQUIRE(wl_group_create(spec, &g) == WL_OK); }
  ~Group() { wl_group_free(g); }
};

struct Word {
  wl_word* w = nullptr;
  explicit Word(const char* text, int rank = 0) { REQUIRE(wl_word_parse(text, rank, &w) == WL_OK); }
  ~Word() { wl_word_free(w); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  wl_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("status names and errors") {
  CHECK(std::string(wl_version()) == "0.1.0");
  CHECK(std::string(wl_status_name(WL_OK)) == "ok");
  CHECK(std::string(wl_status_name(WL_BUDGET_EXCEEDED)) == "budget-exceeded");
  wl_group* g = nullptr;
  CHECK(wl_group_create("cyclic:0", &g) == WL_INVALID_ARGUMENT);
  CHECK(g == nullptr);
  CHECK(std::strlen(wl_last_error()) > 0);
  CHECK(wl_group_create("sl2:4", &g) != WL_OK);
  CHECK(wl_group_create(nullptr, &g) == WL_INVALID_ARGUMENT);
}

TEST_CASE("group arithmetic") {
  Group A5("alternating:5");
  CHECK(wl_group_order(A5.g) == 60);
  uint32_t a = 0, b = 0, ab = 0, inv = 0, p = 0;
  REQUIRE(wl_group_parse_element(A5.g, "(1 2 3 4 5)", &a) == WL_OK);
  REQUIRE(wl_group_parse_element(A5.g, "(1 2 3)", &b) == WL_OK);
  REQUIRE(wl_group_multiply(A5.g, a, b, &ab) == WL_OK);
  REQUIRE(wl_group_invert(A5.g, a, &inv) == WL_OK);
  uint32_t e = 1;
  REQUIRE(wl_group_multiply(A5.g, a, inv, &e) == WL_OK);
  CHECK(e == 0);
  REQUIRE(wl_group_power(A5.g, a, 5, &p) == WL_OK);
  CHECK(p == 0);
  REQUIRE(wl_group_power(A5.g, a, -1, &p) == WL_OK);
  CHECK(p == inv);
  char* text = nullptr;
  REQUIRE(wl_group_format_element(A5.g, a, &text) == WL_OK);
  CHECK(take(text) == "(1 2 3 4 5)");
  CHECK(wl_group_multiply(A5.g, 60, 0, &ab) == WL_INVALID_ARGUMENT);
  CHECK(wl_group_parse_element(A5.g, "(1 2)", &a) != WL_OK);
}

TEST_CASE("words and distributions") {
  Word w("1 2 -1 -2");
  CHECK(wl_word_rank(w.w) == 2);
  CHECK(wl_word_length(w.w) == 4);
  uint64_t g = 7;
  REQUIRE(wl_word_gamma(w.w, &g) == WL_OK);
  CHECK(g == 0);
  int64_t ab[2] = {9, 9};
  REQUIRE(wl_word_abelianize(w.w, ab, 2) == WL_OK);
  CHECK(ab[0] == 0);
  CHECK(ab[1] == 0);
  CHECK(wl_word_abelianize(w.w, ab, 1) == WL_DIMENSION_MISMATCH);

  Group A5("alternating:5");
  std::vector<uint64_t> counts(60);
  uint64_t total = 0;
  REQUIRE(wl_exact_distribution(w.w, A5.g, 2, counts.data(), counts.size(), &total) == WL_OK);
  CHECK(total == 3600);
  CHECK(counts[0] == 300);

  Word x("x1");
  char* exact = nullptr;
  double value = -1;
  REQUIRE(wl_l1_uniform_distance(x.w, A5.g, 1, &exact, &value) == WL_OK);
  CHECK(take(exact) == "0");
  CHECK(value == 0.0);

  Word sq("1 1");
  Group P7("psl2:7");
  REQUIRE(wl_l1_uniform_distance(sq.w, P7.g, 1, &exact, &value) == WL_OK);
  CHECK(take(exact) == "1/2");

  uint32_t tuple[2] = {1, 2}, out = 0, direct = 0, ba = 0, ia = 0, ib = 0;
  REQUIRE(wl_word_evaluate(w.w, A5.g, tuple, 2, &out) == WL_OK);
  wl_group_invert(A5.g, 1, &ia);
  wl_group_invert(A5.g, 2, &ib);
  wl_group_multiply(A5.g, 1, 2, &direct);
  wl_group_multiply(A5.g, direct, ia, &ba);
  wl_group_multiply(A5.g, ba, ib, &direct);
  CHECK(out == direct);
  CHECK(wl_word_evaluate(w.w, A5.g, tuple, 1, &out) == WL_RANK_MISMATCH);

  wl_word* bad = nullptr;
  CHECK(wl_word_parse("1 3", 2, &bad) == WL_BAD_LETTER);
}

TEST_CASE("mod law") {
  std::vector<double> probs(9);
  REQUIRE(wl_exact_mod_law(2, 3, 1, 4, probs.data(), probs.size()) == WL_OK);
  double sum = 0;
  for (double x : probs) sum += x;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(wl_exact_mod_law(2, 3, 1, 4, probs.data(), 8) == WL_DIMENSION_MISMATCH);
  std::vector<double> two(4);
  REQUIRE(wl_exact_mod_law(2, 2, 1, 5, two.data(), two.size()) == WL_OK);
  CHECK(two[0] == 0.0);
}

TEST_CASE("experiments, audit and ingest") {
  const char* config =
      "experiment = density\nmodel = symmetric\nd = 2\nn = 40\nR = 20\ngroups = alternating:5\nseed = 99\n";
  wl_report* one = nullptr;
  wl_report* three = nullptr;
  REQUIRE(wl_experiment_run(config, "workers = 1", &one) == WL_OK);
  REQUIRE(wl_experiment_run(config, "workers = 3", &three) == WL_OK);
  CHECK(std::string(wl_report_json(one)) == wl_report_json(three));
  CHECK(wl_report_budget_failures(one) == 0);
  CHECK(wl_report_table_count(one) == 3);
  CHECK(std::string(wl_report_table_name(one, 0)) == "words.csv");
  CHECK(std::string(wl_report_table_csv(one, 0)).rfind("word_index,", 0) == 0);
  CHECK(wl_report_table_name(one, 3) == nullptr);

  char* diffs = nullptr;
  size_t count = 99;
  REQUIRE(wl_report_audit(wl_report_json(one), &diffs, &count) == WL_OK);
  CHECK(count == 0);
  CHECK(take(diffs).find("\"diffs\"") != std::string::npos);
  wl_report_free(one);
  wl_report_free(three);

  wl_report* r = nullptr;
  CHECK(wl_experiment_run("experiment = density\nn = 4\nR = 4\n", nullptr, &r) == WL_CONFIG);
  CHECK(r == nullptr);
  CHECK(wl_report_audit("{not json", &diffs, &count) == WL_INVALID_ARGUMENT);

  char* spec = nullptr;
  CHECK(wl_cayley_ingest("/nonexistent/table.txt", &spec) == WL_IO);
}
