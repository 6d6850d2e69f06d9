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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "wordlab/error.hpp"
#include "wordlab/harness.hpp"

using namespace wordlab;
using nlohmann::ordered_json;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::invalid_argument;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("wordlab_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

ExperimentResult run(std::string_view text, std::string_view overrides = {}) {
  return run_experiment(ExperimentConfig::from_text(text, overrides));
}

const char* kDensity = R"(# small density run
experiment = density
model = symmetric
d = 2
n = 60
R = 40
groups = alternating:5, cyclic:6
M = 30
seed = 1234
)";

}  // namespace

TEST_CASE("config parsing") {
  const auto c = ExperimentConfig::from_text(kDensity);
  CHECK(c.experiment == ExperimentKind::density);
  CHECK(c.n == 60);
  CHECK(c.groups.size() == 2);
  CHECK(c.tau == doctest::Approx(0.1));
  CHECK(c.seed == 1234);
  CHECK(ExperimentConfig::from_text(kDensity, "n = 80\nworkers = 3").n == 80);

  CHECK(code_of([] { ExperimentConfig::from_text("experiment = density\nn = 5\nR = 5\n"); }) ==
        ErrorCode::config);  // no seed
  CHECK(code_of([] { ExperimentConfig::from_text(std::string(kDensity) + "colour = red\n"); }) ==
        ErrorCode::config);
  CHECK(code_of([] { ExperimentConfig::from_text(std::string(kDensity) + "seed = 4\n"); }) ==
        ErrorCode::config);
  CHECK(code_of([] { ExperimentConfig::from_text(kDensity, "tau = 2"); }) == ErrorCode::config);
  CHECK(code_of([] { ExperimentConfig::from_text(kDensity, "tau = 0"); }) == ErrorCode::config);
  CHECK(code_of([] { ExperimentConfig::from_text(kDensity, "R = 0"); }) == ErrorCode::config);
  CHECK(code_of([] { ExperimentConfig::from_text(kDensity, "groups = klein:4"); }) == ErrorCode::config);
  CHECK(code_of([] { ExperimentConfig::from_text(kDensity, "seed = twelve"); }) == ErrorCode::config);
  CHECK(code_of([] { ExperimentConfig::from_text(kDensity, "model = lopsided"); }) == ErrorCode::config);
  CHECK(code_of([] { ExperimentConfig::from_text("experiment = generation\nseed = 1\ngroups = symmetric:5\n"); }) ==
        ErrorCode::config);
  CHECK(code_of([] { ExperimentConfig::from_text("experiment = mixing\nseed = 1\ngroups = symmetric:3\n"); }) ==
        ErrorCode::config);
  CHECK(code_of([] { parse_config_text("no equals sign here"); }) == ErrorCode::config);
  for (const auto& key : config_keys()) CHECK_FALSE(key.empty());
}

TEST_CASE("density report: determinism, echo and audit") {
  const auto one = run(kDensity, "workers = 1");
  const auto three = run(kDensity, "workers = 3");
  CHECK(one.json_text() == three.json_text());
  CHECK(one.tables == three.tables);
  CHECK(run(kDensity).json_text() == one.json_text());
  CHECK(run(kDensity, "seed = 1235").json_text() != one.json_text());

  const auto& r = one.report;
  CHECK(r["experiment"] == "density");
  CHECK(r["tool"]["version"] == kToolVersion);
  CHECK(r["config"]["seed"] == 1234);
  CHECK_FALSE(r["config"].contains("workers"));
  CHECK_FALSE(r.contains("wall_clock_seconds"));
  REQUIRE(r["words"].size() == 40);

  // Records agree with direct recomputation from the printed word.
  for (const auto& w : r["words"]) {
    const Word word = Word::parse(w["word"].get<std::string>(), 2);
    CHECK(word.length() == w["reduced_length"].get<std::uint64_t>());
    CHECK(gamma(abelianize(word)) == w["gamma"].get<std::uint64_t>());
    // C6 is abelian, so the word map is uniform exactly when gcd(gamma, 6) = 1.
    const auto& c6 = w["groups"][1];
    const std::uint64_t g = w["gamma"];
    CHECK((c6["distance_exact"] == "0") == (std::gcd(g, std::uint64_t{6}) == 1));
  }

  const auto audit = audit_report(r);
  CHECK(audit.diffs.empty());
  CHECK(audit.checked > 0);

  // Tampering is caught.
  auto tampered = r;
  tampered["aggregates"]["fraction_all_below_tau"] = 0.75;
  CHECK_FALSE(audit_report(tampered).diffs.empty());
  tampered = r;
  tampered["words"][0]["gamma"] = 1000;
  CHECK_FALSE(audit_report(tampered).diffs.empty());

  std::vector<std::string> names;
  for (const auto& [name, csv] : one.tables) names.push_back(name);
  CHECK(names == std::vector<std::string>{"words.csv", "cells.csv", "gamma_histogram.csv"});
}

TEST_CASE("positive words have gamma at least one") {
  const auto r = run("experiment = density\nmodel = positive\nd = 2\nn = 10\nR = 50\ngroups = cyclic:5\nseed = 7\n");
  for (const auto& w : r.report["words"]) {
    CHECK(w["reduced_length"] == 10);
    const std::uint64_t g = w["gamma"];
    CHECK(g >= 1);
    CHECK(g <= 10);
  }
  CHECK(r.report["aggregates"]["fraction_gamma_zero_or_above_M"] == 0.0);
  CHECK(audit_report(r.report).diffs.empty());
}

TEST_CASE("density budget failures are reported per cell") {
  const auto r = run(kDensity, "groups = psl2:13\nn = 20\nR = 3\nd = 3");
  CHECK(r.budget_failures == 3);
  for (const auto& w : r.report["words"]) CHECK(w["groups"][0]["error"] == "budget-exceeded");
  CHECK(audit_report(r.report).diffs.empty());
}

TEST_CASE("trend") {
  const auto r = run("experiment = trend\nword = 1 1\ngroups = psl2:5,psl2:7,psl2:11,psl2:13\nseed = 3\n");
  REQUIRE(r.report["rows"].size() == 4);
  for (const auto& row : r.report["rows"]) CHECK(row["distance"].get<double>() >= 0.5);
  CHECK(r.report["word"]["is_power"] == true);
}

TEST_CASE("walk-gcd carries a DP cross-check") {
  const auto r = run("experiment = walk-gcd\nd = 2\nn = 1000\nsamples = 4000\nseed = 11\n");
  REQUIRE(r.report.contains("dp_cross_check"));
  CHECK(r.report["dp_cross_check"].size() >= 3);
  for (const auto& row : r.report["dp_cross_check"]) CHECK(std::abs(row["z"].get<double>()) < 5.0);
  CHECK(audit_report(r.report).diffs.empty());
  const auto with_law = run("experiment = walk-gcd\nd = 2\nn = 40\nsamples = 500\np = 3\nk = 1\nseed = 11\n");
  REQUIRE(with_law.report.contains("mod_law"));
  CHECK(code_of([] { ExperimentConfig::from_text("experiment = walk-gcd\nd = 2\nn = 40\np = 4\nseed = 1\n"); }) ==
        ErrorCode::config);
}

TEST_CASE("mixing reports the obstruction witness") {
  const auto r = run("experiment = mixing\ngroups = symmetric:3\nsteps = (1 2);(2 3)\nn_max = 60\nseed = 2\n");
  REQUIRE(r.report["obstruction"].is_object());
  CHECK(r.report["obstruction"]["modulus"] == 2);
  CHECK(r.report["obstruction"]["verified"] == true);
  CHECK(r.report["profile"]["min_distance"].get<double>() >= 0.5);
  CHECK(audit_report(r.report).diffs.empty());

  const auto a5 = run("experiment = mixing\ngroups = alternating:5\nsteps = (1 2 3 4 5);(1 2 3)\nn_max = 300\nseed = 2\n");
  CHECK(a5.report["obstruction"].is_null());
  CHECK(a5.report["profile"]["final_distance"].get<double>() < 1e-4);
}

TEST_CASE("generation") {
  const auto r = run("experiment = generation\ngroups = alternating:5,psl2:7\nd = 2\nseed = 1\n");
  REQUIRE(r.report["rows"].size() == 2);
  CHECK(r.report["rows"][0]["aut_classes"] == 19);
  CHECK(r.report["rows"][1]["aut_classes"] == 57);
  CHECK(audit_report(r.report).diffs.empty());
}

TEST_CASE("timing is opt-in") {
  const auto r = run(kDensity, "timing = true\nR = 2");
  CHECK(r.report.contains("wall_clock_seconds"));
  auto stripped = r.report;
  stripped.erase("wall_clock_seconds");
  CHECK(stripped.dump() == run(kDensity, "R = 2").report.dump());
}

TEST_CASE("Cayley ingestion") {
  const std::string s3 =
      "6\n0 1 2 3 4 5\n1 2 0 5 3 4\n2 0 1 4 5 3\n3 4 5 0 1 2\n4 5 3 2 0 1\n5 3 4 1 2 0\n";
  const auto path = write_temp("s3.txt", s3);
  const auto ok = ingest_cayley_table(path);
  CHECK(ok.order == 6);
  CHECK(ok.spec.kind == GroupKind::cayley_file);

  // The ingested spec works in a config.
  const auto r = run("experiment = trend\nword = 1 1\nseed = 1\ngroups = cayley-file:" + path + "\n");
  CHECK(r.report["rows"][0]["order"] == 6);

  auto message = [](const std::string& path) {
    try {
      ingest_cayley_table(path);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::malformed_cayley_table);
      return std::string(e.what());
    }
    FAIL("accepted");
    return std::string();
  };
  CHECK(message(write_temp("empty.txt", "")).find("empty") != std::string::npos);
  CHECK(message(write_temp("noinv.txt", "3\n0 1 2\n1 1 2\n2 2 1\n")).find("row 1") != std::string::npos);
  CHECK(code_of([] { ingest_cayley_table("/nonexistent/wordlab/table.txt"); }) == ErrorCode::io);
}
