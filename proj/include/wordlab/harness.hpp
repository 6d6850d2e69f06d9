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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wordlab/groups.hpp"
#include "wordlab/measure.hpp"
#include "wordlab/words.hpp"

namespace wordlab {

inline constexpr const char* kToolVersion = "0.1.0";

enum class ExperimentKind { density, trend, walk_gcd, mixing, generation };

ExperimentKind parse_experiment_kind(std::string_view text);
const char* experiment_kind_name(ExperimentKind kind);

// Flat "key = value" text. Blank lines and lines starting with '#' are
// skipped. Unknown and repeated keys are config errors.
std::map<std::string, std::string> parse_config_text(std::string_view text);

// Keys accepted in config files and on the command line.
const std::vector<std::string>& config_keys();

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::density;
  SamplingModel model = SamplingModel::symmetric;
  int d = 2;
  std::uint64_t n = 0;
  std::uint64_t R = 0;
  std::vector<GroupSpec> groups;
  DistributionMode mode = DistributionMode::exact;
  std::uint64_t samples = 10'000;
  double tau = 0.1;
  std::uint64_t M = 30;
  std::uint64_t seed = 0;
  std::string output;
  unsigned workers = 1;
  std::optional<std::string> word;
  std::vector<std::string> steps;
  std::uint64_t n_max = 0;
  std::uint64_t p = 0;
  unsigned k = 1;
  bool timing = false;

  // Values in `overrides` replace those in `base`. Throws Error(config).
  static ExperimentConfig from_text(std::string_view base, std::string_view overrides = {});
  static ExperimentConfig from_entries(const std::map<std::string, std::string>& entries);

  // Keys that determine the report. Workers, output and timing are left out
  // so that reports compare equal across machines and worker counts.
  nlohmann::ordered_json echo() const;
};

struct ExperimentResult {
  nlohmann::ordered_json report;
  std::vector<std::pair<std::string, std::string>> tables;  // file name, CSV text
  std::uint64_t budget_failures = 0;

  std::string json_text() const;  // report.dump(2) plus newline
};

ExperimentResult run_experiment(const ExperimentConfig& config);

ExperimentResult run_density_experiment(const ExperimentConfig& config);
ExperimentResult run_trend(const ExperimentConfig& config);
ExperimentResult run_walk_gcd(const ExperimentConfig& config);
ExperimentResult run_mixing(const ExperimentConfig& config);
ExperimentResult run_generation(const ExperimentConfig& config);

struct AuditResult {
  std::string experiment;
  std::uint64_t checked = 0;
  std::vector<std::string> diffs;
};

// Recomputes every aggregate of a report from its records.
AuditResult audit_report(const nlohmann::ordered_json& report);

struct IngestResult {
  GroupSpec spec;
  std::uint64_t order = 0;
  std::string name;
};

IngestResult ingest_cayley_table(const std::string& path);

}  // namespace wordlab
