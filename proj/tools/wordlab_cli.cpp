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

// Command-line front end. Talks to the library only through wordlab.h.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "wordlab/wordlab.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitBudget = 2;
constexpr int kExitAuditDiffs = 3;

bool is_budget(wl_status s) {
  return s == WL_BUDGET_EXCEEDED || s == WL_TOO_LARGE || s == WL_STATE_CAP_EXCEEDED;
}

int fail(wl_status s) {
  std::cerr << "wordlab: " << wl_status_name(s) << ": " << wl_last_error() << '\n';
  return is_budget(s) ? kExitBudget : kExitConfig;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

bool write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

struct RunCommand {
  std::string experiment;
  std::string config_path;
  std::map<std::string, std::string> flags;
};

int run(const RunCommand& cmd) {
  std::string base;
  if (!cmd.config_path.empty() && !read_file(cmd.config_path, base)) {
    std::cerr << "wordlab: io: cannot read config '" << cmd.config_path << "'\n";
    return kExitConfig;
  }
  std::string overrides = "experiment = " + cmd.experiment + "\n";
  for (const auto& [key, value] : cmd.flags) overrides += key + " = " + value + "\n";
  wl_report* report = nullptr;
  if (wl_status s = wl_experiment_run(base.c_str(), overrides.c_str(), &report); s != WL_OK) return fail(s);
  const std::string output = wl_report_output(report);
  int code = wl_report_budget_failures(report) > 0 ? kExitBudget : kExitOk;
  if (output.empty()) {
    std::cout << wl_report_json(report);
  } else {
    std::error_code ec;
    std::filesystem::create_directories(output, ec);
    const std::filesystem::path dir(output);
    bool ok = !ec && write_file(dir / "report.json", wl_report_json(report));
    for (size_t i = 0; ok && i < wl_report_table_count(report); ++i)
      ok = write_file(dir / wl_report_table_name(report, i), wl_report_table_csv(report, i));
    if (!ok) {
      std::cerr << "wordlab: io: cannot write to '" << output << "'\n";
      code = kExitConfig;
    } else {
      std::cerr << "wordlab: wrote " << (dir / "report.json").string() << " and "
                << wl_report_table_count(report) << " tables\n";
    }
  }
  if (wl_report_budget_failures(report) > 0)
    std::cerr << "wordlab: " << wl_report_budget_failures(report) << " cells exceeded their budget\n";
  wl_report_free(report);
  return code;
}

// Flags shared by the experiment subcommands, named after config keys.
void add_key_flags(CLI::App* sub, RunCommand& cmd, std::initializer_list<const char*> keys) {
  static const char* const kCommon[] = {"seed", "output", "workers", "timing"};
  static const std::map<std::string, std::string> help = {
      {"model", "word sampling model: positive or symmetric"},
      {"d", "rank (number of letters or lattice dimension)"},
      {"n", "word length or walk length"},
      {"R", "number of sampled words"},
      {"groups", "comma-separated group specs, e.g. psl2:7,alternating:5"},
      {"mode", "exact or sampled"},
      {"samples", "Monte Carlo sample count"},
      {"tau", "distance threshold in (0,2)"},
      {"M", "gcd cap"},
      {"seed", "64-bit seed (required)"},
      {"output", "directory for report.json and CSV tables"},
      {"workers", "worker threads"},
      {"word", "word such as '1 2 -1 -2' or 'x1 x1'"},
      {"steps", "semicolon-separated step elements"},
      {"n_max", "largest walk length"},
      {"p", "prime for the mod-p^k law"},
      {"k", "exponent for the mod-p^k law"},
      {"timing", "record wall-clock time (true/false)"}};
  sub->add_option("--config", cmd.config_path, "key = value config file");
  auto add = [&](const char* key) {
    sub->add_option_function<std::string>(
           std::string("--") + key, [&cmd, key](const std::string& v) { cmd.flags[key] = v; },
           help.at(key))
        ->type_name("VALUE");
  };
  for (const char* key : keys) add(key);
  for (const char* key : kCommon) add(key);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wordlab: word maps, walks and generation on finite groups"};
  app.set_version_flag("--version", std::string(wl_version()));
  app.require_subcommand(1);

  RunCommand cmd;
  struct Sub {
    const char* name;
    const char* description;
    std::initializer_list<const char*> keys;
  };
  const Sub subs[] = {
      {"density", "sample random words and measure them on a list of groups",
       {"model", "d", "n", "R", "groups", "mode", "samples", "tau", "M"}},
      {"trend", "distance to uniform of one word across a family of groups",
       {"word", "groups", "mode", "samples"}},
      {"walk-gcd", "gcd statistics of lattice walk endpoints with exact DP cross-checks",
       {"d", "n", "M", "samples", "p", "k"}},
      {"mixing", "exact L1 mixing profile of a walk on a group",
       {"groups", "steps", "n_max", "tau"}},
      {"generation", "generating tuple counts and Hall numbers for catalog simple groups",
       {"groups", "d"}},
  };
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.description);
    add_key_flags(sub, cmd, s.keys);
    sub->callback([&cmd, name = std::string(s.name)] { cmd.experiment = name; });
  }

  std::string audit_path;
  CLI::App* audit = app.add_subcommand("audit", "recompute the aggregates of a JSON report");
  audit->add_option("report", audit_path, "report.json")->required();

  std::string ingest_path;
  CLI::App* ingest = app.add_subcommand("ingest", "validate a Cayley table and print its spec");
  ingest->add_option("path", ingest_path, "table file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  if (audit->parsed()) {
    std::string text;
    if (!read_file(audit_path, text)) {
      std::cerr << "wordlab: io: cannot read '" << audit_path << "'\n";
      return kExitConfig;
    }
    char* diffs = nullptr;
    size_t count = 0;
    if (wl_status s = wl_report_audit(text.c_str(), &diffs, &count); s != WL_OK) return fail(s);
    std::cout << diffs;
    wl_string_free(diffs);
    return count == 0 ? kExitOk : kExitAuditDiffs;
  }
  if (ingest->parsed()) {
    char* spec = nullptr;
    if (wl_status s = wl_cayley_ingest(ingest_path.c_str(), &spec); s != WL_OK) return fail(s);
    std::cout << spec;
    wl_string_free(spec);
    return kExitOk;
  }
  return run(cmd);
}
