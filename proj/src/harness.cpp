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

#include "wordlab/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "wordlab/error.hpp"
#include "wordlab/generation.hpp"
#include "wordlab/group_walks.hpp"
#include "wordlab/lattice_walks.hpp"
#include "wordlab/rng.hpp"

namespace wordlab {

using nlohmann::ordered_json;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void config_error(const std::string& message) {
  throw Error(ErrorCode::config, message);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (value.empty() || ec != std::errc() || ptr != value.data() + value.size())
    config_error(key + ": expected a non-negative integer, got '" + value + "'");
  return v;
}

std::uint64_t parse_positive(const std::string& key, const std::string& value) {
  const std::uint64_t v = parse_u64(key, value);
  if (v == 0) config_error(key + " must be positive");
  return v;
}

double parse_real(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size() || !std::isfinite(v))
    config_error(key + ": expected a number, got '" + value + "'");
  return v;
}

bool parse_flag(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  config_error(key + ": expected true or false, got '" + value + "'");
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(sep, start), text.size());
    const std::string_view piece = trim(text.substr(start, end - start));
    if (!piece.empty()) out.emplace_back(piece);
    start = end + 1;
  }
  return out;
}

bool is_budget_code(ErrorCode code) {
  return code == ErrorCode::budget_exceeded || code == ErrorCode::too_large ||
         code == ErrorCode::state_cap_exceeded;
}

ordered_json tool_block() { return {{"name", "wordlab"}, {"version", kToolVersion}}; }

ordered_json report_header(const ExperimentConfig& config) {
  ordered_json r;
  r["tool"] = tool_block();
  r["experiment"] = experiment_kind_name(config.experiment);
  r["seed"] = config.seed;
  r["config"] = config.echo();
  return r;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

GroupPtr build_group(const GroupSpec& spec) { return construct_group(spec); }

const char* kProxyNote =
    "all_below_tau is a finite proxy: every listed group has L1 distance below tau for this "
    "word. It is not the asymptotic almost-uniformity property.";

}  // namespace

ExperimentKind parse_experiment_kind(std::string_view text) {
  if (text == "density") return ExperimentKind::density;
  if (text == "trend") return ExperimentKind::trend;
  if (text == "walk-gcd") return ExperimentKind::walk_gcd;
  if (text == "mixing") return ExperimentKind::mixing;
  if (text == "generation") return ExperimentKind::generation;
  config_error("unknown experiment '" + std::string(text) +
               "' (expected density, trend, walk-gcd, mixing or generation)");
}

const char* experiment_kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::density: return "density";
    case ExperimentKind::trend: return "trend";
    case ExperimentKind::walk_gcd: return "walk-gcd";
    case ExperimentKind::mixing: return "mixing";
    case ExperimentKind::generation: return "generation";
  }
  return "?";
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "experiment", "model", "d",    "n",     "R",    "groups", "mode",  "samples", "tau",
      "M",          "seed",  "output", "workers", "word", "steps", "n_max", "p",     "k",
      "timing"};
  return keys;
}

std::map<std::string, std::string> parse_config_text(std::string_view text) {
  std::map<std::string, std::string> out;
  const auto& keys = config_keys();
  std::size_t line_no = 0;
  for (const std::string& raw : split(text, '\n')) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) config_error("line '" + std::string(line) + "': expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) config_error("unknown key '" + key + "'");
    if (!out.emplace(key, value).second) config_error("key '" + key + "' given twice");
  }
  return out;
}

ExperimentConfig ExperimentConfig::from_text(std::string_view base, std::string_view overrides) {
  auto entries = parse_config_text(base);
  for (auto& [key, value] : parse_config_text(overrides)) entries[key] = value;
  return from_entries(entries);
}

ExperimentConfig ExperimentConfig::from_entries(const std::map<std::string, std::string>& entries) {
  for (const auto& [key, value] : entries) {
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) config_error("unknown key '" + key + "'");
  }
  auto get = [&](const char* key) -> const std::string* {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };
  ExperimentConfig c;
  const std::string* v = get("experiment");
  if (v == nullptr) config_error("missing key 'experiment'");
  c.experiment = parse_experiment_kind(*v);
  v = get("seed");
  if (v == nullptr) config_error("missing key 'seed': runs must name their seed");
  c.seed = parse_u64("seed", *v);
  try {
    if ((v = get("model"))) c.model = parse_sampling_model(*v);
    if ((v = get("d"))) {
      const std::uint64_t d = parse_positive("d", *v);
      if (d > 64) config_error("d must be at most 64");
      c.d = static_cast<int>(d);
    }
    if ((v = get("n"))) c.n = parse_positive("n", *v);
    if ((v = get("R"))) c.R = parse_positive("R", *v);
    if ((v = get("groups")))
      for (const std::string& s : split(*v, ',')) {
        GroupSpec spec = GroupSpec::parse(s);
        spec.validate();
        c.groups.push_back(std::move(spec));
      }
    if ((v = get("mode"))) {
      if (*v == "exact")
        c.mode = DistributionMode::exact;
      else if (*v == "sampled")
        c.mode = DistributionMode::sampled;
      else
        config_error("mode must be exact or sampled");
    }
    if ((v = get("samples"))) c.samples = parse_positive("samples", *v);
    if ((v = get("tau"))) c.tau = parse_real("tau", *v);
    if ((v = get("M"))) c.M = parse_positive("M", *v);
    if ((v = get("output"))) c.output = *v;
    if ((v = get("workers"))) c.workers = static_cast<unsigned>(std::min<std::uint64_t>(parse_positive("workers", *v), 256));
    if ((v = get("word"))) c.word = *v;
    if ((v = get("steps"))) c.steps = split(*v, ';');
    if ((v = get("n_max"))) c.n_max = parse_positive("n_max", *v);
    if ((v = get("p"))) c.p = parse_positive("p", *v);
    if ((v = get("k"))) {
      const std::uint64_t k = parse_positive("k", *v);
      if (k > 64) config_error("k must be at most 64");
      c.k = static_cast<unsigned>(k);
    }
    if ((v = get("timing"))) c.timing = parse_flag("timing", *v);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::config) throw;
    config_error(e.what());
  }
  if (!(c.tau > 0 && c.tau < 2)) config_error("tau must lie in (0, 2)");
  auto need = [&](bool ok, const char* what) {
    if (!ok) config_error(std::string(experiment_kind_name(c.experiment)) + " needs " + what);
  };
  switch (c.experiment) {
    case ExperimentKind::density:
      need(c.n > 0, "n");
      need(c.R > 0, "R");
      break;
    case ExperimentKind::trend:
      need(c.word.has_value(), "word");
      need(!c.groups.empty(), "groups");
      try {
        Word::parse(*c.word);
      } catch (const Error& e) {
        config_error(std::string("word: ") + e.what());
      }
      break;
    case ExperimentKind::walk_gcd:
      need(c.n > 0, "n");
      need(c.d >= 2, "d >= 2");
      if (c.p != 0 && !is_prime(c.p)) config_error("p must be prime");
      break;
    case ExperimentKind::mixing:
      need(c.groups.size() == 1, "exactly one group");
      need(!c.steps.empty(), "steps");
      need(c.n_max > 0, "n_max");
      break;
    case ExperimentKind::generation:
      need(!c.groups.empty(), "groups");
      need(c.d >= 2, "d >= 2");
      for (const GroupSpec& s : c.groups)
        if (!catalog_aut_order(s))
          config_error(s.str() + " is not a catalog simple group (alternating:5, alternating:6, "
                                 "psl2:7, psl2:11, psl2:13)");
      break;
  }
  return c;
}

ordered_json ExperimentConfig::echo() const {
  ordered_json j;
  j["experiment"] = experiment_kind_name(experiment);
  j["seed"] = seed;
  auto groups_json = [&] {
    ordered_json a = ordered_json::array();
    for (const GroupSpec& s : groups) a.push_back(s.str());
    return a;
  };
  const char* mode_name = mode == DistributionMode::exact ? "exact" : "sampled";
  switch (experiment) {
    case ExperimentKind::density:
      j["model"] = sampling_model_name(model);
      j["d"] = d;
      j["n"] = n;
      j["R"] = R;
      j["groups"] = groups_json();
      j["mode"] = mode_name;
      if (mode == DistributionMode::sampled) j["samples"] = samples;
      j["tau"] = tau;
      j["M"] = M;
      break;
    case ExperimentKind::trend:
      j["word"] = *word;
      j["groups"] = groups_json();
      j["mode"] = mode_name;
      if (mode == DistributionMode::sampled) j["samples"] = samples;
      break;
    case ExperimentKind::walk_gcd:
      j["d"] = d;
      j["n"] = n;
      j["M"] = M;
      j["samples"] = samples;
      if (p != 0) {
        j["p"] = p;
        j["k"] = k;
      }
      break;
    case ExperimentKind::mixing: {
      j["groups"] = groups_json();
      ordered_json s = ordered_json::array();
      for (const std::string& t : steps) s.push_back(t);
      j["steps"] = s;
      j["n_max"] = n_max;
      j["tau"] = tau;
      break;
    }
    case ExperimentKind::generation:
      j["groups"] = groups_json();
      j["d"] = d;
      break;
  }
  return j;
}

std::string ExperimentResult::json_text() const { return report.dump(2) + "\n"; }

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult r;
  switch (config.experiment) {
    case ExperimentKind::density: r = run_density_experiment(config); break;
    case ExperimentKind::trend: r = run_trend(config); break;
    case ExperimentKind::walk_gcd: r = run_walk_gcd(config); break;
    case ExperimentKind::mixing: r = run_mixing(config); break;
    case ExperimentKind::generation: r = run_generation(config); break;
  }
  if (config.timing)
    r.report["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// ---------------------------------------------------------------- density

ExperimentResult run_density_experiment(const ExperimentConfig& config) {
  ExperimentResult out;
  ordered_json report = report_header(config);
  std::vector<GroupPtr> groups;
  for (const GroupSpec& s : config.groups) groups.push_back(build_group(s));

  ordered_json words = ordered_json::array();
  std::ostringstream words_csv, cells_csv;
  words_csv << "word_index,unreduced_length,reduced_length,gamma,gamma_in_range,all_below_tau,word\n";
  cells_csv << "word_index,group,status,distance,below_tau,covers_powers\n";
  std::map<std::uint64_t, std::uint64_t> histogram;
  std::uint64_t in_range = 0, below = 0;

  for (std::uint64_t i = 0; i < config.R; ++i) {
    Rng rng = Rng::stream(config.seed, {1, i});
    const Word w = sample_word(config.model, config.d, config.n, rng);
    const AbelianVector abel = abelianize(w);
    const std::uint64_t g = gamma(abel);
    const bool ok_gamma = g >= 1 && g <= config.M;
    ordered_json rec;
    rec["index"] = i;
    rec["word"] = w.str();
    rec["unreduced_length"] = w.unreduced_length();
    rec["reduced_length"] = w.length();
    rec["abelianization"] = abel;
    rec["gamma"] = g;
    rec["gamma_in_range"] = ok_gamma;
    ordered_json cells = ordered_json::array();
    bool all_below = true;
    for (std::size_t j = 0; j < groups.size(); ++j) {
      const Group& G = *groups[j];
      ordered_json cell;
      cell["group"] = config.groups[j].str();
      try {
        const Distribution dist =
            config.mode == DistributionMode::exact
                ? exact_distribution(w, G, config.workers)
                : monte_carlo_distribution(w, G, config.samples,
                                           Rng::stream(config.seed, {2, i, j}).next(), config.workers);
        const Rational dist_l1 = l1_uniform_distance(dist);
        const double value = to_double(dist_l1);
        const ImageReport image = image_report_from(dist, G, g);
        const bool is_below = value < config.tau;
        cell["status"] = "ok";
        if (config.mode == DistributionMode::exact) cell["distance_exact"] = to_string(dist_l1);
        cell["distance"] = value;
        cell["below_tau"] = is_below;
        cell["image_size"] = image.image.size();
        cell["covers_powers"] = image.covers_powers;
        if (image.non_power_witness)
          cell["non_power_witness"] = G.format(*image.non_power_witness);
        else
          cell["non_power_witness"] = nullptr;
        all_below = all_below && is_below;
        cells_csv << i << ',' << config.groups[j].str() << ",ok," << format_double(value) << ','
                  << (is_below ? 1 : 0) << ',' << (image.covers_powers ? 1 : 0) << '\n';
      } catch (const Error& e) {
        if (!is_budget_code(e.code())) throw;
        ++out.budget_failures;
        all_below = false;
        cell["status"] = "error";
        cell["error"] = error_code_name(e.code());
        cell["message"] = e.what();
        cells_csv << i << ',' << config.groups[j].str() << ',' << error_code_name(e.code()) << ",,,\n";
      }
      cells.push_back(std::move(cell));
    }
    rec["groups"] = std::move(cells);
    rec["all_below_tau"] = all_below;
    ++histogram[g];
    in_range += ok_gamma;
    below += all_below;
    words_csv << i << ',' << w.unreduced_length() << ',' << w.length() << ',' << g << ','
              << (ok_gamma ? 1 : 0) << ',' << (all_below ? 1 : 0) << ",\"" << w.str() << "\"\n";
    words.push_back(std::move(rec));
  }

  const double R = static_cast<double>(config.R);
  ordered_json agg;
  agg["words"] = config.R;
  agg["gamma_in_range"] = in_range;
  agg["gamma_zero_or_above_M"] = config.R - in_range;
  agg["fraction_gamma_in_range"] = static_cast<double>(in_range) / R;
  agg["fraction_gamma_zero_or_above_M"] = static_cast<double>(config.R - in_range) / R;
  agg["all_below_tau"] = below;
  agg["fraction_all_below_tau"] = static_cast<double>(below) / R;
  agg["budget_failures"] = out.budget_failures;
  ordered_json hist = ordered_json::array();
  std::ostringstream hist_csv;
  hist_csv << "gamma,count\n";
  for (auto [gv, count] : histogram) {
    hist.push_back({{"gamma", gv}, {"count", count}});
    hist_csv << gv << ',' << count << '\n';
  }
  agg["gamma_histogram"] = std::move(hist);
  report["words"] = std::move(words);
  report["aggregates"] = std::move(agg);
  report["proxy_note"] = kProxyNote;
  out.report = std::move(report);
  out.tables = {{"words.csv", words_csv.str()},
                {"cells.csv", cells_csv.str()},
                {"gamma_histogram.csv", hist_csv.str()}};
  return out;
}

// ---------------------------------------------------------------- trend

ExperimentResult run_trend(const ExperimentConfig& config) {
  ExperimentResult out;
  ordered_json report = report_header(config);
  const Word w = Word::parse(*config.word);
  ordered_json wj;
  wj["reduced"] = w.str();
  wj["rank"] = w.rank();
  wj["abelianization"] = abelianize(w);
  wj["gamma"] = gamma(abelianize(w));
  if (!w.empty()) {
    const PowerDecomposition pd = is_power_word(w);
    wj["is_power"] = pd.is_power;
    wj["root"] = pd.root.str();
    wj["exponent"] = pd.exponent;
  }
  report["word"] = std::move(wj);
  const ImageMode mode{config.mode, config.samples, config.seed};
  const auto rows = family_trend(w, config.groups, mode, config.workers);
  ordered_json rj = ordered_json::array();
  std::ostringstream csv;
  csv << "group,order,status,distance\n";
  for (const TrendRow& row : rows) {
    ordered_json x;
    x["group"] = row.spec;
    x["order"] = row.order;
    if (row.ok) {
      x["status"] = "ok";
      if (row.mode == DistributionMode::exact) x["distance_exact"] = to_string(row.distance);
      x["distance"] = to_double(row.distance);
      csv << row.spec << ',' << row.order << ",ok," << format_double(to_double(row.distance)) << '\n';
    } else {
      if (!row.error || !is_budget_code(*row.error)) throw Error(row.error.value_or(ErrorCode::invalid_argument), row.message);
      ++out.budget_failures;
      x["status"] = "error";
      x["error"] = error_code_name(*row.error);
      x["message"] = row.message;
      csv << row.spec << ',' << row.order << ',' << error_code_name(*row.error) << ",\n";
    }
    rj.push_back(std::move(x));
  }
  report["rows"] = std::move(rj);
  out.report = std::move(report);
  out.tables = {{"trend.csv", csv.str()}};
  return out;
}

// ---------------------------------------------------------------- walk-gcd

ExperimentResult run_walk_gcd(const ExperimentConfig& config) {
  ExperimentResult out;
  ordered_json report = report_header(config);
  const GcdTailEstimate est =
      gcd_tail_estimate(config.d, config.n, config.M, config.samples, config.seed, config.workers);
  ordered_json e;
  e["samples"] = est.samples;
  e["zero"] = est.zero;
  e["above_M"] = est.above_m;
  e["fraction_zero"] = est.p_zero;
  e["fraction_above_M"] = est.p_above_m;
  e["fraction_zero_or_above_M"] = est.p_bad;
  e["half_width_95"] = est.hw_bad;
  report["estimate"] = std::move(e);

  // Per prime: sampled Pr[p | X_n] against the exact mod-p law.
  ordered_json cross = ordered_json::array();
  std::ostringstream csv;
  csv << "p,hits,sampled,exact,sigma,z\n";
  for (auto [p, hits] : est.prime_hits) {
    ordered_json row;
    row["p"] = p;
    row["hits"] = hits;
    const double sampled = static_cast<double>(hits) / static_cast<double>(est.samples);
    row["sampled"] = sampled;
    try {
      const ModLaw law = exact_mod_law(config.d, p, 1, config.n, ModLawArithmetic::floating);
      const double exact = law.zero_probability();
      const double sigma = std::sqrt(exact * (1 - exact) / static_cast<double>(est.samples));
      const double z = sigma > 0 ? (sampled - exact) / sigma : 0.0;
      row["exact"] = exact;
      row["sigma"] = sigma;
      row["z"] = z;
      csv << p << ',' << hits << ',' << format_double(sampled) << ',' << format_double(exact) << ','
          << format_double(sigma) << ',' << format_double(z) << '\n';
    } catch (const Error& err) {
      if (!is_budget_code(err.code())) throw;
      ++out.budget_failures;
      row["exact"] = nullptr;
      row["error"] = error_code_name(err.code());
      csv << p << ',' << hits << ',' << format_double(sampled) << ",,,\n";
    }
    cross.push_back(std::move(row));
  }
  report["dp_cross_check"] = std::move(cross);

  try {
    const GcdTailPrediction pred = gcd_tail_prediction(config.d, config.n, config.M);
    ordered_json pj;
    pj["model"] = "independent p-adic valuations across primes";
    pj["fraction_zero_or_above_M"] = pred.p_bad;
    ordered_json primes = ordered_json::array();
    for (const auto& v : pred.primes) primes.push_back({{"p", v.p}, {"divisible", v.divisible}});
    pj["primes"] = std::move(primes);
    report["prediction"] = std::move(pj);
  } catch (const Error& err) {
    if (!is_budget_code(err.code())) throw;
    ++out.budget_failures;
    report["prediction"] = {{"error", error_code_name(err.code())}, {"message", err.what()}};
  }

  out.tables = {{"gcd_primes.csv", csv.str()}};
  if (config.p != 0) {
    try {
      const ModLaw law = exact_mod_law(config.d, config.p, config.k, config.n);
      report["mod_law"] = {{"p", law.p},
                           {"k", law.k},
                           {"modulus", law.modulus},
                           {"exact", law.exact},
                           {"states", law.state_count()},
                           {"zero_probability", law.zero_probability()}};
      std::ostringstream m;
      write_mod_law_csv(m, law);
      out.tables.emplace_back("mod_law.csv", m.str());
    } catch (const Error& err) {
      if (!is_budget_code(err.code())) throw;
      ++out.budget_failures;
      report["mod_law"] = {{"error", error_code_name(err.code())}, {"message", err.what()}};
    }
  }
  out.report = std::move(report);
  return out;
}

// ---------------------------------------------------------------- mixing

ExperimentResult run_mixing(const ExperimentConfig& config) {
  ExperimentResult out;
  ordered_json report = report_header(config);
  GroupPtr G = build_group(config.groups.front());
  std::vector<Index> steps;
  for (const std::string& s : config.steps) {
    try {
      steps.push_back(G->parse_element(s));
    } catch (const Error& e) {
      config_error("steps: " + std::string(e.what()));
    }
  }
  const StepSet S = StepSet::uniform(*G, steps);
  report["group"] = {{"spec", config.groups.front().str()}, {"order", G->order()}};
  ordered_json sj = ordered_json::array();
  for (Index s : steps) sj.push_back(G->format(s));
  report["steps"] = std::move(sj);

  ordered_json ob = nullptr;
  if (auto witness = cyclic_obstruction(*G, S)) {
    Rng rng = Rng::stream(config.seed, {3});
    ob = ordered_json::object();
    ob["modulus"] = witness->modulus;
    ordered_json res = ordered_json::array();
    for (Index s : steps) res.push_back(witness->residues[s]);
    ob["step_residues"] = std::move(res);
    ob["residue_digest"] = witness->digest();
    ob["verified"] = verify_obstruction(*G, S, *witness, 1000, rng);
  }
  report["obstruction"] = std::move(ob);

  const auto profile = mixing_profile(*G, S, config.n_max);
  double lo = 2.0;
  std::optional<std::uint64_t> hit;
  for (std::size_t n = 0; n < profile.size(); ++n) {
    const double v = to_double(profile[n]);
    lo = std::min(lo, v);
    if (!hit && v < config.tau) hit = n;
  }
  ordered_json pj;
  pj["n_max"] = config.n_max;
  pj["final_distance"] = to_double(profile.back());
  pj["final_distance_exact"] = to_string(profile.back());
  pj["min_distance"] = lo;
  pj["first_n_below_tau"] = hit ? ordered_json(*hit) : ordered_json(nullptr);
  report["profile"] = std::move(pj);
  std::ostringstream csv;
  write_mixing_profile_csv(csv, profile);
  out.tables = {{"mixing.csv", csv.str()}};
  out.report = std::move(report);
  return out;
}

// ---------------------------------------------------------------- generation

ExperimentResult run_generation(const ExperimentConfig& config) {
  ExperimentResult out;
  ordered_json report = report_header(config);
  ordered_json rows = ordered_json::array();
  std::ostringstream csv;
  csv << "group,order,d,generating_tuples,aut_order,aut_classes,mt_bound,consistent\n";
  for (const GroupSpec& spec : config.groups) {
    ordered_json row;
    row["group"] = spec.str();
    try {
      GroupPtr G = build_group(spec);
      const HallReport h = hall_max_power(*G, config.d, config.workers);
      row["status"] = "ok";
      row["order"] = h.order;
      row["d"] = h.d;
      row["generating_tuples"] = h.generating_tuples;
      row["aut_order"] = h.aut_order;
      row["free_action"] = h.free_action;
      row["aut_classes"] = h.aut_classes;
      row["mt_bound"] = h.mt_bound;
      row["consistent"] = h.consistent;
      csv << spec.str() << ',' << h.order << ',' << h.d << ',' << h.generating_tuples << ','
          << h.aut_order << ',' << h.aut_classes << ',' << h.mt_bound << ','
          << (h.consistent ? 1 : 0) << '\n';
    } catch (const Error& e) {
      if (!is_budget_code(e.code())) throw;
      ++out.budget_failures;
      row["status"] = "error";
      row["error"] = error_code_name(e.code());
      row["message"] = e.what();
      csv << spec.str() << ",,,,,,," << '\n';
    }
    rows.push_back(std::move(row));
  }
  report["rows"] = std::move(rows);
  out.tables = {{"hall.csv", csv.str()}};
  out.report = std::move(report);
  return out;
}

// ---------------------------------------------------------------- audit

AuditResult audit_report(const ordered_json& report) {
  AuditResult a;
  auto field = [&](const ordered_json& j, const char* key) -> const ordered_json& {
    if (!j.is_object() || !j.contains(key))
      throw Error(ErrorCode::invalid_argument, std::string("report lacks field '") + key + "'");
    return j.at(key);
  };
  a.experiment = field(report, "experiment").get<std::string>();
  auto compare = [&](const std::string& name, const ordered_json& stored, const ordered_json& recomputed) {
    ++a.checked;
    if (stored != recomputed)
      a.diffs.push_back(name + ": stored " + stored.dump() + ", recomputed " + recomputed.dump());
  };
  try {
    if (a.experiment == "density") {
      const auto& config = field(report, "config");
      const std::uint64_t M = field(config, "M").get<std::uint64_t>();
      const double tau = field(config, "tau").get<double>();
      const auto& words = field(report, "words");
      const auto& agg = field(report, "aggregates");
      std::uint64_t R = 0, in_range = 0, below = 0, failures = 0;
      std::map<std::uint64_t, std::uint64_t> histogram;
      for (const auto& w : words) {
        const std::uint64_t g = field(w, "gamma").get<std::uint64_t>();
        std::uint64_t from_vector = 0;
        for (const auto& x : field(w, "abelianization"))
          from_vector = gcd_u64(from_vector, static_cast<std::uint64_t>(std::llabs(x.get<std::int64_t>())));
        compare("words[" + std::to_string(R) + "].gamma", w.at("gamma"), from_vector);
        const bool ok_gamma = g >= 1 && g <= M;
        compare("words[" + std::to_string(R) + "].gamma_in_range", w.at("gamma_in_range"), ok_gamma);
        bool all_below = true;
        for (const auto& cell : field(w, "groups")) {
          if (field(cell, "status").get<std::string>() != "ok") {
            ++failures;
            all_below = false;
            continue;
          }
          const bool is_below = field(cell, "distance").get<double>() < tau;
          compare("words[" + std::to_string(R) + "].below_tau", cell.at("below_tau"), is_below);
          all_below = all_below && is_below;
        }
        compare("words[" + std::to_string(R) + "].all_below_tau", w.at("all_below_tau"), all_below);
        ++histogram[g];
        in_range += ok_gamma;
        below += all_below;
        ++R;
      }
      const double Rd = static_cast<double>(R);
      compare("aggregates.words", field(agg, "words"), R);
      compare("aggregates.gamma_in_range", field(agg, "gamma_in_range"), in_range);
      compare("aggregates.gamma_zero_or_above_M", field(agg, "gamma_zero_or_above_M"), R - in_range);
      compare("aggregates.fraction_gamma_in_range", field(agg, "fraction_gamma_in_range"),
              static_cast<double>(in_range) / Rd);
      compare("aggregates.fraction_gamma_zero_or_above_M", field(agg, "fraction_gamma_zero_or_above_M"),
              static_cast<double>(R - in_range) / Rd);
      compare("aggregates.all_below_tau", field(agg, "all_below_tau"), below);
      compare("aggregates.fraction_all_below_tau", field(agg, "fraction_all_below_tau"),
              static_cast<double>(below) / Rd);
      compare("aggregates.budget_failures", field(agg, "budget_failures"), failures);
      ordered_json hist = ordered_json::array();
      for (auto [gv, count] : histogram) hist.push_back({{"gamma", gv}, {"count", count}});
      compare("aggregates.gamma_histogram", field(agg, "gamma_histogram"), hist);
    } else if (a.experiment == "walk-gcd") {
      const auto& e = field(report, "estimate");
      const std::uint64_t n = field(e, "samples").get<std::uint64_t>();
      const std::uint64_t zero = field(e, "zero").get<std::uint64_t>();
      const std::uint64_t above = field(e, "above_M").get<std::uint64_t>();
      const double nd = static_cast<double>(n);
      compare("estimate.fraction_zero", field(e, "fraction_zero"), static_cast<double>(zero) / nd);
      compare("estimate.fraction_above_M", field(e, "fraction_above_M"), static_cast<double>(above) / nd);
      compare("estimate.fraction_zero_or_above_M", field(e, "fraction_zero_or_above_M"),
              static_cast<double>(zero + above) / nd);
      std::size_t i = 0;
      for (const auto& row : field(report, "dp_cross_check")) {
        compare("dp_cross_check[" + std::to_string(i++) + "].sampled", field(row, "sampled"),
                field(row, "hits").get<double>() / nd);
      }
    } else if (a.experiment == "generation") {
      std::size_t i = 0;
      for (const auto& row : field(report, "rows")) {
        const std::string at = "rows[" + std::to_string(i++) + "]";
        if (field(row, "status").get<std::string>() != "ok") continue;
        const auto tuples = field(row, "generating_tuples").get<std::uint64_t>();
        const auto aut = field(row, "aut_order").get<std::uint64_t>();
        const auto mt = field(row, "mt_bound").get<std::uint64_t>();
        compare(at + ".aut_classes", field(row, "aut_classes"), tuples / aut);
        compare(at + ".free_action", field(row, "free_action"), tuples % aut == 0);
        compare(at + ".mt_bound", field(row, "mt_bound"), isqrt(4 * field(row, "order").get<std::uint64_t>()));
        compare(at + ".consistent", field(row, "consistent"), mt <= tuples / aut);
      }
    } else if (a.experiment == "mixing") {
      const auto& p = field(report, "profile");
      const double tau = field(field(report, "config"), "tau").get<double>();
      const auto& first = field(p, "first_n_below_tau");
      const double fin = field(p, "final_distance").get<double>();
      if (first.is_null()) compare("profile.final_distance >= tau", fin >= tau, true);
      compare("profile.min_distance <= final_distance", field(p, "min_distance").get<double>() <= fin, true);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::invalid_argument, std::string("malformed report: ") + e.what());
  }
  return a;
}

IngestResult ingest_cayley_table(const std::string& path) {
  GroupPtr G = load_cayley_table(path);
  IngestResult r;
  r.spec.kind = GroupKind::cayley_file;
  r.spec.path = path;
  r.spec.parameter = 0;
  r.order = G->order();
  r.name = G->name();
  return r;
}

}  // namespace wordlab
