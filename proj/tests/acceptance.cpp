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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "oracles.hpp"
#include "wordlab/error.hpp"
#include "wordlab/generation.hpp"
#include "wordlab/group_walks.hpp"
#include "wordlab/harness.hpp"
#include "wordlab/lattice_walks.hpp"
#include "wordlab/measure.hpp"
#include "wordlab/numeric.hpp"
#include "wordlab/rng.hpp"
#include "wordlab/words.hpp"

using namespace wordlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + ("failed: " + what);
    }
  }
  void note(const std::string& s) {
    if (pass) detail += (detail.empty() ? "" : "; ") + s;
  }
};

int failures = 0;

void criterion(int number, double limit_seconds, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail += std::string("; exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= limit_seconds) {
    out.pass = false;
    out.detail += "; runtime over " + std::to_string(limit_seconds) + " s";
  }
  failures += !out.pass;
  std::printf("criterion %2d: %s (%.2f s) %s\n", number, out.pass ? "PASS" : "FAIL", secs, out.detail.c_str());
  std::fflush(stdout);
}

std::vector<Index> parse_all(const Group& G, std::initializer_list<const char*> texts) {
  std::vector<Index> out;
  for (const char* t : texts) out.push_back(G.parse_element(t));
  return out;
}

// Catalog groups of order at most 20000.
const char* const kCatalog[] = {
    "cyclic:1",      "cyclic:12",     "cyclic:1000",   "dihedral:3",    "dihedral:10",   "dihedral:500",
    "symmetric:3",   "symmetric:4",   "symmetric:5",   "symmetric:6",   "symmetric:7",   "alternating:4",
    "alternating:5", "alternating:6", "alternating:7", "sl2:3",         "sl2:5",         "sl2:7",
    "sl2:11",        "sl2:13",        "sl2:17",        "sl2:19",        "sl2:23",        "psl2:5",
    "psl2:7",        "psl2:11",       "psl2:13",       "psl2:17",       "psl2:19",       "psl2:23",
    "psl2:29",       "psl2:31"};

}  // namespace

int main() {
  criterion(1, 30, [](Outcome& o) {
    int groups = 0;
    for (const char* spec : kCatalog) {
      const auto G = construct_group(spec);
      if (G->order() > 20000) continue;
      ++groups;
      Rng rng = Rng::stream(1, {G->order(), static_cast<std::uint64_t>(groups)});
      bool ok = true;
      for (int i = 0; i < 10000 && ok; ++i) {
        const Index a = static_cast<Index>(rng.below(G->order()));
        const Index b = static_cast<Index>(rng.below(G->order()));
        const Index c = static_cast<Index>(rng.below(G->order()));
        ok = G->mul(G->mul(a, b), c) == G->mul(a, G->mul(b, c)) && G->mul(a, G->inv(a)) == 0 &&
             G->mul(G->inv(a), a) == 0 && G->mul(0, a) == a && G->mul(a, 0) == a;
      }
      o.require(ok, std::string("axioms on ") + spec);
    }
    const auto SL = construct_group("sl2:5");
    const auto Z = center(*SL);
    const auto Q = quotient_by_center(SL);
    o.require(Z.size() == 2, "|Z(SL(2,5))| = 2");
    o.require(Q->order() == 60, "|SL(2,5)/Z| = 60");
    o.note(std::to_string(groups) + " groups x 10^4 triples; |Z| = " + std::to_string(Z.size()) +
           ", |Q| = " + std::to_string(Q->order()));
  });

  criterion(2, 120, [](Outcome& o) {
    int cases = 0;
    for (const char* spec : kCatalog) {
      const auto G = construct_group(spec);
      if (G->order() > 360) continue;
      for (int d : {2, 3}) {
        const Word x1 = Word::parse("1", d);
        try {
          const auto dist = exact_distribution(x1, *G, 1);
          o.require(l1_uniform_distance(dist) == 0, std::string("x1 uniform on ") + spec);
          ++cases;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::budget_exceeded) throw;
        }
      }
    }
    o.note(std::to_string(cases) + " (group, d) cases with distance exactly 0");
  });

  criterion(3, 60, [](Outcome& o) {
    const Word comm = Word::parse("1 2 -1 -2", 2);
    for (auto [spec, expected] : {std::pair{"alternating:5", 300ull}, std::pair{"psl2:7", 1008ull}}) {
      const auto G = construct_group(spec);
      const auto dist = exact_distribution(comm, *G, 1);
      const std::uint64_t oracle_count = G->order() * oracle::class_count(*G);
      o.require(dist.counts[0] == expected, std::string("commutator count on ") + spec);
      o.require(oracle_count == expected, std::string("oracle count on ") + spec);
      o.note(std::string(spec) + " " + std::to_string(dist.counts[0]));
    }
  });

  criterion(4, 120, [](Outcome& o) {
    const auto G = construct_group("psl2:7");
    int words = 0, full_images = 0;
    for (std::uint64_t i = 0; words < 100; ++i) {
      Rng rng = Rng::stream(4, {i});
      const Word w = sample_word(SamplingModel::symmetric, 2, 40, rng);
      const auto v = abelianize(w);
      const std::uint64_t m = gamma(v);
      if (m < 1 || m > 3) continue;
      ++words;
      const auto cert = bezout_certificate(v);
      bool ok = true;
      for (Index g = 0; g < G->order() && ok; ++g) {
        const std::vector<Index> t{G->pow(g, cert.coefficients[0]), G->pow(g, cert.coefficients[1])};
        ok = evaluate_indices(w.letters(), *G, t) == G->pow(g, static_cast<std::int64_t>(m));
      }
      o.require(ok, "Bezout identity for word " + std::to_string(i));
      if (m == 1) {
        const auto dist = exact_distribution(w, *G, 1);
        o.require(support(dist).size() == G->order(), "full image for gamma 1");
        ++full_images;
      }
    }
    o.note("100 words, " + std::to_string(full_images) + " with gamma 1 and full image");
  });

  criterion(5, 60, [](Outcome& o) {
    const Word sq = Word::parse("1 1", 1);
    std::string values;
    for (int p : {5, 7, 11, 13}) {
      const auto G = construct_group("psl2:" + std::to_string(p));
      const Rational got = l1_uniform_distance(exact_distribution(sq, *G, 1));
      // Direct pushforward of g -> g^2.
      Distribution push;
      push.counts.assign(G->order(), 0);
      push.total = G->order();
      for (Index g = 0; g < G->order(); ++g) ++push.counts[oracle::evaluate(*G, {1, 1}, {g})];
      const Rational want = l1_uniform_distance(push);
      o.require(got == want, "oracle agreement at p = " + std::to_string(p));
      o.require(got >= Rational(1, 2), "distance >= 1/2 at p = " + std::to_string(p));
      values += (values.empty() ? "" : ", ") + got.str();
    }
    o.note("distances " + values);
  });

  criterion(6, 10, [](Outcome& o) {
    const double p3 = exact_mod_law(2, 3, 1, 500).zero_probability();
    const double p5 = exact_mod_law(2, 5, 1, 500).zero_probability();
    const double p4 = exact_mod_law(2, 2, 2, 500).zero_probability();
    o.require(std::abs(p3 - 1.0 / 9) < 1e-3, "p = 3 limit");
    o.require(std::abs(p5 - 1.0 / 25) < 1e-3, "p = 5 limit");
    o.require(exact_mod_law(2, 2, 1, 499).exact_probability(0) == 0, "odd n parity");
    o.require(std::abs(p4 - 1.0 / 8) < 1e-3, "p = 2, k = 2 limit");
    char buf[160];
    std::snprintf(buf, sizeof buf, "|dev| p3 %.2e, p5 %.2e, 4 %.2e; odd n exactly 0", std::abs(p3 - 1.0 / 9),
                  std::abs(p5 - 1.0 / 25), std::abs(p4 - 1.0 / 8));
    o.note(buf);
  });

  criterion(7, 30, [](Outcome& o) {
    const std::uint64_t samples = 100000, n = 200;
    const ModLaw law = exact_mod_law(2, 3, 2, n);
    std::vector<std::uint64_t> hits(law.state_count(), 0);
    for (std::uint64_t i = 0; i < samples; ++i) {
      Rng rng = Rng::stream(7, {i});
      ++hits[law.state_of(simulate_walk(2, n, rng))];
    }
    double worst = 0;
    for (std::uint64_t s = 0; s < law.state_count(); ++s) {
      const double p = law.probability(s);
      const double sigma = std::sqrt(p * (1 - p) / samples);
      const double z = std::abs(hits[s] / double(samples) - p) / sigma;
      worst = std::max(worst, z);
      o.require(z <= 4, "state " + std::to_string(s) + " within 4 sigma");
    }
    char buf[80];
    std::snprintf(buf, sizeof buf, "81 states, max |z| = %.2f", worst);
    o.note(buf);
  });

  criterion(8, 30, [](Outcome& o) {
    const auto A5 = construct_group("alternating:5");
    const auto S = StepSet::uniform(*A5, parse_all(*A5, {"(1 2 3 4 5)", "(1 2 3)"}));
    const auto profile = mixing_profile(*A5, S, 300);
    o.require(profile.back() < Rational(1, 10000), "A5 distance < 1e-4 at n = 300");
    const auto S3 = construct_group("symmetric:3");
    const auto T = StepSet::uniform(*S3, parse_all(*S3, {"(1 2)", "(2 3)"}));
    const auto ob = cyclic_obstruction(*S3, T);
    o.require(ob && ob->modulus == 2, "S3 obstruction with c = 2");
    const auto p3 = mixing_profile(*S3, T, 600);
    bool stays = true;
    for (const auto& x : p3) stays = stays && x >= Rational(1, 2);
    o.require(stays, "S3 distance >= 1/2 for n <= 600");
    char buf[120];
    std::snprintf(buf, sizeof buf, "A5 L1 at 300 = %.3g; S3 witness c = %u", profile.back().convert_to<double>(),
                  ob ? static_cast<unsigned>(ob->modulus) : 0u);
    o.note(buf);
  });

  criterion(9, 120, [](Outcome& o) {
    const auto A5 = construct_group("alternating:5");
    const auto hall = hall_max_power(*A5, 2);
    o.require(hall.generating_tuples == 2280, "2280 generating pairs");
    o.require(hall.aut_classes == 19, "19 Aut-classes");
    o.require(hall.mt_bound == 15 && hall.mt_bound <= hall.aut_classes, "floor(2 sqrt 60) = 15 <= 19");
    o.require(oracle::generating_pairs(*A5) == 2280, "brute-force pair count");

    // Aut(A5) is conjugation in S5.
    const auto S5 = construct_group("symmetric:5");
    auto to_s5 = [&](Index x) { return S5->parse_element(A5->format(x)); };
    auto from_s5 = [&](Index y) { return A5->parse_element(S5->format(y)); };
    const auto gens = parse_all(*A5, {"(1 2 3 4 5)", "(1 2 3)"});
    const Index odd = S5->parse_element("(1 2)");
    const std::vector<Index> image{from_s5(S5->conjugate(odd, to_s5(gens[0]))),
                                   from_s5(S5->conjugate(odd, to_s5(gens[1])))};
    auto equivalent = [&](const std::vector<Index>& x, const std::vector<Index>& y) {
      for (Index s = 0; s < S5->order(); ++s)
        if (S5->conjugate(s, to_s5(x[0])) == to_s5(y[0]) && S5->conjugate(s, to_s5(x[1])) == to_s5(y[1]))
          return true;
      return false;
    };
    // First generating pair, in index order, outside the class of `gens`.
    std::vector<Index> other;
    for (Index x = 0; x < 60 && other.empty(); ++x)
      for (Index y = 0; y < 60 && other.empty(); ++y) {
        const std::vector<Index> t{x, y};
        if (is_generating(*A5, GenTuple::of(*A5, t)) && !equivalent(gens, t)) other = t;
      }
    o.require(!other.empty(), "a second Aut-class exists");
    o.require(equivalent(gens, image), "diagonal pair lies in the same Aut-class");
    o.require(is_generating(*A5, GenTuple::of(*A5, other)), "second pair generates A5");

    const auto P = direct_power(A5, 2);
    auto closure_size = [&](const std::vector<Index>& first, const std::vector<Index>& second) {
      const std::vector<Index> pg{P->power_info()->compose(std::vector<Index>{first[0], second[0]}),
                                  P->power_info()->compose(std::vector<Index>{first[1], second[1]})};
      return oracle::closure(*P, pg).size();
    };
    const auto cross = closure_size(gens, other);
    const auto diag = closure_size(gens, image);
    o.require(cross == 3600, "cross-class pair generates A5^2");
    o.require(diag == 60, "Aut-diagonal pair generates a diagonal copy");
    o.note("2280 pairs, 19 classes, bound 15; closures " + std::to_string(cross) + " and " + std::to_string(diag));
  });

  criterion(10, 300, [](Outcome& o) {
    const std::string config =
        "experiment = density\nmodel = symmetric\nd = 2\nn = 200\nR = 500\nM = 30\n"
        "groups = alternating:5\nseed = 20240607\n";
    const auto a = run_experiment(ExperimentConfig::from_text(config, "workers = 1"));
    const auto b = run_experiment(ExperimentConfig::from_text(config, "workers = 1"));
    const auto c = run_experiment(ExperimentConfig::from_text(config, "workers = 3"));
    o.require(a.json_text() == b.json_text(), "identical bytes across runs");
    o.require(a.json_text() == c.json_text(), "identical bytes across worker counts");
    const auto audit = audit_report(nlohmann::ordered_json::parse(a.json_text()));
    o.require(audit.diffs.empty(), "audit with zero diffs");
    const double frac = a.report["aggregates"]["fraction_gamma_zero_or_above_M"].get<double>();
    o.require(frac < 0.1, "fraction gamma = 0 or > 30 below 0.1");
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu bytes, audit checked %llu with 0 diffs, fraction = %.4f", a.json_text().size(),
                  static_cast<unsigned long long>(audit.checked), frac);
    o.note(buf);
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
