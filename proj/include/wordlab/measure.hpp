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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wordlab/error.hpp"
#include "wordlab/groups.hpp"
#include "wordlab/numeric.hpp"
#include "wordlab/words.hpp"

namespace wordlab {

enum class DistributionMode { exact, sampled };

// Integer-count measure over a group's carrier. Count is std::uint64_t for
// word pushforwards and BigInt for walk laws.
template <class Count>
struct BasicDistribution {
  std::uint64_t group_id = 0;
  std::vector<Count> counts;
  Count total{};
  DistributionMode mode = DistributionMode::exact;
};

using Distribution = BasicDistribution<std::uint64_t>;
using WalkLaw = BasicDistribution<BigInt>;

// L1 distance sum_g |counts[g]/total - 1/|G||, as an exact rational in [0, 2).
template <class Count>
Rational l1_uniform_distance(const BasicDistribution<Count>& dist) {
  const BigInt n = static_cast<std::uint64_t>(dist.counts.size());
  const BigInt total = BigInt(dist.total);
  BigInt numerator = 0;
  for (const Count& c : dist.counts) {
    BigInt diff = BigInt(c) * n - total;
    numerator += diff < 0 ? BigInt(-diff) : diff;
  }
  return Rational(numerator, total * n);
}

// L1 distance between two distributions on the same carrier.
double l1_between(const Distribution& a, const Distribution& b);

// Tuples evaluated by exact enumeration are capped at 10^8.
inline constexpr std::uint64_t kEnumerationBudget = 100'000'000;
// Monte Carlo block size; block b draws from Rng::stream(seed, {b}).
inline constexpr std::uint64_t kSampleBlock = 1u << 16;

// counts[g] = #{t in G^d : w(t) = g}. Prefix coordinates x_1..x_{d-1} are
// folded into fixed segments once per prefix, so each tuple costs one
// multiplication per occurrence-run of x_d. Throws budget_exceeded.
Distribution exact_distribution(const Word& w, const Group& group, unsigned workers = 1);

// i.i.d. uniform tuples. Result depends only on (seed, samples).
Distribution monte_carlo_distribution(const Word& w, const Group& group, std::uint64_t samples,
                                      std::uint64_t seed, unsigned workers = 1);

IndexSet support(const Distribution& dist);
// {g^m : g in G}
IndexSet power_image(const Group& group, std::int64_t m);

struct ImageMode {
  DistributionMode mode = DistributionMode::exact;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

struct ImageReport {
  IndexSet image;
  std::uint64_t m = 0;
  IndexSet mth_powers;
  bool covers_powers = false;
  std::optional<Index> non_power_witness;
};

// m defaults to gamma(abelianize(w)); when that is 0 an explicit m is
// required (gamma_zero otherwise). Sampled images always include {g^m}.
ImageReport image_and_power_coverage(const Word& w, const Group& group, const ImageMode& mode,
                                     std::optional<std::uint64_t> explicit_m = std::nullopt,
                                     unsigned workers = 1);
// Same, reusing an already computed distribution of w on group.
ImageReport image_report_from(const Distribution& dist, const Group& group, std::uint64_t m);

struct TrendRow {
  std::string spec;
  std::uint64_t order = 0;
  bool ok = false;
  std::optional<ErrorCode> error;
  std::string message;
  DistributionMode mode = DistributionMode::exact;
  Rational distance;
};

// One row per group, ordered by |G|; a failing group marks its row instead
// of aborting the sweep.
std::vector<TrendRow> family_trend(const Word& w, std::span<const GroupSpec> family,
                                   const ImageMode& mode, unsigned workers = 1);

// CSV with columns element_index,count,probability, preceded by '#' header
// lines carrying group, word, mode, seed and total.
void write_distribution_csv(std::ostream& out, const Distribution& dist, const Group& group,
                            const Word& w, std::optional<std::uint64_t> seed);

}  // namespace wordlab
