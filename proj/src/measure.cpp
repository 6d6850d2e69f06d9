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

#include "wordlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <ostream>
#include <thread>

#include "wordlab/rng.hpp"

namespace wordlab {

namespace {

// Splits [0, count) into `workers` contiguous ranges and runs fn(begin, end,
// counts) on each with a private count array; merging is exact addition, so
// the result is independent of the worker count.
template <class Fn>
std::vector<std::uint64_t> parallel_counts(std::uint64_t count, std::uint64_t bins, unsigned workers,
                                           Fn fn) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::uint64_t>(count, 1))));
  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(bins, 0));
  if (workers == 1) {
    fn(0, count, partial[0]);
    return std::move(partial[0]);
  }
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = count * w / workers, end = count * (w + 1) / workers;
    threads.emplace_back([&, w, begin, end] { fn(begin, end, partial[w]); });
  }
  for (auto& t : threads) t.join();
  for (unsigned w = 1; w < workers; ++w)
    for (std::uint64_t i = 0; i < bins; ++i) partial[0][i] += partial[w][i];
  return std::move(partial[0]);
}

// A word split around its occurrences of the last generator:
// segment_0 x^{e_1} segment_1 ... x^{e_k} segment_k.
struct SplitWord {
  std::vector<std::vector<Letter>> segments;
  std::vector<std::int64_t> exponents;
};

SplitWord split_on_last(const std::vector<Letter>& letters, int rank) {
  SplitWord s;
  s.segments.emplace_back();
  for (std::size_t i = 0; i < letters.size();) {
    if (std::abs(letters[i]) != rank) {
      s.segments.back().push_back(letters[i]);
      ++i;
      continue;
    }
    std::int64_t e = 0;
    while (i < letters.size() && std::abs(letters[i]) == rank) {
      e += letters[i] > 0 ? 1 : -1;
      ++i;
    }
    s.exponents.push_back(e);
    s.segments.emplace_back();
  }
  return s;
}

}  // namespace

double l1_between(const Distribution& a, const Distribution& b) {
  if (a.counts.size() != b.counts.size())
    throw Error(ErrorCode::group_mismatch, "distributions live on different carriers");
  double s = 0;
  for (std::size_t i = 0; i < a.counts.size(); ++i)
    s += std::abs(static_cast<double>(a.counts[i]) / static_cast<double>(a.total) -
                  static_cast<double>(b.counts[i]) / static_cast<double>(b.total));
  return s;
}

Distribution exact_distribution(const Word& w, const Group& group, unsigned workers) {
  const std::uint64_t n = group.order();
  const int d = w.rank();
  const std::uint64_t tuples = checked_pow(n, static_cast<unsigned>(d));
  if (tuples > kEnumerationBudget)
    throw Error(ErrorCode::budget_exceeded,
                group.name() + "^" + std::to_string(d) + " has " +
                    (tuples == UINT64_MAX ? std::string("too many") : std::to_string(tuples)) +
                    " tuples; exact enumeration is capped at 10^8");
  const SplitWord split = split_on_last(w.letters(), d);
  // pow_tables[j][h] = h^{e_j}
  std::map<std::int64_t, std::vector<Index>> by_exponent;
  for (std::int64_t e : split.exponents) {
    auto& table = by_exponent[e];
    if (!table.empty()) continue;
    table.resize(n);
    for (std::uint64_t h = 0; h < n; ++h) table[h] = group.pow(static_cast<Index>(h), e);
  }
  std::vector<const Index*> pow_tables;
  for (std::int64_t e : split.exponents) pow_tables.push_back(by_exponent[e].data());

  const std::uint64_t prefixes = tuples / n;
  const std::size_t k = split.exponents.size();
  auto work = [&](std::uint64_t begin, std::uint64_t end, std::vector<std::uint64_t>& counts) {
    std::vector<Index> tuple(static_cast<std::size_t>(d), 0);
    std::vector<Index> fixed(k + 1);
    for (std::uint64_t prefix = begin; prefix < end; ++prefix) {
      std::uint64_t x = prefix;
      for (int i = 0; i < d - 1; ++i) {
        tuple[static_cast<std::size_t>(i)] = static_cast<Index>(x % n);
        x /= n;
      }
      for (std::size_t j = 0; j <= k; ++j) fixed[j] = evaluate_indices(split.segments[j], group, tuple);
      if (k == 0) {
        counts[fixed[0]] += n;
        continue;
      }
      for (std::uint64_t h = 0; h < n; ++h) {
        Index acc = fixed[0];
        for (std::size_t j = 0; j < k; ++j) {
          acc = group.mul(acc, pow_tables[j][h]);
          if (fixed[j + 1] != Group::identity()) acc = group.mul(acc, fixed[j + 1]);
        }
        ++counts[acc];
      }
    }
  };
  Distribution dist;
  dist.group_id = group.id();
  dist.counts = parallel_counts(prefixes, n, workers, work);
  dist.total = tuples;
  dist.mode = DistributionMode::exact;
  return dist;
}

Distribution monte_carlo_distribution(const Word& w, const Group& group, std::uint64_t samples,
                                      std::uint64_t seed, unsigned workers) {
  if (samples == 0) throw Error(ErrorCode::zero_samples, "Monte Carlo needs at least one sample");
  const std::uint64_t n = group.order();
  const auto d = static_cast<std::size_t>(w.rank());
  const std::uint64_t blocks = (samples + kSampleBlock - 1) / kSampleBlock;
  auto work = [&](std::uint64_t begin, std::uint64_t end, std::vector<std::uint64_t>& counts) {
    std::vector<Index> tuple(d);
    for (std::uint64_t b = begin; b < end; ++b) {
      Rng rng = Rng::stream(seed, {b});
      const std::uint64_t in_block = std::min(kSampleBlock, samples - b * kSampleBlock);
      for (std::uint64_t s = 0; s < in_block; ++s) {
        for (auto& t : tuple) t = static_cast<Index>(rng.below(n));
        ++counts[evaluate_indices(w.letters(), group, tuple)];
      }
    }
  };
  Distribution dist;
  dist.group_id = group.id();
  dist.counts = parallel_counts(blocks, n, workers, work);
  dist.total = samples;
  dist.mode = DistributionMode::sampled;
  return dist;
}

IndexSet support(const Distribution& dist) {
  IndexSet s;
  for (std::size_t i = 0; i < dist.counts.size(); ++i)
    if (dist.counts[i] != 0) s.push_back(static_cast<Index>(i));
  return s;
}

IndexSet power_image(const Group& group, std::int64_t m) {
  std::vector<char> hit(group.order(), 0);
  for (std::uint64_t g = 0; g < group.order(); ++g) hit[group.pow(static_cast<Index>(g), m)] = 1;
  IndexSet out;
  for (std::uint64_t g = 0; g < group.order(); ++g)
    if (hit[g]) out.push_back(static_cast<Index>(g));
  return out;
}

ImageReport image_report_from(const Distribution& dist, const Group& group, std::uint64_t m) {
  if (dist.group_id != group.id())
    throw Error(ErrorCode::group_mismatch, "distribution does not belong to " + group.name());
  ImageReport r;
  r.m = m;
  r.mth_powers = power_image(group, static_cast<std::int64_t>(m));
  r.image = support(dist);
  if (dist.mode == DistributionMode::sampled) {
    IndexSet merged;
    std::set_union(r.image.begin(), r.image.end(), r.mth_powers.begin(), r.mth_powers.end(),
                   std::back_inserter(merged));
    r.image = std::move(merged);
  }
  r.covers_powers = std::includes(r.image.begin(), r.image.end(), r.mth_powers.begin(), r.mth_powers.end());
  for (Index x : r.image)
    if (!contains(r.mth_powers, x)) {
      r.non_power_witness = x;
      break;
    }
  return r;
}

ImageReport image_and_power_coverage(const Word& w, const Group& group, const ImageMode& mode,
                                     std::optional<std::uint64_t> explicit_m, unsigned workers) {
  std::uint64_t m = gamma(abelianize(w));
  if (m == 0) {
    if (!explicit_m || *explicit_m == 0)
      throw Error(ErrorCode::gamma_zero, "gamma of the word is 0; pass an explicit m");
    m = *explicit_m;
  } else if (explicit_m) {
    m = *explicit_m;
  }
  const Distribution dist = mode.mode == DistributionMode::exact
                                ? exact_distribution(w, group, workers)
                                : monte_carlo_distribution(w, group, mode.samples, mode.seed, workers);
  return image_report_from(dist, group, m);
}

std::vector<TrendRow> family_trend(const Word& w, std::span<const GroupSpec> family,
                                   const ImageMode& mode, unsigned workers) {
  if (family.empty()) throw Error(ErrorCode::invalid_argument, "family_trend needs at least one group");
  std::vector<TrendRow> rows;
  for (const GroupSpec& spec : family) {
    TrendRow row;
    row.spec = spec.str();
    row.mode = mode.mode;
    try {
      GroupPtr g = construct_group(spec);
      row.order = g->order();
      const Distribution dist =
          mode.mode == DistributionMode::exact
              ? exact_distribution(w, *g, workers)
              : monte_carlo_distribution(w, *g, mode.samples, mode.seed, workers);
      row.distance = l1_uniform_distance(dist);
      row.ok = true;
    } catch (const Error& e) {
      row.error = e.code();
      row.message = e.what();
    }
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const TrendRow& a, const TrendRow& b) { return a.order < b.order; });
  return rows;
}

void write_distribution_csv(std::ostream& out, const Distribution& dist, const Group& group,
                            const Word& w, std::optional<std::uint64_t> seed) {
  out << "# group: " << group.name() << '\n';
  out << "# word: " << w.str() << '\n';
  out << "# mode: " << (dist.mode == DistributionMode::exact ? "exact" : "sampled") << '\n';
  out << "# seed: " << (seed ? std::to_string(*seed) : std::string("none")) << '\n';
  out << "# total: " << dist.total << '\n';
  out << "element_index,count,probability\n";
  char buf[64];
  for (std::size_t i = 0; i < dist.counts.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g",
                  static_cast<double>(dist.counts[i]) / static_cast<double>(dist.total));
    out << i << ',' << dist.counts[i] << ',' << buf << '\n';
  }
}

}  // namespace wordlab
