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

#include "wordlab/generation.hpp"

#include <algorithm>
#include <map>
#include <thread>

#include "wordlab/error.hpp"
#include "wordlab/numeric.hpp"

namespace wordlab {

GenTuple GenTuple::of(const Group& group, std::span<const Index> elements) {
  for (Index x : elements)
    if (x >= group.order()) throw Error(ErrorCode::invalid_argument, "tuple entry outside the group");
  return GenTuple{group.id(), std::vector<Index>(elements.begin(), elements.end())};
}

namespace {

void check_tuple(const Group& group, const GenTuple& t) {
  if (t.group_id != group.id())
    throw Error(ErrorCode::group_mismatch, "tuple does not belong to " + group.name());
}

// Subgroup generated by `base` (a subgroup, as a membership mask plus element
// list) and one extra element. Stops early once more than half the group is
// reached, since that forces the whole group.
struct Closure {
  std::vector<Index> elements;
  bool full = false;
};

Closure extend(const Group& group, const std::vector<Index>& base_gens, Index extra,
               std::vector<char>& mask) {
  const std::uint64_t n = group.order();
  std::fill(mask.begin(), mask.end(), 0);
  std::vector<Index> gens(base_gens);
  gens.push_back(extra);
  Closure c;
  c.elements.push_back(Group::identity());
  mask[0] = 1;
  for (Index g : gens)
    if (!mask[g]) {
      mask[g] = 1;
      c.elements.push_back(g);
    }
  for (std::size_t i = 0; i < c.elements.size(); ++i) {
    for (Index g : gens) {
      const Index y = group.mul(c.elements[i], g);
      if (!mask[y]) {
        mask[y] = 1;
        c.elements.push_back(y);
        if (2 * c.elements.size() > n) {
          c.full = true;
          return c;
        }
      }
    }
  }
  c.full = c.elements.size() == n;
  std::sort(c.elements.begin(), c.elements.end());
  return c;
}

class GeneratingCounter {
 public:
  GeneratingCounter(const Group& group) : group_(group), mask_(group.order(), 0) {}

  // Completions of a prefix generating `sub` (given with its generators) by
  // `remaining` more elements such that the whole tuple generates G.
  std::uint64_t count(const std::vector<Index>& sub_elems, const std::vector<Index>& sub_gens,
                      bool full, int remaining) {
    const std::uint64_t n = group_.order();
    if (full) return checked_pow(n, static_cast<unsigned>(remaining));
    if (remaining == 0) return 0;
    const auto key = std::make_pair(sub_elems, remaining);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::uint64_t total = 0;
    std::uint64_t stay = 0;  // extra elements already inside sub
    std::vector<char> inside(n, 0);
    for (Index x : sub_elems) inside[x] = 1;
    // Elements of the same left coset x*H generate the same subgroup with H.
    std::vector<char> done(n, 0);
    for (std::uint64_t x = 0; x < n; ++x) {
      if (inside[x]) {
        ++stay;
        continue;
      }
      if (done[x]) continue;
      const Closure c = extend(group_, sub_gens, static_cast<Index>(x), mask_);
      std::vector<Index> gens(sub_gens);
      gens.push_back(static_cast<Index>(x));
      const std::uint64_t per = count(c.elements, gens, c.full, remaining - 1);
      std::uint64_t members = 0;
      for (Index h : sub_elems) {
        const Index y = group_.mul(static_cast<Index>(x), h);
        if (!done[y]) {
          done[y] = 1;
          ++members;
        }
      }
      total += members * per;
    }
    if (stay != 0) total += stay * count(sub_elems, sub_gens, false, remaining - 1);
    memo_.emplace(key, total);
    return total;
  }

 private:
  const Group& group_;
  std::vector<char> mask_;
  std::map<std::pair<std::vector<Index>, int>, std::uint64_t> memo_;
};

}  // namespace

bool is_generating(const Group& group, const GenTuple& tuple) {
  check_tuple(group, tuple);
  return closure(group, tuple.elements).size() == group.order();
}

std::uint64_t count_generating_tuples(const Group& group, int d, unsigned workers) {
  if (d < 1) throw Error(ErrorCode::invalid_argument, "d must be at least 1");
  const std::uint64_t n = group.order();
  const std::uint64_t tuples = checked_pow(n, static_cast<unsigned>(d));
  if (tuples > 100'000'000)
    throw Error(ErrorCode::budget_exceeded, "counting generating tuples is capped at 10^8 tuples");
  if (n == 1) return 1;
  // First coordinate: one representative per conjugacy class.
  std::vector<std::pair<Index, std::uint64_t>> firsts;
  if (n <= Group::kStructureCap) {
    for (const auto& cls : conjugacy_classes(group)) firsts.emplace_back(cls.front(), cls.size());
  } else {
    for (std::uint64_t x = 0; x < n; ++x) firsts.emplace_back(static_cast<Index>(x), 1);
  }
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(firsts.size())));
  std::vector<std::uint64_t> partial(workers, 0);
  auto work = [&](unsigned w) {
    GeneratingCounter counter(group);
    std::vector<char> mask(n, 0);
    for (std::size_t i = w; i < firsts.size(); i += workers) {
      const auto [x, weight] = firsts[i];
      const Closure c = extend(group, {}, x, mask);
      partial[w] += weight * counter.count(c.elements, {x}, c.full, d - 1);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  std::uint64_t total = 0;
  for (std::uint64_t p : partial) total += p;
  return total;
}

std::optional<std::uint64_t> catalog_aut_order(const GroupSpec& spec) {
  if (spec.kind == GroupKind::alternating && spec.parameter == 5) return 120;
  if (spec.kind == GroupKind::alternating && spec.parameter == 6) return 1440;
  if (spec.kind == GroupKind::psl2 && spec.parameter == 7) return 336;
  if (spec.kind == GroupKind::psl2 && spec.parameter == 11) return 1320;
  if (spec.kind == GroupKind::psl2 && spec.parameter == 13) return 2184;
  return std::nullopt;
}

HallReport hall_max_power(const Group& group, int d, unsigned workers) {
  if (d < 2) throw Error(ErrorCode::invalid_argument, "Hall counts need d >= 2");
  std::optional<std::uint64_t> aut;
  if (group.spec()) aut = catalog_aut_order(*group.spec());
  if (!aut)
    throw Error(ErrorCode::not_in_catalog,
                group.name() + " is not a catalog simple group (alternating:5, alternating:6, "
                               "psl2:7, psl2:11, psl2:13)");
  HallReport r;
  r.group = group.name();
  r.order = group.order();
  r.d = d;
  r.generating_tuples = count_generating_tuples(group, d, workers);
  r.aut_order = *aut;
  r.free_action = r.generating_tuples % r.aut_order == 0;
  r.aut_classes = r.generating_tuples / r.aut_order;
  r.mt_bound = isqrt(4 * r.order);
  r.consistent = r.mt_bound <= r.aut_classes;
  return r;
}

bool generates_direct_power(const GroupPtr& group, std::span<const GenTuple> tuples) {
  if (tuples.empty()) throw Error(ErrorCode::dimension_mismatch, "need at least one tuple");
  const std::size_t d = tuples.front().elements.size();
  for (const auto& t : tuples) {
    check_tuple(*group, t);
    if (t.elements.size() != d)
      throw Error(ErrorCode::dimension_mismatch, "all tuples must have the same length");
  }
  GroupPtr power = direct_power(group, static_cast<unsigned>(tuples.size()));
  std::vector<Index> gens;
  std::vector<Index> comps(tuples.size());
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < tuples.size(); ++j) comps[j] = tuples[j].elements[i];
    gens.push_back(power->power_info()->compose(comps));
  }
  return closure(*power, gens).size() == power->order();
}

LiftResult lift_generators(const Group& group, const Group& quotient, const GenTuple& tuple) {
  check_tuple(quotient, tuple);
  const QuotientInfo* info = quotient.quotient_info();
  if (info == nullptr || info->parent->id() != group.id())
    throw Error(ErrorCode::group_mismatch, quotient.name() + " is not a quotient of " + group.name());
  if (!is_perfect(group)) throw Error(ErrorCode::not_perfect, group.name() + " is not perfect");
  LiftResult r;
  r.lifted.group_id = group.id();
  for (Index q : tuple.elements) r.lifted.elements.push_back(info->representative[q]);
  r.quotient_generated = is_generating(quotient, tuple);
  if (r.quotient_generated && !is_generating(group, r.lifted))
    throw Error(ErrorCode::lift_failed_verification,
                "lifted generators do not generate " + group.name());
  return r;
}

}  // namespace wordlab
