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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wordlab/groups.hpp"

namespace wordlab {

struct GenTuple {
  std::uint64_t group_id = 0;
  std::vector<Index> elements;

  static GenTuple of(const Group& group, std::span<const Index> elements);
};

bool is_generating(const Group& group, const GenTuple& tuple);

// #{(g_1..g_d) in G^d : <g_1..g_d> = G}. The first coordinate runs over
// conjugacy-class representatives weighted by class size; later coordinates
// recurse on the subgroup generated so far, memoized by subgroup. Throws
// budget_exceeded when |G|^d > 10^8.
std::uint64_t count_generating_tuples(const Group& group, int d, unsigned workers = 1);

// Aut(G) orders for the simple groups the Hall count supports.
std::optional<std::uint64_t> catalog_aut_order(const GroupSpec& spec);

struct HallReport {
  std::string group;
  std::uint64_t order = 0;
  int d = 2;
  std::uint64_t generating_tuples = 0;
  std::uint64_t aut_order = 0;
  bool free_action = false;  // aut_order divides generating_tuples
  std::uint64_t aut_classes = 0;
  std::uint64_t mt_bound = 0;  // floor(2 sqrt |G|)
  bool consistent = false;     // mt_bound <= aut_classes
};

// Hall: for simple G, G^N is d-generated iff N <= aut_classes.
// Throws not_in_catalog.
HallReport hall_max_power(const Group& group, int d, unsigned workers = 1);

// Whether tuples t_1..t_N (each of d elements of G) generate G^N, i.e. the
// steps (t_1[i], ..., t_N[i]) generate the direct power. |G|^N <= 10^7.
bool generates_direct_power(const GroupPtr& group, std::span<const GenTuple> tuples);

struct LiftResult {
  GenTuple lifted;
  bool quotient_generated = false;
};

// Coset representatives in `group` of a tuple of `quotient` (which must have
// been built from `group` by quotient_by_center). When the tuple generates
// the quotient, the lift is verified to generate `group`; failure throws
// lift_failed_verification. Throws not_perfect when `group` is not perfect.
LiftResult lift_generators(const Group& group, const Group& quotient, const GenTuple& tuple);

}  // namespace wordlab
