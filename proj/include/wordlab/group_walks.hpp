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
#include <vector>

#include "wordlab/groups.hpp"
#include "wordlab/measure.hpp"
#include "wordlab/numeric.hpp"
#include "wordlab/rng.hpp"

namespace wordlab {

// Step measure on a group: each step has probability weight / weight_sum().
// Steps may repeat (multiset) and need not be closed under inverses.
struct StepSet {
  std::uint64_t group_id = 0;
  std::vector<Index> steps;
  std::vector<std::uint64_t> weights;

  static StepSet uniform(const Group& group, std::span<const Index> steps);
  static StepSet weighted(const Group& group, std::span<const Index> steps,
                          std::span<const std::uint64_t> weights);
  std::uint64_t weight_sum() const;
};

// Homomorphism G -> Z/c (c > 1) sending every step to 1, given as the residue
// of each carrier element.
struct CyclicObstruction {
  std::uint64_t modulus = 0;
  std::vector<std::uint32_t> residues;

  std::uint64_t digest() const;
};

// With A = G/[G,G] and D the span of differences of step images, returns the
// labeling of G by G/K ~ A/D (K the preimage of D) when that quotient is
// nontrivial. Throws not_generating if the steps do not generate G.
std::optional<CyclicObstruction> cyclic_obstruction(const Group& group, const StepSet& steps);

// Re-checks a witness: constant 1 on the steps and additive on `trials`
// random products.
bool verify_obstruction(const Group& group, const StepSet& steps, const CyclicObstruction& witness,
                        std::uint64_t trials, Rng& rng);

// Law of S_1...S_n as integer counts over weight_sum()^n.
WalkLaw exact_walk_law(const Group& group, const StepSet& steps, std::uint64_t n);

// L1 distances to uniform after 0, 1, ..., n_max steps.
std::vector<Rational> mixing_profile(const Group& group, const StepSet& steps, std::uint64_t n_max);

// First n <= n_max with distance < epsilon, if any.
std::optional<std::uint64_t> mixing_time(const Group& group, const StepSet& steps,
                                         const Rational& epsilon, std::uint64_t n_max);

void write_mixing_profile_csv(std::ostream& out, std::span<const Rational> profile);

struct PowerWalkReport {
  std::size_t factors = 0;  // N
  std::size_t rank = 0;     // d
  std::uint64_t steps = 0;  // n
  std::uint64_t samples = 0;
  // Per coordinate j of G^N.
  std::vector<double> marginal_discrepancy;  // L1(word sampler, walk sampler)
  std::vector<double> word_marginal_to_uniform;
  std::vector<double> walk_marginal_to_uniform;
  // Joint statistics when |G|^N <= kJointCap.
  bool joint_sampled = false;
  double joint_discrepancy = 0;
  double word_joint_to_uniform = 0;
  double walk_joint_to_uniform = 0;
  // Closure of the step set in G^N, when |G|^N <= 10^7.
  std::optional<bool> generates_power;
  // Exact L1 distance to uniform of the n-step walk law on G^N, when
  // |G|^N <= 20000.
  std::optional<Rational> exact_walk_distance;

  static constexpr std::uint64_t kJointCap = 1'000'000;
};

// tuples[j] is the d-tuple g_j = (g_{1j}, ..., g_{dj}); step i of the walk on
// G^N is (g_{i1}, ..., g_{iN}). Compares (w(g_1), ..., w(g_N)) for random
// positive words w of length n against the n-step walk, each from its own
// stream family (seed, {0, b}) and (seed, {1, b}).
PowerWalkReport power_walk_equivalence(const GroupPtr& group,
                                       std::span<const std::vector<Index>> tuples, std::uint64_t n,
                                       std::uint64_t samples, std::uint64_t seed);

}  // namespace wordlab
