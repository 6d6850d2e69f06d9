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

#include "wordlab/group_walks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "wordlab/error.hpp"
#include "wordlab/words.hpp"

namespace wordlab {

StepSet StepSet::uniform(const Group& group, std::span<const Index> steps) {
  std::vector<std::uint64_t> ones(steps.size(), 1);
  return weighted(group, steps, ones);
}

StepSet StepSet::weighted(const Group& group, std::span<const Index> steps,
                          std::span<const std::uint64_t> weights) {
  if (steps.empty()) throw Error(ErrorCode::invalid_argument, "step set must be nonempty");
  if (steps.size() != weights.size())
    throw Error(ErrorCode::invalid_argument, "one weight per step required");
  for (Index s : steps)
    if (s >= group.order()) throw Error(ErrorCode::invalid_argument, "step outside the group");
  for (std::uint64_t w : weights)
    if (w == 0) throw Error(ErrorCode::invalid_argument, "step weights must be positive");
  StepSet set;
  set.group_id = group.id();
  set.steps.assign(steps.begin(), steps.end());
  set.weights.assign(weights.begin(), weights.end());
  return set;
}

std::uint64_t StepSet::weight_sum() const {
  std::uint64_t s = 0;
  for (std::uint64_t w : weights) s += w;
  return s;
}

std::uint64_t CyclicObstruction::digest() const {
  return fnv1a(residues.data(), residues.size() * sizeof(std::uint32_t), fnv1a(&modulus, sizeof modulus));
}

namespace {

void check_steps(const Group& group, const StepSet& steps) {
  if (steps.group_id != group.id())
    throw Error(ErrorCode::group_mismatch, "step set does not belong to " + group.name());
}

}  // namespace

std::optional<CyclicObstruction> cyclic_obstruction(const Group& group, const StepSet& steps) {
  check_steps(group, steps);
  if (closure(group, steps.steps).size() != group.order())
    throw Error(ErrorCode::not_generating, "steps do not generate " + group.name());
  const IndexSet derived = commutator_subgroup(group);
  std::vector<Index> kernel_gens(derived.begin(), derived.end());
  const Index s0 = steps.steps.front();
  const Index s0_inv = group.inv(s0);
  for (Index s : steps.steps) kernel_gens.push_back(group.mul(s0_inv, s));
  const IndexSet kernel = closure(group, kernel_gens);
  const std::uint64_t c = group.order() / kernel.size();
  if (c == 1) return std::nullopt;
  CyclicObstruction ob;
  ob.modulus = c;
  ob.residues.assign(group.order(), 0);
  // G/K is cyclic, generated by s0 K; the coset s0^r K gets residue r.
  Index coset_rep = Group::identity();
  for (std::uint64_t r = 0; r < c; ++r) {
    for (Index k : kernel) ob.residues[group.mul(coset_rep, k)] = static_cast<std::uint32_t>(r);
    coset_rep = group.mul(coset_rep, s0);
  }
  return ob;
}

bool verify_obstruction(const Group& group, const StepSet& steps, const CyclicObstruction& witness,
                        std::uint64_t trials, Rng& rng) {
  check_steps(group, steps);
  if (witness.modulus < 2 || witness.residues.size() != group.order()) return false;
  for (Index s : steps.steps)
    if (witness.residues[s] != 1 % witness.modulus) return false;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto a = static_cast<Index>(rng.below(group.order()));
    const auto b = static_cast<Index>(rng.below(group.order()));
    if ((witness.residues[a] + witness.residues[b]) % witness.modulus !=
        witness.residues[group.mul(a, b)])
      return false;
  }
  return true;
}

namespace {

void require_walk_cap(const Group& group) {
  if (group.order() > Group::kStructureCap)
    throw Error(ErrorCode::too_large, "exact walk laws need |G| <= 20000");
}

// law'[h g] += w_h law[g]
void walk_step(const Group& group, const StepSet& steps, const std::vector<BigInt>& cur,
               std::vector<BigInt>& next) {
  for (auto& x : next) x = 0;
  for (std::uint64_t g = 0; g < cur.size(); ++g) {
    if (cur[g].is_zero()) continue;
    for (std::size_t i = 0; i < steps.steps.size(); ++i) {
      const Index target = group.mul(steps.steps[i], static_cast<Index>(g));
      if (steps.weights[i] == 1)
        next[target] += cur[g];
      else
        next[target] += cur[g] * steps.weights[i];
    }
  }
}

}  // namespace

WalkLaw exact_walk_law(const Group& group, const StepSet& steps, std::uint64_t n) {
  check_steps(group, steps);
  require_walk_cap(group);
  std::vector<BigInt> cur(group.order(), 0), next(group.order(), 0);
  cur[0] = 1;
  for (std::uint64_t t = 0; t < n; ++t) {
    walk_step(group, steps, cur, next);
    cur.swap(next);
  }
  WalkLaw law;
  law.group_id = group.id();
  law.counts = std::move(cur);
  law.total = boost::multiprecision::pow(BigInt(steps.weight_sum()), static_cast<unsigned>(n));
  law.mode = DistributionMode::exact;
  return law;
}

std::vector<Rational> mixing_profile(const Group& group, const StepSet& steps, std::uint64_t n_max) {
  check_steps(group, steps);
  require_walk_cap(group);
  WalkLaw law;
  law.group_id = group.id();
  law.counts.assign(group.order(), 0);
  law.counts[0] = 1;
  law.total = 1;
  std::vector<BigInt> next(group.order(), 0);
  std::vector<Rational> profile;
  profile.reserve(n_max + 1);
  profile.push_back(l1_uniform_distance(law));
  const BigInt w = steps.weight_sum();
  for (std::uint64_t t = 0; t < n_max; ++t) {
    walk_step(group, steps, law.counts, next);
    law.counts.swap(next);
    law.total *= w;
    profile.push_back(l1_uniform_distance(law));
  }
  return profile;
}

std::optional<std::uint64_t> mixing_time(const Group& group, const StepSet& steps,
                                         const Rational& epsilon, std::uint64_t n_max) {
  check_steps(group, steps);
  require_walk_cap(group);
  WalkLaw law;
  law.group_id = group.id();
  law.counts.assign(group.order(), 0);
  law.counts[0] = 1;
  law.total = 1;
  std::vector<BigInt> next(group.order(), 0);
  const BigInt w = steps.weight_sum();
  for (std::uint64_t t = 0;; ++t) {
    if (l1_uniform_distance(law) < epsilon) return t;
    if (t == n_max) return std::nullopt;
    walk_step(group, steps, law.counts, next);
    law.counts.swap(next);
    law.total *= w;
  }
}

void write_mixing_profile_csv(std::ostream& out, std::span<const Rational> profile) {
  out << "n,l1_distance\n";
  char buf[64];
  for (std::size_t i = 0; i < profile.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", to_double(profile[i]));
    out << i << ',' << buf << '\n';
  }
}

PowerWalkReport power_walk_equivalence(const GroupPtr& group,
                                       std::span<const std::vector<Index>> tuples, std::uint64_t n,
                                       std::uint64_t samples, std::uint64_t seed) {
  if (tuples.empty()) throw Error(ErrorCode::dimension_mismatch, "need at least one tuple");
  if (samples == 0) throw Error(ErrorCode::zero_samples, "need at least one sample");
  const std::size_t N = tuples.size();
  const std::size_t d = tuples.front().size();
  if (d == 0) throw Error(ErrorCode::dimension_mismatch, "tuples must be nonempty");
  for (const auto& t : tuples) {
    if (t.size() != d) throw Error(ErrorCode::dimension_mismatch, "all tuples must have the same length");
    for (Index x : t)
      if (x >= group->order()) throw Error(ErrorCode::invalid_argument, "tuple entry outside the group");
  }
  const Group& G = *group;
  const std::uint64_t order = G.order();
  const std::uint64_t joint_states = checked_pow(order, static_cast<unsigned>(N));

  PowerWalkReport rep;
  rep.factors = N;
  rep.rank = d;
  rep.steps = n;
  rep.samples = samples;
  rep.joint_sampled = joint_states <= PowerWalkReport::kJointCap;

  // Step i of the walk, one component per coordinate j.
  std::vector<std::vector<Index>> step_components(d, std::vector<Index>(N));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < N; ++j) step_components[i][j] = tuples[j][i];

  auto encode = [&](const std::vector<Index>& comps) {
    std::uint64_t s = 0, scale = 1;
    for (Index c : comps) {
      s += scale * c;
      scale *= order;
    }
    return s;
  };

  std::vector<Distribution> word_marg(N), walk_marg(N);
  for (std::size_t j = 0; j < N; ++j) {
    for (auto* m : {&word_marg[j], &walk_marg[j]}) {
      m->group_id = G.id();
      m->counts.assign(order, 0);
      m->total = samples;
      m->mode = DistributionMode::sampled;
    }
  }
  Distribution word_joint, walk_joint;
  if (rep.joint_sampled) {
    word_joint.counts.assign(joint_states, 0);
    walk_joint.counts.assign(joint_states, 0);
    word_joint.total = walk_joint.total = samples;
    word_joint.mode = walk_joint.mode = DistributionMode::sampled;
  }

  // Word side: sample w, evaluate at each tuple.
  std::vector<Letter> letters(n);
  std::vector<Index> value(N);
  const std::uint64_t blocks = (samples + kSampleBlock - 1) / kSampleBlock;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    Rng rng = Rng::stream(seed, {0, b});
    const std::uint64_t in_block = std::min(kSampleBlock, samples - b * kSampleBlock);
    for (std::uint64_t s = 0; s < in_block; ++s) {
      for (auto& x : letters) x = static_cast<Letter>(rng.below(d) + 1);
      for (std::size_t j = 0; j < N; ++j) {
        value[j] = evaluate_indices(letters, G, tuples[j]);
        ++word_marg[j].counts[value[j]];
      }
      if (rep.joint_sampled) ++word_joint.counts[encode(value)];
    }
  }
  // Walk side: multiply N-component steps.
  std::vector<Index> state(N);
  for (std::uint64_t b = 0; b < blocks; ++b) {
    Rng rng = Rng::stream(seed, {1, b});
    const std::uint64_t in_block = std::min(kSampleBlock, samples - b * kSampleBlock);
    for (std::uint64_t s = 0; s < in_block; ++s) {
      std::fill(state.begin(), state.end(), Group::identity());
      for (std::uint64_t t = 0; t < n; ++t) {
        const auto& step = step_components[rng.below(d)];
        for (std::size_t j = 0; j < N; ++j) state[j] = G.mul(state[j], step[j]);
      }
      for (std::size_t j = 0; j < N; ++j) ++walk_marg[j].counts[state[j]];
      if (rep.joint_sampled) ++walk_joint.counts[encode(state)];
    }
  }
  auto to_double_l1 = [](const Distribution& dist) { return to_double(l1_uniform_distance(dist)); };
  for (std::size_t j = 0; j < N; ++j) {
    rep.marginal_discrepancy.push_back(l1_between(word_marg[j], walk_marg[j]));
    rep.word_marginal_to_uniform.push_back(to_double_l1(word_marg[j]));
    rep.walk_marginal_to_uniform.push_back(to_double_l1(walk_marg[j]));
  }
  if (rep.joint_sampled) {
    rep.joint_discrepancy = l1_between(word_joint, walk_joint);
    rep.word_joint_to_uniform = to_double_l1(word_joint);
    rep.walk_joint_to_uniform = to_double_l1(walk_joint);
  }
  if (joint_states <= Group::kCarrierCap) {
    GroupPtr power = direct_power(group, static_cast<unsigned>(N));
    std::vector<Index> gens;
    for (const auto& comps : step_components) gens.push_back(power->power_info()->compose(comps));
    rep.generates_power = closure(*power, gens).size() == power->order();
    if (power->order() <= Group::kStructureCap) {
      const StepSet s = StepSet::uniform(*power, gens);
      rep.exact_walk_distance = l1_uniform_distance(exact_walk_law(*power, s, n));
    }
  }
  return rep;
}

}  // namespace wordlab
