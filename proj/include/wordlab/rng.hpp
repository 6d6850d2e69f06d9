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
#include <initializer_list>
#include <random>

namespace wordlab {

// Seeded stream of uniform draws. Parallel work never shares an Rng: each
// unit of work derives its own stream from (seed, tags...) so results
// depend only on the seed and the unit's identity, not on scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix(seed)) {}

  // Stream for a unit of work identified by a tag path, e.g. (seed, {3, 7})
  // for cell 7 of word 3.
  static Rng stream(std::uint64_t seed, std::initializer_list<std::uint64_t> tags);

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, bound). Rejection sampling keeps draws unbiased and the
  // sequence independent of the standard library's distribution code.
  std::uint64_t below(std::uint64_t bound);

  // Uniform on [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  static std::uint64_t mix(std::uint64_t x);

 private:
  std::mt19937_64 engine_;
};

}  // namespace wordlab
