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

#include <limits>

#include "wordlab/error.hpp"
#include "wordlab/numeric.hpp"
#include "wordlab/rng.hpp"

namespace wordlab {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::unsupported_parameter: return "unsupported-parameter";
    case ErrorCode::malformed_cayley_table: return "malformed-cayley-table";
    case ErrorCode::group_mismatch: return "group-mismatch";
    case ErrorCode::too_large: return "too-large";
    case ErrorCode::budget_exceeded: return "budget-exceeded";
    case ErrorCode::bad_letter: return "bad-letter";
    case ErrorCode::zero_vector: return "zero-vector";
    case ErrorCode::empty_word: return "empty-word";
    case ErrorCode::rank_mismatch: return "rank-mismatch";
    case ErrorCode::zero_samples: return "zero-samples";
    case ErrorCode::gamma_zero: return "gamma-zero-without-explicit-m";
    case ErrorCode::state_cap_exceeded: return "state-cap-exceeded";
    case ErrorCode::not_generating: return "not-generating";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::not_in_catalog: return "not-in-catalog";
    case ErrorCode::not_perfect: return "not-perfect";
    case ErrorCode::lift_failed_verification: return "lift-failed-verification";
    case ErrorCode::config: return "config-error";
    case ErrorCode::io: return "io-error";
  }
  return "unknown";
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t isqrt(std::uint64_t n) {
  std::uint64_t lo = 0, hi = std::uint64_t{1} << 32;
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (mid * mid <= n)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
      return std::numeric_limits<std::uint64_t>::max();
    r *= base;
  }
  return r;
}

std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t seed) {
  auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

// splitmix64 finalizer
std::uint64_t Rng::mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::stream(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = mix(seed);
  for (std::uint64_t t : tags) h = mix(h ^ mix(t + 0x632be59bd9b4e019ULL));
  return Rng(h);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

}  // namespace wordlab
