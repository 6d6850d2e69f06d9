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
#include <span>
#include <vector>

#include "wordlab/numeric.hpp"
#include "wordlab/rng.hpp"

namespace wordlab {

using LatticeVector = std::vector<std::int64_t>;

// Sum of n i.i.d. steps uniform on {+-e_1, ..., +-e_d}. A draw r in [0, 2d)
// is the step (r % 2 == 0 ? +1 : -1) * e_{r/2}.
LatticeVector simulate_walk(int d, std::uint64_t n, Rng& rng);

// Law of the walk endpoint reduced mod p^k. States are mixed-radix encodings
// of (Z/p^k)^d with coordinate 0 least significant.
struct ModLaw {
  static constexpr std::uint64_t kStateCap = 1'000'000;
  // Counts are exact big integers up to this many states.
  static constexpr std::uint64_t kExactStateCap = 10'000;

  int d = 2;
  std::uint64_t p = 2;
  unsigned k = 1;
  std::uint64_t n = 0;
  std::uint64_t modulus = 2;
  bool exact = false;
  std::vector<BigInt> counts;  // exact only; sum is denominator
  BigInt denominator;          // (2d)^n
  std::vector<double> probabilities;

  std::uint64_t state_count() const { return probabilities.size(); }
  std::uint64_t state_of(std::span<const std::int64_t> v) const;
  std::vector<std::uint64_t> coordinates(std::uint64_t state) const;
  double probability(std::uint64_t state) const { return probabilities[state]; }
  Rational exact_probability(std::uint64_t state) const;
  // Pr[X_n in p^k Z^d]
  double zero_probability() const { return probabilities[0]; }
  // Marginal law mod p^j for j <= k.
  ModLaw reduce_to(unsigned j) const;
};

// n-fold convolution of the uniform step measure on the 2d reduced steps.
// Throws state_cap_exceeded when p^{kd} > 10^6.
enum class ModLawArithmetic {
  automatic,  // exact counts up to kExactStateCap states, doubles beyond
  floating,
};

ModLaw exact_mod_law(int d, std::uint64_t p, unsigned k, std::uint64_t n,
                     ModLawArithmetic arithmetic = ModLawArithmetic::automatic);

struct GcdTailEstimate {
  int d = 2;
  std::uint64_t n = 0, M = 0, samples = 0;
  std::uint64_t above_m = 0;  // gamma > M
  std::uint64_t zero = 0;     // gamma == 0
  double p_above_m = 0, p_zero = 0, p_bad = 0;  // bad: zero or above M
  // 95% normal-approximation half-widths.
  double hw_above_m = 0, hw_zero = 0, hw_bad = 0;
  // For each prime p <= M: samples whose endpoint lies in p Z^d.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> prime_hits;
};

// Monte Carlo over n-step walks; block b of 4096 walks uses
// Rng::stream(seed, {b}), so results depend only on (seed, samples).
GcdTailEstimate gcd_tail_estimate(int d, std::uint64_t n, std::uint64_t M, std::uint64_t samples,
                                  std::uint64_t seed, unsigned workers = 1);

// Pr[m | X_n coordinatewise], summing over how many steps land on each axis
// and, per axis, over binomial endpoints divisible by m. Floating point.
double divisibility_probability(int d, std::uint64_t n, std::uint64_t m);

struct PrimeValuationLaw {
  std::uint64_t p = 2;
  // divisible[e] = Pr[p^e | X_n] for e = 0..K, K the least exponent with p^K > M.
  std::vector<double> divisible;
};

// Treats the p-adic valuations of gcd(X_n) as independent across primes.
struct GcdTailPrediction {
  double p_bad = 0;  // predicted Pr[gamma = 0 or gamma > M]
  std::vector<PrimeValuationLaw> primes;
};

GcdTailPrediction gcd_tail_prediction(int d, std::uint64_t n, std::uint64_t M);

// CSV: one column per coordinate, then probability.
void write_mod_law_csv(std::ostream& out, const ModLaw& law);

}  // namespace wordlab
