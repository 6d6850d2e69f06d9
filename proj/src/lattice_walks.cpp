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

#include "wordlab/lattice_walks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include "wordlab/error.hpp"
#include "wordlab/words.hpp"

namespace wordlab {

LatticeVector simulate_walk(int d, std::uint64_t n, Rng& rng) {
  if (d < 1) throw Error(ErrorCode::invalid_argument, "walk dimension must be at least 1");
  LatticeVector v(static_cast<std::size_t>(d), 0);
  const std::uint64_t choices = 2 * static_cast<std::uint64_t>(d);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t r = rng.below(choices);
    v[r / 2] += (r % 2 == 0) ? 1 : -1;
  }
  return v;
}

std::uint64_t ModLaw::state_of(std::span<const std::int64_t> v) const {
  std::uint64_t s = 0, scale = 1;
  const auto m = static_cast<std::int64_t>(modulus);
  for (std::int64_t x : v) {
    s += scale * static_cast<std::uint64_t>(((x % m) + m) % m);
    scale *= modulus;
  }
  return s;
}

std::vector<std::uint64_t> ModLaw::coordinates(std::uint64_t state) const {
  std::vector<std::uint64_t> c(static_cast<std::size_t>(d));
  for (auto& x : c) {
    x = state % modulus;
    state /= modulus;
  }
  return c;
}

Rational ModLaw::exact_probability(std::uint64_t state) const {
  if (!exact) throw Error(ErrorCode::invalid_argument, "mod law was computed in floating point");
  return Rational(counts[state], denominator);
}

namespace {

// One convolution step: next[s] = sum over the 2d steps of cur[s - step].
template <class T>
void convolve_step(const std::vector<T>& cur, std::vector<T>& next, int d, std::uint64_t m) {
  const std::uint64_t states = cur.size();
  std::fill(next.begin(), next.end(), T(0));
  std::uint64_t stride = 1;
  for (int axis = 0; axis < d; ++axis) {
    for (std::uint64_t s = 0; s < states; ++s) {
      if (cur[s] == 0) continue;
      const std::uint64_t c = (s / stride) % m;
      const std::uint64_t base = s - c * stride;
      next[base + ((c + 1) % m) * stride] += cur[s];
      next[base + ((c + m - 1) % m) * stride] += cur[s];
    }
    stride *= m;
  }
}

}  // namespace

ModLaw exact_mod_law(int d, std::uint64_t p, unsigned k, std::uint64_t n,
                     ModLawArithmetic arithmetic) {
  if (d < 1) throw Error(ErrorCode::invalid_argument, "dimension must be at least 1");
  if (!is_prime(p)) throw Error(ErrorCode::invalid_argument, "modulus base must be prime");
  if (k < 1) throw Error(ErrorCode::invalid_argument, "k must be at least 1");
  const std::uint64_t m = checked_pow(p, k);
  const std::uint64_t states = checked_pow(m, static_cast<unsigned>(d));
  if (states > ModLaw::kStateCap)
    throw Error(ErrorCode::state_cap_exceeded,
                "(Z/" + std::to_string(p) + "^" + std::to_string(k) + ")^" + std::to_string(d) +
                    " has more than 10^6 states");
  ModLaw law;
  law.d = d;
  law.p = p;
  law.k = k;
  law.n = n;
  law.modulus = m;
  law.exact = arithmetic == ModLawArithmetic::automatic && states <= ModLaw::kExactStateCap;
  law.probabilities.assign(states, 0.0);
  const unsigned steps = 2 * static_cast<unsigned>(d);
  if (law.exact) {
    std::vector<BigInt> cur(states, 0), next(states, 0);
    cur[0] = 1;
    for (std::uint64_t t = 0; t < n; ++t) {
      convolve_step(cur, next, d, m);
      cur.swap(next);
    }
    law.denominator = boost::multiprecision::pow(BigInt(steps), static_cast<unsigned>(n));
    for (std::uint64_t s = 0; s < states; ++s)
      law.probabilities[s] = Rational(cur[s], law.denominator).convert_to<double>();
    law.counts = std::move(cur);
  } else {
    std::vector<double> cur(states, 0.0), next(states, 0.0);
    cur[0] = 1.0;
    const double w = 1.0 / steps;
    for (std::uint64_t t = 0; t < n; ++t) {
      convolve_step(cur, next, d, m);
      for (double& x : next) x *= w;
      cur.swap(next);
    }
    law.probabilities = std::move(cur);
  }
  return law;
}

ModLaw ModLaw::reduce_to(unsigned j) const {
  if (j < 1 || j > k) throw Error(ErrorCode::invalid_argument, "can only reduce to 1 <= j <= k");
  ModLaw out;
  out.d = d;
  out.p = p;
  out.k = j;
  out.n = n;
  out.modulus = checked_pow(p, j);
  out.exact = exact;
  out.denominator = denominator;
  const std::uint64_t states = checked_pow(out.modulus, static_cast<unsigned>(d));
  out.probabilities.assign(states, 0.0);
  if (exact) out.counts.assign(states, 0);
  for (std::uint64_t s = 0; s < state_count(); ++s) {
    std::uint64_t t = 0, scale = 1, x = s;
    for (int i = 0; i < d; ++i) {
      t += scale * ((x % modulus) % out.modulus);
      x /= modulus;
      scale *= out.modulus;
    }
    if (exact)
      out.counts[t] += counts[s];
    else
      out.probabilities[t] += probabilities[s];
  }
  if (exact)
    for (std::uint64_t t = 0; t < states; ++t)
      out.probabilities[t] = Rational(out.counts[t], denominator).convert_to<double>();
  return out;
}

GcdTailEstimate gcd_tail_estimate(int d, std::uint64_t n, std::uint64_t M, std::uint64_t samples,
                                  std::uint64_t seed, unsigned workers) {
  if (d < 2) throw Error(ErrorCode::invalid_argument, "gcd tail needs d >= 2");
  if (M < 1) throw Error(ErrorCode::invalid_argument, "M must be at least 1");
  if (samples == 0) throw Error(ErrorCode::zero_samples, "gcd tail needs at least one sample");
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p <= M; ++p)
    if (is_prime(p)) primes.push_back(p);
  constexpr std::uint64_t kBlock = 4096;
  const std::uint64_t blocks = (samples + kBlock - 1) / kBlock;
  // Per-block tallies: above, zero, then one slot per prime.
  const std::size_t slots = 2 + primes.size();
  std::vector<std::uint64_t> tallies(blocks * slots, 0);
  auto work = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t b = begin; b < end; ++b) {
      Rng rng = Rng::stream(seed, {b});
      std::uint64_t* t = &tallies[b * slots];
      const std::uint64_t in_block = std::min(kBlock, samples - b * kBlock);
      for (std::uint64_t s = 0; s < in_block; ++s) {
        const LatticeVector x = simulate_walk(d, n, rng);
        const std::uint64_t g = gamma(x);
        if (g == 0) ++t[1];
        if (g > M) ++t[0];
        for (std::size_t i = 0; i < primes.size(); ++i)
          if (g % primes[i] == 0) ++t[2 + i];
      }
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(blocks)));
  if (workers == 1) {
    work(0, blocks);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w)
      threads.emplace_back(work, blocks * w / workers, blocks * (w + 1) / workers);
    for (auto& t : threads) t.join();
  }
  GcdTailEstimate e;
  e.d = d;
  e.n = n;
  e.M = M;
  e.samples = samples;
  std::vector<std::uint64_t> prime_totals(primes.size(), 0);
  for (std::uint64_t b = 0; b < blocks; ++b) {
    e.above_m += tallies[b * slots];
    e.zero += tallies[b * slots + 1];
    for (std::size_t i = 0; i < primes.size(); ++i) prime_totals[i] += tallies[b * slots + 2 + i];
  }
  for (std::size_t i = 0; i < primes.size(); ++i) e.prime_hits.emplace_back(primes[i], prime_totals[i]);
  const auto N = static_cast<double>(samples);
  auto hw = [&](double p) { return 1.96 * std::sqrt(p * (1 - p) / N); };
  e.p_above_m = static_cast<double>(e.above_m) / N;
  e.p_zero = static_cast<double>(e.zero) / N;
  e.p_bad = static_cast<double>(e.above_m + e.zero) / N;
  e.hw_above_m = hw(e.p_above_m);
  e.hw_zero = hw(e.p_zero);
  e.hw_bad = hw(e.p_bad);
  return e;
}

double divisibility_probability(int d, std::uint64_t n, std::uint64_t m) {
  if (d < 1) throw Error(ErrorCode::invalid_argument, "dimension must be at least 1");
  if (m < 1) throw Error(ErrorCode::invalid_argument, "modulus must be at least 1");
  if (n > 100'000) throw Error(ErrorCode::budget_exceeded, "divisibility law is capped at n = 10^5");
  std::vector<double> lfact(n + 1, 0.0);
  for (std::uint64_t i = 1; i <= n; ++i) lfact[i] = lfact[i - 1] + std::log(static_cast<double>(i));
  auto lchoose = [&](std::uint64_t a, std::uint64_t b) { return lfact[a] - lfact[b] - lfact[a - b]; };
  // q[j]: a j-step +-1 walk ends at a multiple of m.
  std::vector<double> q(n + 1, 0.0);
  const double ln2 = std::log(2.0);
  for (std::uint64_t j = 0; j <= n; ++j) {
    for (std::uint64_t k = 0; k <= j; ++k) {
      const std::int64_t end = 2 * static_cast<std::int64_t>(k) - static_cast<std::int64_t>(j);
      if (end % static_cast<std::int64_t>(m) == 0)
        q[j] += std::exp(lchoose(j, k) - static_cast<double>(j) * ln2);
    }
  }
  // r[L]: Pr[m | X] for a walk of length L on the first t axes.
  std::vector<double> r = q;
  for (int t = 2; t <= d; ++t) {
    std::vector<double> next(n + 1, 0.0);
    const double la = std::log(1.0 / t), lb = std::log(static_cast<double>(t - 1) / t);
    for (std::uint64_t len = 0; len <= n; ++len)
      for (std::uint64_t j = 0; j <= len; ++j)
        next[len] += std::exp(lchoose(len, j) + static_cast<double>(j) * la +
                              static_cast<double>(len - j) * lb) *
                     q[j] * r[len - j];
    r.swap(next);
  }
  return r[n];
}

GcdTailPrediction gcd_tail_prediction(int d, std::uint64_t n, std::uint64_t M) {
  if (d < 2) throw Error(ErrorCode::invalid_argument, "gcd tail needs d >= 2");
  if (M < 1) throw Error(ErrorCode::invalid_argument, "M must be at least 1");
  GcdTailPrediction out;
  for (std::uint64_t p = 2; p <= M; ++p) {
    if (!is_prime(p)) continue;
    PrimeValuationLaw v;
    v.p = p;
    v.divisible.push_back(1.0);
    for (std::uint64_t pe = p;; pe *= p) {
      v.divisible.push_back(divisibility_probability(d, n, pe));
      if (pe > M) break;
    }
    out.primes.push_back(std::move(v));
  }
  double good = 0;
  for (std::uint64_t g = 1; g <= M; ++g) {
    double pr = 1;
    for (const auto& v : out.primes) {
      std::uint64_t x = g;
      unsigned e = 0;
      while (x % v.p == 0) {
        x /= v.p;
        ++e;
      }
      pr *= v.divisible[e] - v.divisible[e + 1];
    }
    good += pr;
  }
  out.p_bad = 1 - good;
  return out;
}

void write_mod_law_csv(std::ostream& out, const ModLaw& law) {
  for (int i = 0; i < law.d; ++i) out << "x" << i + 1 << ',';
  out << "probability\n";
  char buf[64];
  for (std::uint64_t s = 0; s < law.state_count(); ++s) {
    for (std::uint64_t c : law.coordinates(s)) out << c << ',';
    std::snprintf(buf, sizeof buf, "%.17g", law.probabilities[s]);
    out << buf << '\n';
  }
}

}  // namespace wordlab
