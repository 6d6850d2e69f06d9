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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wordlab/groups.hpp"
#include "wordlab/rng.hpp"

namespace wordlab {

// Letter +i is the generator x_i, -i its inverse; 1 <= i <= rank.
using Letter = std::int32_t;

// Exponent-sum vector of a word, one entry per generator.
using AbelianVector = std::vector<std::int64_t>;

// A freely reduced element of the free group F_d. The length of the letter
// sequence it was built from (e.g. a sampled word before reduction) is kept
// as metadata.
class Word {
 public:
  static constexpr std::size_t kMaxLetters = 10'000;

  Word() = default;

  // Freely reduces `letters`. Throws bad_letter for 0 or |letter| > rank.
  static Word reduce(std::span<const Letter> letters, int rank);

  // "1 2 -1 -2" or "x1 x2 X1 X2" (capital X = inverse). rank 0 means infer
  // the rank from the largest index present.
  static Word parse(std::string_view text, int rank = 0);

  int rank() const noexcept { return rank_; }
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  std::size_t unreduced_length() const noexcept { return unreduced_length_; }

  Word inverse() const;
  Word concat(const Word& other) const;
  Word power(std::int64_t k) const;

  // Signed-index text, e.g. "1 2 -1".
  std::string str() const;

  bool operator==(const Word& other) const {
    return rank_ == other.rank_ && letters_ == other.letters_;
  }

 private:
  int rank_ = 1;
  std::vector<Letter> letters_;
  std::size_t unreduced_length_ = 0;
};

std::vector<Letter> reduce_letters(std::span<const Letter> letters);

enum class SamplingModel { positive, symmetric };

SamplingModel parse_sampling_model(std::string_view text);
const char* sampling_model_name(SamplingModel model);

// positive: n letters uniform on {x_1..x_d}. symmetric: n letters uniform on
// the 2d generators and inverses, then reduced. Draw r in [0, 2d) maps to
// generator r/2 + 1 with sign + for even r, so the abelianization of a
// symmetric word equals simulate_walk on the same stream.
Word sample_word(SamplingModel model, int rank, std::size_t n, Rng& rng);

AbelianVector abelianize(const Word& w);
AbelianVector abelianize(std::span<const Letter> letters, int rank);

// gcd of absolute values; 0 for the zero vector.
std::uint64_t gamma(std::span<const std::int64_t> v);

struct BezoutCertificate {
  std::uint64_t m = 0;
  std::vector<std::int64_t> coefficients;
};

// m = gamma(v) and sum a_i b_i = m, with |b_i| <= max |a_i|.
// Throws zero_vector for v = 0.
BezoutCertificate bezout_certificate(std::span<const std::int64_t> v);

struct PowerDecomposition {
  bool is_power = false;
  Word root;
  std::int64_t exponent = 1;
};

// Decides whether w = root^k with k >= 2 in F_d, returning the primitive root
// and the largest such k. Throws empty_word.
PowerDecomposition is_power_word(const Word& w);

// Cyclic reduction w = u c u^{-1}; returns (u, c).
std::pair<std::vector<Letter>, std::vector<Letter>> cyclic_decomposition(const Word& w);

// Substitutes a tuple of group elements into w. Throws rank_mismatch /
// group_mismatch.
Element evaluate(const Word& w, const Group& group, std::span<const Element> tuple);
// Unchecked fast path over raw indices; tuple.size() must equal rank.
Index evaluate_indices(std::span<const Letter> letters, const Group& group,
                       std::span<const Index> tuple);

}  // namespace wordlab
