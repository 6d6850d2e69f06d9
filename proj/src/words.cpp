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

#include "wordlab/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "wordlab/error.hpp"

namespace wordlab {

std::vector<Letter> reduce_letters(std::span<const Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter x : letters) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

Word Word::reduce(std::span<const Letter> letters, int rank) {
  if (rank < 1) throw Error(ErrorCode::invalid_argument, "word rank must be at least 1");
  if (letters.size() > kMaxLetters)
    throw Error(ErrorCode::invalid_argument, "words are capped at 10^4 letters");
  for (Letter x : letters)
    if (x == 0 || std::abs(x) > rank)
      throw Error(ErrorCode::bad_letter,
                  "letter " + std::to_string(x) + " outside +-1..+-" + std::to_string(rank));
  Word w;
  w.rank_ = rank;
  w.letters_ = reduce_letters(letters);
  w.unreduced_length_ = letters.size();
  return w;
}

Word Word::parse(std::string_view text, int rank) {
  std::vector<Letter> letters;
  std::istringstream in{std::string(text)};
  for (std::string tok; in >> tok;) {
    std::string_view t = tok;
    int sign = 1;
    if (t.front() == 'x' || t.front() == 'X') {
      sign = t.front() == 'X' ? -1 : 1;
      t.remove_prefix(1);
      if (!t.empty() && (t.front() == '-' || t.front() == '+'))
        throw Error(ErrorCode::bad_letter, "malformed letter '" + tok + "'");
    }
    if (!t.empty() && t.front() == '+') t.remove_prefix(1);
    int v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
      throw Error(ErrorCode::bad_letter, "malformed letter '" + tok + "'");
    letters.push_back(sign * v);
  }
  if (rank == 0) {
    for (Letter x : letters) rank = std::max(rank, std::abs(x));
    rank = std::max(rank, 1);
  }
  return reduce(letters, rank);
}

Word Word::inverse() const {
  Word w;
  w.rank_ = rank_;
  w.letters_.assign(letters_.rbegin(), letters_.rend());
  for (Letter& x : w.letters_) x = -x;
  w.unreduced_length_ = w.letters_.size();
  return w;
}

Word Word::concat(const Word& other) const {
  if (other.rank_ != rank_) throw Error(ErrorCode::rank_mismatch, "cannot concatenate words of different rank");
  std::vector<Letter> all = letters_;
  all.insert(all.end(), other.letters_.begin(), other.letters_.end());
  return reduce(all, rank_);
}

Word Word::power(std::int64_t k) const {
  const Word base = k < 0 ? inverse() : *this;
  std::vector<Letter> all;
  for (std::int64_t i = 0; i < std::abs(k); ++i) {
    all.insert(all.end(), base.letters_.begin(), base.letters_.end());
    if (all.size() > 4 * kMaxLetters) all = reduce_letters(all);
  }
  return reduce(reduce_letters(all), rank_);
}

std::string Word::str() const {
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(letters_[i]);
  }
  return out;
}

SamplingModel parse_sampling_model(std::string_view text) {
  if (text == "positive") return SamplingModel::positive;
  if (text == "symmetric") return SamplingModel::symmetric;
  throw Error(ErrorCode::invalid_argument, "sampling model must be positive or symmetric");
}

const char* sampling_model_name(SamplingModel model) {
  return model == SamplingModel::positive ? "positive" : "symmetric";
}

Word sample_word(SamplingModel model, int rank, std::size_t n, Rng& rng) {
  if (rank < 1) throw Error(ErrorCode::invalid_argument, "rank must be at least 1");
  std::vector<Letter> letters(n);
  for (auto& x : letters) {
    if (model == SamplingModel::positive) {
      x = static_cast<Letter>(rng.below(static_cast<std::uint64_t>(rank)) + 1);
    } else {
      const auto r = rng.below(2 * static_cast<std::uint64_t>(rank));
      x = static_cast<Letter>(r / 2 + 1) * (r % 2 == 0 ? 1 : -1);
    }
  }
  return Word::reduce(letters, rank);
}

AbelianVector abelianize(std::span<const Letter> letters, int rank) {
  AbelianVector v(static_cast<std::size_t>(rank), 0);
  for (Letter x : letters) v[static_cast<std::size_t>(std::abs(x) - 1)] += x > 0 ? 1 : -1;
  return v;
}

AbelianVector abelianize(const Word& w) { return abelianize(w.letters(), w.rank()); }

std::uint64_t gamma(std::span<const std::int64_t> v) {
  std::uint64_t g = 0;
  for (std::int64_t a : v) g = std::gcd(g, static_cast<std::uint64_t>(a < 0 ? -a : a));
  return g;
}

namespace {

struct ExtGcd {
  std::int64_t g, x, y;  // a x + b y = g >= 0
};

ExtGcd ext_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

}  // namespace

BezoutCertificate bezout_certificate(std::span<const std::int64_t> a) {
  const std::uint64_t m = gamma(a);
  if (m == 0) throw Error(ErrorCode::zero_vector, "Bezout certificate of the zero vector");
  const std::size_t d = a.size();
  // Pivot on the coordinate of largest magnitude.
  std::size_t p = 0;
  for (std::size_t i = 1; i < d; ++i)
    if (std::abs(a[i]) > std::abs(a[p])) p = i;
  const std::int64_t ap = a[p];
  std::vector<std::int64_t> b(d, 0);
  if (static_cast<std::uint64_t>(std::abs(ap)) == m) {
    b[p] = ap > 0 ? 1 : -1;
    return {m, b};
  }
  // Iterated extended gcd, kept in 128-bit to absorb intermediate growth.
  std::vector<__int128> wide(d, 0);
  std::int64_t g = 0;
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    if (g == 0) {
      g = std::abs(a[i]);
      wide[i] = a[i] > 0 ? 1 : -1;
      continue;
    }
    const ExtGcd e = ext_gcd(g, a[i]);
    for (std::size_t j = 0; j < i; ++j) wide[j] *= e.x;
    wide[i] = e.y;
    g = e.g;
  }
  const __int128 bound = std::abs(ap);
  if (std::all_of(wide.begin(), wide.end(), [&](__int128 x) { return x <= bound && -x <= bound; })) {
    for (std::size_t i = 0; i < d; ++i) b[i] = static_cast<std::int64_t>(wide[i]);
    return {m, b};
  }
  // Size reduction against the pivot: shifting b_i by t*(a_p/g_i) and b_p by
  // -t*(a_i/g_i) preserves the sum. Each b_i goes to the representative whose
  // term a_i b_i has the opposite sign of the running partial sum, which
  // keeps |sum_{i != p} a_i b_i| < |a_p|^2 and hence |b_p| < |a_p|.
  __int128 bp = wide[p];
  __int128 partial = 0;
  for (std::size_t i = 0; i < d; ++i) {
    if (i == p) continue;
    if (a[i] == 0) continue;
    const std::int64_t gi = std::gcd(std::abs(a[i]), std::abs(ap));
    const std::int64_t step = std::abs(ap) / gi;  // period of b_i
    const __int128 bi = wide[i];
    const __int128 r = ((bi % step) + step) % step;  // in [0, step)
    const __int128 candidates[2] = {r, r - step};
    __int128 chosen = candidates[0];
    if (r != 0) {
      const __int128 t0 = a[i] * candidates[0];
      const bool want_nonpositive = partial > 0;
      chosen = ((t0 <= 0) == want_nonpositive) ? candidates[0] : candidates[1];
    }
    // b_i moved by (chosen - bi) = t * step; compensate on the pivot.
    const __int128 t = (chosen - bi) / step;
    const std::int64_t sign_ap = ap > 0 ? 1 : -1;
    bp -= t * (a[i] / gi) * sign_ap;
    b[i] = static_cast<std::int64_t>(chosen);
    partial += a[i] * chosen;
  }
  b[p] = static_cast<std::int64_t>(bp);
  return {m, b};
}

std::pair<std::vector<Letter>, std::vector<Letter>> cyclic_decomposition(const Word& w) {
  const auto& l = w.letters();
  std::size_t i = 0, j = l.size();
  while (j - i >= 2 && l[i] == -l[j - 1]) {
    ++i;
    --j;
  }
  return {std::vector<Letter>(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(i)),
          std::vector<Letter>(l.begin() + static_cast<std::ptrdiff_t>(i),
                              l.begin() + static_cast<std::ptrdiff_t>(j))};
}

PowerDecomposition is_power_word(const Word& w) {
  if (w.empty()) throw Error(ErrorCode::empty_word, "power detection on the empty word");
  auto [u, c] = cyclic_decomposition(w);
  // Smallest period of c via the prefix function.
  const std::size_t n = c.size();
  std::vector<std::size_t> fail(n + 1, 0);
  for (std::size_t q = 1; q < n; ++q) {
    std::size_t k = fail[q];
    while (k > 0 && c[q] != c[k]) k = fail[k];
    if (c[q] == c[k]) ++k;
    fail[q + 1] = k;
  }
  const std::size_t period = n - fail[n];
  PowerDecomposition out;
  if (n % period != 0 || period == n) {
    out.root = w;
    return out;
  }
  std::vector<Letter> root(u);
  root.insert(root.end(), c.begin(), c.begin() + static_cast<std::ptrdiff_t>(period));
  for (auto it = u.rbegin(); it != u.rend(); ++it) root.push_back(-*it);
  out.is_power = true;
  out.root = Word::reduce(root, w.rank());
  out.exponent = static_cast<std::int64_t>(n / period);
  return out;
}

Index evaluate_indices(std::span<const Letter> letters, const Group& group,
                       std::span<const Index> tuple) {
  Index acc = Group::identity();
  for (Letter x : letters) {
    const Index g = tuple[static_cast<std::size_t>(std::abs(x) - 1)];
    acc = group.mul(acc, x > 0 ? g : group.inv(g));
  }
  return acc;
}

Element evaluate(const Word& w, const Group& group, std::span<const Element> tuple) {
  if (tuple.size() != static_cast<std::size_t>(w.rank()))
    throw Error(ErrorCode::rank_mismatch, "tuple length " + std::to_string(tuple.size()) +
                                              " does not match word rank " + std::to_string(w.rank()));
  std::vector<Index> idx;
  idx.reserve(tuple.size());
  for (const Element& e : tuple) {
    group.check(e);
    idx.push_back(e.index);
  }
  return Element{group.id(), evaluate_indices(w.letters(), group, idx)};
}

}  // namespace wordlab
