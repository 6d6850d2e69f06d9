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

#include "wordlab/groups.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "wordlab/error.hpp"
#include "wordlab/numeric.hpp"
#include "wordlab/rng.hpp"

namespace wordlab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

// Integers found in text, ignoring separators; nullopt on any other junk.
std::optional<std::vector<std::int64_t>> parse_int_list(std::string_view s,
                                                        std::string_view separators) {
  std::vector<std::int64_t> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c)) || separators.find(c) != std::string_view::npos) {
      ++i;
      continue;
    }
    std::size_t j = i;
    if (s[j] == '-' || s[j] == '+') ++j;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    auto v = parse_int(s.substr(i, j - i));
    if (!v) return std::nullopt;
    out.push_back(*v);
    i = j;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Backends

class CyclicBackend final : public GroupBackend {
 public:
  explicit CyclicBackend(std::uint64_t n) : n_(n) {}
  Index multiply(Index a, Index b) const override {
    return static_cast<Index>((std::uint64_t{a} + b) % n_);
  }
  Index invert(Index a) const override { return static_cast<Index>((n_ - a) % n_); }

 private:
  std::uint64_t n_;
};

// r^i s^j stored at index i + n*j.
class DihedralBackend final : public GroupBackend {
 public:
  explicit DihedralBackend(std::uint64_t n) : n_(n) {}
  Index multiply(Index a, Index b) const override {
    const std::uint64_t ra = a % n_, sa = a / n_, rb = b % n_, sb = b / n_;
    const std::uint64_t r = sa ? (ra + n_ - rb) % n_ : (ra + rb) % n_;
    return static_cast<Index>(r + n_ * (sa ^ sb));
  }
  Index invert(Index a) const override {
    if (a >= n_) return a;  // reflections are involutions
    return static_cast<Index>((n_ - a) % n_);
  }
  std::string format(Index a) const override {
    const std::uint64_t r = a % n_, s = a / n_;
    if (r == 0 && s == 0) return "e";
    std::string out;
    if (r != 0) out += "r^" + std::to_string(r);
    if (s != 0) out += (out.empty() ? "" : " ") + std::string("s");
    return out;
  }

 private:
  std::uint64_t n_;
};

using Perm = std::array<std::uint8_t, 9>;

std::uint64_t factorial(unsigned n) {
  std::uint64_t f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

// Permutations of {1..n} in lexicographic order of their images (so the
// identity comes first); the alternating group keeps the even ones.
// Product convention: (g*h)(x) = g(h(x)).
class PermBackend final : public GroupBackend {
 public:
  PermBackend(unsigned n, bool even_only) : n_(n) {
    for (unsigned i = 0; i < n; ++i) radix_[i] = factorial(n - 1 - i);
    const std::uint64_t total = factorial(n);
    index_of_rank_.assign(total, -1);
    Perm p{};
    for (unsigned i = 0; i < n; ++i) p[i] = static_cast<std::uint8_t>(i);
    std::uint64_t rank = 0;
    do {
      if (!even_only || parity(p) == 0) {
        index_of_rank_[rank] = static_cast<std::int32_t>(perms_.size());
        perms_.push_back(p);
      }
      ++rank;
    } while (std::next_permutation(p.begin(), p.begin() + n));
  }

  std::uint64_t size() const { return perms_.size(); }

  Index multiply(Index a, Index b) const override {
    const Perm& g = perms_[a];
    const Perm& h = perms_[b];
    Perm c{};
    for (unsigned x = 0; x < n_; ++x) c[x] = g[h[x]];
    return lookup(c);
  }
  Index invert(Index a) const override {
    const Perm& g = perms_[a];
    Perm c{};
    for (unsigned x = 0; x < n_; ++x) c[g[x]] = static_cast<std::uint8_t>(x);
    return lookup(c);
  }

  std::string format(Index a) const override {
    const Perm& g = perms_[a];
    std::array<bool, 9> seen{};
    std::string out;
    for (unsigned x = 0; x < n_; ++x) {
      if (seen[x] || g[x] == x) continue;
      out += "(";
      unsigned y = x;
      bool first = true;
      while (!seen[y]) {
        seen[y] = true;
        if (!first) out += " ";
        out += std::to_string(y + 1);
        first = false;
        y = g[y];
      }
      out += ")";
    }
    return out.empty() ? "()" : out;
  }

  std::optional<Index> parse(std::string_view text) const override {
    text = trim(text);
    if (text.empty() || text.front() != '(') return std::nullopt;
    Perm result{};
    for (unsigned i = 0; i < n_; ++i) result[i] = static_cast<std::uint8_t>(i);
    // Cycles compose right to left, matching the product convention.
    std::vector<Perm> cycles;
    std::size_t pos = 0;
    while (pos < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
        continue;
      }
      if (text[pos] != '(') return std::nullopt;
      const std::size_t close = text.find(')', pos);
      if (close == std::string_view::npos) return std::nullopt;
      auto points = parse_int_list(text.substr(pos + 1, close - pos - 1), ",");
      if (!points) return std::nullopt;
      Perm c{};
      for (unsigned i = 0; i < n_; ++i) c[i] = static_cast<std::uint8_t>(i);
      std::array<bool, 9> used{};
      for (std::size_t i = 0; i < points->size(); ++i) {
        const std::int64_t x = (*points)[i];
        const std::int64_t y = (*points)[(i + 1) % points->size()];
        if (x < 1 || x > static_cast<std::int64_t>(n_) || y < 1 ||
            y > static_cast<std::int64_t>(n_) || used[x - 1])
          return std::nullopt;
        used[x - 1] = true;
        c[x - 1] = static_cast<std::uint8_t>(y - 1);
      }
      cycles.push_back(c);
      pos = close + 1;
    }
    for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
      Perm next{};
      for (unsigned x = 0; x < n_; ++x) next[x] = (*it)[result[x]];
      result = next;
    }
    const std::uint64_t r = rank(result);
    if (index_of_rank_[r] < 0) return std::nullopt;  // odd permutation in A_n
    return static_cast<Index>(index_of_rank_[r]);
  }

 private:
  unsigned parity(const Perm& p) const {
    unsigned inv = 0;
    for (unsigned i = 0; i < n_; ++i)
      for (unsigned j = i + 1; j < n_; ++j) inv += p[i] > p[j];
    return inv & 1u;
  }

  // Lehmer rank in lexicographic order.
  std::uint64_t rank(const Perm& p) const {
    std::uint64_t r = 0;
    for (unsigned i = 0; i < n_; ++i) {
      unsigned smaller = 0;
      for (unsigned j = i + 1; j < n_; ++j) smaller += p[j] < p[i];
      r += smaller * radix_[i];
    }
    return r;
  }

  Index lookup(const Perm& p) const {
    return static_cast<Index>(index_of_rank_[rank(p)]);
  }

  unsigned n_;
  std::array<std::uint64_t, 9> radix_{};
  std::vector<Perm> perms_;
  std::vector<std::int32_t> index_of_rank_;
};

// SL(2,p) or PSL(2,p). The index of a matrix is computed arithmetically from
// its entries, which also fixes the enumeration order:
//   a != 0: ((a-1)p + b)p + c      (d is determined by det = 1)
//   a == 0: base + (b-1)p + d      (c = -1/b)
// For PSL the class {M, -M} is represented by the member with a in
// [1, (p-1)/2], or b in [1, (p-1)/2] when a = 0. The identity gets index 0.
class MatrixBackend final : public GroupBackend {
 public:
  struct Mat {
    std::uint16_t a, b, c, d;
  };

  MatrixBackend(std::uint32_t p, bool projective) : p_(p), projective_(projective) {
    half_ = projective ? (p - 1) / 2 : p - 1;
    const std::uint64_t count = std::uint64_t{half_} * p * p + std::uint64_t{half_} * p;
    elements_.resize(count);
    std::vector<std::uint32_t> inverse(p, 0);
    for (std::uint32_t x = 1; x < p; ++x)
      for (std::uint32_t y = 1; y < p; ++y)
        if (std::uint64_t{x} * y % p == 1) inverse[x] = y;
    auto add = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
      Mat m{static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b),
            static_cast<std::uint16_t>(c), static_cast<std::uint16_t>(d)};
      if (!projective || is_canonical(m)) elements_[key(m)] = m;
    };
    for (std::uint32_t a = 1; a < p; ++a)
      for (std::uint32_t b = 0; b < p; ++b)
        for (std::uint32_t c = 0; c < p; ++c)
          add(a, b, c, static_cast<std::uint32_t>((1 + std::uint64_t{b} * c) % p * inverse[a] % p));
    for (std::uint32_t b = 1; b < p; ++b)
      for (std::uint32_t d = 0; d < p; ++d) add(0, b, (p - inverse[b]) % p, d);
  }

  std::uint64_t size() const { return elements_.size(); }
  const Mat& matrix(Index i) const { return elements_[i]; }

  Index multiply(Index x, Index y) const override {
    const Mat& m = elements_[x];
    const Mat& n = elements_[y];
    Mat r{static_cast<std::uint16_t>((std::uint32_t{m.a} * n.a + std::uint32_t{m.b} * n.c) % p_),
          static_cast<std::uint16_t>((std::uint32_t{m.a} * n.b + std::uint32_t{m.b} * n.d) % p_),
          static_cast<std::uint16_t>((std::uint32_t{m.c} * n.a + std::uint32_t{m.d} * n.c) % p_),
          static_cast<std::uint16_t>((std::uint32_t{m.c} * n.b + std::uint32_t{m.d} * n.d) % p_)};
    return normalized_key(r);
  }

  Index invert(Index x) const override {
    const Mat& m = elements_[x];
    Mat r{m.d, neg(m.b), neg(m.c), m.a};
    return normalized_key(r);
  }

  std::string format(Index x) const override {
    const Mat& m = elements_[x];
    std::ostringstream os;
    os << '[' << m.a << ',' << m.b << ',' << m.c << ',' << m.d << ']';
    return os.str();
  }

  std::optional<Index> parse(std::string_view text) const override {
    text = trim(text);
    if (text.size() < 2 || text.front() != '[' || text.back() != ']') return std::nullopt;
    auto v = parse_int_list(text.substr(1, text.size() - 2), ",;");
    if (!v || v->size() != 4) return std::nullopt;
    auto red = [&](std::int64_t x) {
      return static_cast<std::uint16_t>(((x % static_cast<std::int64_t>(p_)) + p_) % p_);
    };
    Mat m{red((*v)[0]), red((*v)[1]), red((*v)[2]), red((*v)[3])};
    const std::uint64_t det = (std::uint64_t{m.a} * m.d + std::uint64_t{p_} * p_ -
                               std::uint64_t{m.b} * m.c % p_) % p_;
    if (det != 1) return std::nullopt;
    return normalized_key(m);
  }

 private:
  std::uint16_t neg(std::uint16_t x) const {
    return static_cast<std::uint16_t>((p_ - x) % p_);
  }

  bool is_canonical(const Mat& m) const {
    if (m.a != 0) return m.a <= half_;
    return m.b <= half_;
  }

  Index key(const Mat& m) const {
    if (m.a != 0)
      return static_cast<Index>((std::uint64_t{m.a - 1u} * p_ + m.b) * p_ + m.c);
    return static_cast<Index>(std::uint64_t{half_} * p_ * p_ + std::uint64_t{m.b - 1u} * p_ + m.d);
  }

  Index normalized_key(Mat m) const {
    if (projective_ && !is_canonical(m)) m = Mat{neg(m.a), neg(m.b), neg(m.c), neg(m.d)};
    return key(m);
  }

  std::uint32_t p_;
  bool projective_;
  std::uint32_t half_;
  std::vector<Mat> elements_;
};

class TableBackend final : public GroupBackend {
 public:
  TableBackend(std::vector<Index> table, std::uint64_t n) : table_(std::move(table)), n_(n) {
    inverse_.resize(n);
    for (std::uint64_t g = 0; g < n; ++g)
      for (std::uint64_t h = 0; h < n; ++h)
        if (table_[g * n + h] == 0) {
          inverse_[g] = static_cast<Index>(h);
          break;
        }
  }
  Index multiply(Index a, Index b) const override { return table_[std::size_t{a} * n_ + b]; }
  Index invert(Index a) const override { return inverse_[a]; }

 private:
  std::vector<Index> table_;
  std::uint64_t n_;
  std::vector<Index> inverse_;
};

class QuotientBackend final : public GroupBackend {
 public:
  explicit QuotientBackend(std::shared_ptr<const QuotientInfo> info) : info_(std::move(info)) {}
  Index multiply(Index a, Index b) const override {
    return info_->coset_of[info_->parent->mul(info_->representative[a], info_->representative[b])];
  }
  Index invert(Index a) const override {
    return info_->coset_of[info_->parent->inv(info_->representative[a])];
  }
  std::string format(Index a) const override {
    return "[" + info_->parent->format(info_->representative[a]) + "]";
  }

 private:
  std::shared_ptr<const QuotientInfo> info_;
};

class PowerBackend final : public GroupBackend {
 public:
  explicit PowerBackend(std::shared_ptr<const DirectPowerInfo> info) : info_(std::move(info)) {
    radix_ = info_->base->order();
  }
  Index multiply(Index a, Index b) const override {
    std::uint64_t x = a, y = b, out = 0, scale = 1;
    for (unsigned i = 0; i < info_->factors; ++i) {
      const auto cx = static_cast<Index>(x % radix_), cy = static_cast<Index>(y % radix_);
      out += scale * info_->base->mul(cx, cy);
      x /= radix_;
      y /= radix_;
      scale *= radix_;
    }
    return static_cast<Index>(out);
  }
  Index invert(Index a) const override {
    std::uint64_t x = a, out = 0, scale = 1;
    for (unsigned i = 0; i < info_->factors; ++i) {
      out += scale * info_->base->inv(static_cast<Index>(x % radix_));
      x /= radix_;
      scale *= radix_;
    }
    return static_cast<Index>(out);
  }
  std::string format(Index a) const override {
    std::string out = "(";
    auto comps = info_->components(a);
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (i) out += ", ";
      out += info_->base->format(comps[i]);
    }
    return out + ")";
  }

 private:
  std::shared_ptr<const DirectPowerInfo> info_;
  std::uint64_t radix_;
};

std::atomic<std::uint64_t> next_group_id{1};

[[noreturn]] void malformed(const std::string& source, const std::string& what) {
  throw Error(ErrorCode::malformed_cayley_table, source + ": " + what);
}

}  // namespace

// ---------------------------------------------------------------------------

std::string GroupBackend::format(Index a) const { return "#" + std::to_string(a); }
std::optional<Index> GroupBackend::parse(std::string_view) const { return std::nullopt; }

GroupSpec GroupSpec::parse(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw Error(ErrorCode::invalid_argument, "group spec '" + std::string(text) +
                                                 "' must look like kind:parameter");
  const std::string_view kind = text.substr(0, colon);
  const std::string_view rest = text.substr(colon + 1);
  GroupSpec spec;
  if (kind == "cayley-file") {
    spec.kind = GroupKind::cayley_file;
    spec.path = std::string(trim(rest));
    if (spec.path.empty()) throw Error(ErrorCode::invalid_argument, "cayley-file spec needs a path");
    spec.parameter = 0;
    return spec;
  }
  static const std::map<std::string_view, GroupKind> kinds = {
      {"cyclic", GroupKind::cyclic},       {"dihedral", GroupKind::dihedral},
      {"symmetric", GroupKind::symmetric}, {"alternating", GroupKind::alternating},
      {"sl2", GroupKind::sl2},             {"psl2", GroupKind::psl2}};
  auto it = kinds.find(kind);
  if (it == kinds.end())
    throw Error(ErrorCode::invalid_argument, "unknown group kind '" + std::string(kind) + "'");
  spec.kind = it->second;
  auto value = parse_int(rest);
  if (!value || *value <= 0)
    throw Error(ErrorCode::invalid_argument,
                "group parameter must be a positive integer in '" + std::string(text) + "'");
  spec.parameter = static_cast<std::uint64_t>(*value);
  return spec;
}

std::string GroupSpec::str() const {
  switch (kind) {
    case GroupKind::cyclic: return "cyclic:" + std::to_string(parameter);
    case GroupKind::dihedral: return "dihedral:" + std::to_string(parameter);
    case GroupKind::symmetric: return "symmetric:" + std::to_string(parameter);
    case GroupKind::alternating: return "alternating:" + std::to_string(parameter);
    case GroupKind::sl2: return "sl2:" + std::to_string(parameter);
    case GroupKind::psl2: return "psl2:" + std::to_string(parameter);
    case GroupKind::cayley_file: return "cayley-file:" + path;
  }
  return "?";
}

void GroupSpec::validate() const {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::unsupported_parameter, str() + ": " + why);
  };
  switch (kind) {
    case GroupKind::cyclic:
      if (parameter < 1 || parameter > Group::kCarrierCap) fail("order out of range");
      break;
    case GroupKind::dihedral:
      if (parameter < 1 || 2 * parameter > Group::kCarrierCap) fail("order out of range");
      break;
    case GroupKind::symmetric:
    case GroupKind::alternating:
      if (parameter < 1 || parameter > 9) fail("degree must be in [1, 9]");
      break;
    case GroupKind::sl2:
    case GroupKind::psl2:
      if (parameter == 2 || !is_prime(parameter)) fail("parameter must be an odd prime");
      if (parameter * (parameter * parameter - 1) > 1'000'000) fail("p(p^2-1) exceeds 10^6");
      break;
    case GroupKind::cayley_file:
      if (path.empty()) fail("missing path");
      break;
  }
}

// ---------------------------------------------------------------------------

Group::Group(std::string name, std::optional<GroupSpec> spec, std::uint64_t order,
             std::unique_ptr<GroupBackend> backend)
    : id_(next_group_id.fetch_add(1)),
      name_(std::move(name)),
      spec_(std::move(spec)),
      order_(order),
      backend_(std::move(backend)) {
  finish();
}

void Group::finish() {
  if (order_ <= kTableCap) {
    table_storage_.resize(order_ * order_);
    for (std::uint64_t a = 0; a < order_; ++a)
      for (std::uint64_t b = 0; b < order_; ++b)
        table_storage_[a * order_ + b] =
            backend_->multiply(static_cast<Index>(a), static_cast<Index>(b));
    table_ = table_storage_.data();
  }
  inverse_.resize(order_);
  for (std::uint64_t a = 0; a < order_; ++a)
    inverse_[a] = backend_->invert(static_cast<Index>(a));
}

Index Group::pow(Index a, std::int64_t k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;  // |k| <= 2^63 - 1 is fine; INT64_MIN would overflow
  }
  Index result = identity();
  auto e = static_cast<std::uint64_t>(k);
  while (e != 0) {
    if (e & 1u) result = mul(result, a);
    e >>= 1;
    if (e != 0) a = mul(a, a);
  }
  return result;
}

std::uint64_t Group::element_order(Index a) const {
  std::uint64_t k = 1;
  for (Index x = a; x != identity(); x = mul(x, a)) ++k;
  return k;
}

Element Group::element(Index index) const {
  if (index >= order_)
    throw Error(ErrorCode::invalid_argument,
                "index " + std::to_string(index) + " out of range for " + name_);
  return Element{id_, index};
}

void Group::check(Element a) const {
  if (a.group_id != id_)
    throw Error(ErrorCode::group_mismatch, "element does not belong to " + name_);
  if (a.index >= order_) throw Error(ErrorCode::invalid_argument, "element index out of range");
}

Element Group::multiply(Element a, Element b) const {
  check(a);
  check(b);
  return Element{id_, mul(a.index, b.index)};
}

Element Group::invert(Element a) const {
  check(a);
  return Element{id_, inv(a.index)};
}

Element Group::power(Element a, std::int64_t k) const {
  check(a);
  return Element{id_, pow(a.index, k)};
}

Index Group::parse_element(std::string_view text) const {
  std::string_view t = trim(text);
  if (!t.empty() && t.front() == '#') t.remove_prefix(1);
  if (auto v = parse_int(t)) {
    if (*v < 0 || static_cast<std::uint64_t>(*v) >= order_)
      throw Error(ErrorCode::invalid_argument,
                  "element index " + std::string(t) + " out of range for " + name_);
    return static_cast<Index>(*v);
  }
  if (auto idx = backend_->parse(text)) return *idx;
  throw Error(ErrorCode::invalid_argument,
              "cannot parse element '" + std::string(trim(text)) + "' of " + name_);
}

// ---------------------------------------------------------------------------

std::vector<Index> DirectPowerInfo::components(Index index) const {
  std::vector<Index> out(factors);
  std::uint64_t x = index;
  for (unsigned i = 0; i < factors; ++i) {
    out[i] = static_cast<Index>(x % base->order());
    x /= base->order();
  }
  return out;
}

Index DirectPowerInfo::compose(std::span<const Index> comps) const {
  if (comps.size() != factors)
    throw Error(ErrorCode::dimension_mismatch, "wrong number of components");
  std::uint64_t out = 0, scale = 1;
  for (unsigned i = 0; i < factors; ++i) {
    if (comps[i] >= base->order()) throw Error(ErrorCode::invalid_argument, "component out of range");
    out += scale * comps[i];
    scale *= base->order();
  }
  return static_cast<Index>(out);
}

GroupPtr construct_group(const GroupSpec& spec) {
  spec.validate();
  const std::uint64_t n = spec.parameter;
  switch (spec.kind) {
    case GroupKind::cyclic:
      return std::make_shared<const Group>(spec.str(), spec, n, std::make_unique<CyclicBackend>(n));
    case GroupKind::dihedral:
      return std::make_shared<const Group>(spec.str(), spec, 2 * n,
                                           std::make_unique<DihedralBackend>(n));
    case GroupKind::symmetric:
    case GroupKind::alternating: {
      auto backend = std::make_unique<PermBackend>(static_cast<unsigned>(n),
                                                   spec.kind == GroupKind::alternating);
      const std::uint64_t order = backend->size();
      return std::make_shared<const Group>(spec.str(), spec, order, std::move(backend));
    }
    case GroupKind::sl2:
    case GroupKind::psl2: {
      auto backend = std::make_unique<MatrixBackend>(static_cast<std::uint32_t>(n),
                                                     spec.kind == GroupKind::psl2);
      const std::uint64_t order = backend->size();
      return std::make_shared<const Group>(spec.str(), spec, order, std::move(backend));
    }
    case GroupKind::cayley_file: {
      auto g = load_cayley_table(spec.path);
      return g;
    }
  }
  throw Error(ErrorCode::invalid_argument, "unknown group kind");
}

GroupPtr cayley_group(std::vector<Index> table, std::uint64_t n, std::string name,
                      std::optional<GroupSpec> spec) {
  const std::string& src = name;
  if (n == 0) malformed(src, "order must be positive");
  if (n > 8192) throw Error(ErrorCode::unsupported_parameter, src + ": Cayley tables are capped at order 8192");
  if (table.size() != n * n) malformed(src, "table must have order^2 entries");
  for (std::uint64_t g = 0; g < n; ++g)
    for (std::uint64_t h = 0; h < n; ++h)
      if (table[g * n + h] >= n)
        malformed(src, "row " + std::to_string(g) + ": entry out of range");
  for (std::uint64_t g = 0; g < n; ++g) {
    if (table[g] != g) malformed(src, "row 0: index 0 is not a left identity");
    if (table[g * n] != g) malformed(src, "row " + std::to_string(g) + ": index 0 is not a right identity");
  }
  std::vector<char> seen(n);
  for (std::uint64_t g = 0; g < n; ++g) {
    std::uint64_t right = n;
    for (std::uint64_t h = 0; h < n; ++h)
      if (table[g * n + h] == 0) {
        right = h;
        break;
      }
    if (right == n || table[right * n + g] != 0)
      malformed(src, "row " + std::to_string(g) + ": element has no two-sided inverse");
  }
  for (std::uint64_t g = 0; g < n; ++g) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::uint64_t h = 0; h < n; ++h) {
      if (seen[table[g * n + h]])
        malformed(src, "row " + std::to_string(g) + ": repeated entry (not a Latin square)");
      seen[table[g * n + h]] = 1;
    }
  }
  for (std::uint64_t h = 0; h < n; ++h) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::uint64_t g = 0; g < n; ++g) {
      if (seen[table[g * n + h]])
        malformed(src, "column " + std::to_string(h) + ": repeated entry (not a Latin square)");
      seen[table[g * n + h]] = 1;
    }
  }
  auto op = [&](std::uint64_t a, std::uint64_t b) { return std::uint64_t{table[a * n + b]}; };
  auto check_triple = [&](std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    if (op(op(a, b), c) != op(a, op(b, c)))
      malformed(src, "row " + std::to_string(a) + ": associativity fails for (" + std::to_string(a) +
                         ", " + std::to_string(b) + ", " + std::to_string(c) + ")");
  };
  constexpr std::uint64_t kAudit = 1'000'000;
  if (n * n * n <= kAudit) {
    for (std::uint64_t a = 0; a < n; ++a)
      for (std::uint64_t b = 0; b < n; ++b)
        for (std::uint64_t c = 0; c < n; ++c) check_triple(a, b, c);
  } else {
    Rng rng(0x5eedca11e7ab1eULL);
    for (std::uint64_t i = 0; i < kAudit; ++i)
      check_triple(rng.below(n), rng.below(n), rng.below(n));
  }
  return std::make_shared<const Group>(std::move(name), std::move(spec), n,
                                       std::make_unique<TableBackend>(std::move(table), n));
}

GroupPtr read_cayley_table(std::istream& in, const std::string& source_name) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);)
    if (!trim(line).empty()) lines.push_back(line);
  if (lines.empty()) malformed(source_name, "empty file");
  auto order = parse_int(lines[0]);
  if (!order || *order <= 0) malformed(source_name, "line 1 must hold a positive order");
  const auto n = static_cast<std::uint64_t>(*order);
  if (n > 8192)
    throw Error(ErrorCode::unsupported_parameter, source_name + ": Cayley tables are capped at order 8192");
  if (lines.size() != n + 1)
    malformed(source_name, "expected " + std::to_string(n) + " rows, found " +
                               std::to_string(lines.size() - 1));
  std::vector<Index> table;
  table.reserve(n * n);
  for (std::uint64_t g = 0; g < n; ++g) {
    auto row = parse_int_list(lines[g + 1], "");
    if (!row || row->size() != n)
      malformed(source_name, "row " + std::to_string(g) + ": expected " + std::to_string(n) +
                                 " integer entries");
    for (std::int64_t v : *row) {
      if (v < 0 || static_cast<std::uint64_t>(v) >= n)
        malformed(source_name, "row " + std::to_string(g) + ": entry out of range");
      table.push_back(static_cast<Index>(v));
    }
  }
  GroupSpec spec{GroupKind::cayley_file, n, source_name};
  return cayley_group(std::move(table), n, spec.str(), spec);
}

GroupPtr load_cayley_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot read Cayley table '" + path + "'");
  return read_cayley_table(in, path);
}

GroupPtr quotient_by_normal_subgroup(const GroupPtr& group, const IndexSet& normal,
                                     const std::string& name) {
  const std::uint64_t n = group->order();
  if (normal.empty() || n % normal.size() != 0)
    throw Error(ErrorCode::invalid_argument, "subgroup order must divide the group order");
  auto info = std::make_shared<QuotientInfo>();
  info->parent = group;
  constexpr Index kUnset = ~Index{0};
  info->coset_of.assign(n, kUnset);
  for (std::uint64_t g = 0; g < n; ++g) {
    if (info->coset_of[g] != kUnset) continue;
    const auto c = static_cast<Index>(info->representative.size());
    info->representative.push_back(static_cast<Index>(g));
    for (Index k : normal) {
      const Index x = group->mul(static_cast<Index>(g), k);
      if (info->coset_of[x] != kUnset)
        throw Error(ErrorCode::invalid_argument, "set is not a subgroup");
      info->coset_of[x] = c;
    }
  }
  auto result = std::make_shared<Group>(name, std::nullopt, info->representative.size(),
                                        std::make_unique<QuotientBackend>(info));
  result->quotient_ = info;
  return result;
}

GroupPtr quotient_by_center(const GroupPtr& group) {
  return quotient_by_normal_subgroup(group, center(*group), group->name() + "/Z");
}

GroupPtr direct_power(const GroupPtr& base, unsigned factors) {
  if (factors == 0) throw Error(ErrorCode::invalid_argument, "direct power needs at least one factor");
  const std::uint64_t order = checked_pow(base->order(), factors);
  if (order > Group::kCarrierCap)
    throw Error(ErrorCode::too_large, base->name() + "^" + std::to_string(factors) +
                                          " exceeds the carrier cap");
  auto info = std::make_shared<DirectPowerInfo>();
  info->base = base;
  info->factors = factors;
  auto result = std::make_shared<Group>(base->name() + "^" + std::to_string(factors), std::nullopt,
                                        order, std::make_unique<PowerBackend>(info));
  result->power_ = info;
  return result;
}

// ---------------------------------------------------------------------------

IndexSet closure(const Group& group, std::span<const Index> gens) {
  std::vector<char> in(group.order(), 0);
  std::vector<Index> elems{Group::identity()};
  in[0] = 1;
  for (Index g : gens) {
    if (g >= group.order()) throw Error(ErrorCode::invalid_argument, "generator out of range");
    if (!in[g]) {
      in[g] = 1;
      elems.push_back(g);
    }
  }
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (Index g : gens) {
      const Index y = group.mul(elems[i], g);
      if (!in[y]) {
        in[y] = 1;
        elems.push_back(y);
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

IndexSet closure(const Group& group, std::span<const Element> gens) {
  if (gens.empty()) throw Error(ErrorCode::invalid_argument, "closure needs at least one generator");
  std::vector<Index> idx;
  idx.reserve(gens.size());
  for (const Element& e : gens) {
    group.check(e);
    idx.push_back(e.index);
  }
  return closure(group, idx);
}

bool contains(const IndexSet& set, Index x) { return std::binary_search(set.begin(), set.end(), x); }

std::vector<Index> generating_set(const Group& group) {
  std::vector<Index> gens;
  std::vector<char> in(group.order(), 0);
  in[0] = 1;
  for (std::uint64_t g = 1; g < group.order(); ++g) {
    if (in[g]) continue;
    gens.push_back(static_cast<Index>(g));
    std::fill(in.begin(), in.end(), 0);
    for (Index x : closure(group, gens)) in[x] = 1;
  }
  return gens;
}

namespace {

void require_structure_cap(const Group& group, const char* what) {
  if (group.order() > Group::kStructureCap)
    throw Error(ErrorCode::too_large, std::string(what) + " needs |G| <= 20000; " + group.name() +
                                          " has order " + std::to_string(group.order()));
}

// Left-coset label of every element modulo a normal subgroup.
std::vector<Index> coset_labels(const Group& group, const IndexSet& normal, std::size_t& count) {
  constexpr Index kUnset = ~Index{0};
  std::vector<Index> label(group.order(), kUnset);
  count = 0;
  for (std::uint64_t g = 0; g < group.order(); ++g) {
    if (label[g] != kUnset) continue;
    for (Index k : normal) label[group.mul(static_cast<Index>(g), k)] = static_cast<Index>(count);
    ++count;
  }
  return label;
}

}  // namespace

std::vector<IndexSet> conjugacy_classes(const Group& group) {
  require_structure_cap(group, "conjugacy classes");
  const auto gens = generating_set(group);
  std::vector<char> seen(group.order(), 0);
  std::vector<IndexSet> classes;
  for (std::uint64_t x = 0; x < group.order(); ++x) {
    if (seen[x]) continue;
    IndexSet cls{static_cast<Index>(x)};
    seen[x] = 1;
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (Index g : gens) {
        const Index y = group.conjugate(g, cls[i]);
        if (!seen[y]) {
          seen[y] = 1;
          cls.push_back(y);
        }
      }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

IndexSet center(const Group& group) {
  require_structure_cap(group, "center");
  const auto gens = generating_set(group);
  IndexSet z;
  for (std::uint64_t x = 0; x < group.order(); ++x) {
    const auto xi = static_cast<Index>(x);
    bool central = true;
    for (Index g : gens)
      if (group.mul(xi, g) != group.mul(g, xi)) {
        central = false;
        break;
      }
    if (central) z.push_back(xi);
  }
  return z;
}

// Normal closure of the commutators of a generating set.
IndexSet commutator_subgroup(const Group& group) {
  require_structure_cap(group, "commutator subgroup");
  const auto gens = generating_set(group);
  std::vector<Index> sub_gens;
  for (Index a : gens)
    for (Index b : gens) {
      const Index c = group.mul(group.mul(a, b), group.mul(group.inv(a), group.inv(b)));
      if (c != Group::identity()) sub_gens.push_back(c);
    }
  IndexSet sub = closure(group, sub_gens);
  bool changed = true;
  while (changed) {
    changed = false;
    for (Index g : gens) {
      for (std::size_t i = 0; i < sub_gens.size(); ++i) {
        const Index c = group.conjugate(g, sub_gens[i]);
        if (!contains(sub, c)) {
          sub_gens.push_back(c);
          sub = closure(group, sub_gens);
          changed = true;
        }
      }
    }
  }
  return sub;
}

std::vector<std::uint64_t> abelianization_invariants(const Group& group) {
  const IndexSet derived = commutator_subgroup(group);
  std::size_t count = 0;
  const auto label = coset_labels(group, derived, count);
  if (count == 1) return {};
  // Order of each coset in G/[G,G].
  std::vector<Index> rep(count);
  for (std::uint64_t g = group.order(); g-- > 0;) rep[label[g]] = static_cast<Index>(g);
  std::vector<std::uint64_t> coset_order(count);
  for (std::size_t c = 0; c < count; ++c) {
    std::uint64_t k = 1;
    Index x = rep[c];
    while (label[x] != label[0]) {
      x = group.mul(x, rep[c]);
      ++k;
    }
    coset_order[c] = k;
  }
  // For each prime p, |A[p^k]| = p^(sum_i min(e_i, k)) recovers the
  // p-primary exponents e_i.
  std::map<std::uint64_t, std::vector<unsigned>> primary;  // p -> exponents, descending
  std::uint64_t rest = count;
  for (std::uint64_t p = 2; rest > 1; ++p) {
    if (rest % p != 0) continue;
    unsigned total_exp = 0;
    while (rest % p == 0) {
      rest /= p;
      ++total_exp;
    }
    std::vector<unsigned> s{0};
    std::uint64_t pk = 1;
    while (s.back() < total_exp) {
      pk *= p;
      std::uint64_t hits = 0;
      for (std::uint64_t o : coset_order) hits += (pk % o == 0);
      unsigned e = 0;
      while (hits > 1) {
        hits /= p;
        ++e;
      }
      s.push_back(e);
    }
    // Number of cyclic factors with exponent >= k is s_k - s_{k-1}.
    std::vector<unsigned> exps;
    for (std::size_t k = s.size() - 1; k >= 1; --k) {
      const unsigned at_least_k = s[k] - s[k - 1];
      const unsigned at_least_k1 = (k + 1 < s.size()) ? s[k + 1] - s[k] : 0;
      for (unsigned i = at_least_k1; i < at_least_k; ++i) exps.push_back(static_cast<unsigned>(k));
    }
    primary[p] = exps;
  }
  std::size_t factors = 0;
  for (auto& [p, e] : primary) factors = std::max(factors, e.size());
  std::vector<std::uint64_t> out(factors, 1);
  // Largest exponents go to the last factor so each divides the next.
  for (auto& [p, e] : primary)
    for (std::size_t i = 0; i < e.size(); ++i) out[factors - 1 - i] *= checked_pow(p, e[i]);
  return out;
}

bool is_perfect(const Group& group) { return abelianization_invariants(group).empty(); }

}  // namespace wordlab
