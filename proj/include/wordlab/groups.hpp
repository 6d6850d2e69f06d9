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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wordlab {

// Dense carrier index. Index 0 is always the identity.
using Index = std::uint32_t;

// Sorted ascending list of carrier indices.
using IndexSet = std::vector<Index>;

enum class GroupKind { cyclic, dihedral, symmetric, alternating, sl2, psl2, cayley_file };

struct GroupSpec {
  GroupKind kind = GroupKind::cyclic;
  // n for cyclic/dihedral/symmetric/alternating, p for sl2/psl2.
  std::uint64_t parameter = 1;
  std::string path;  // cayley_file only

  // Accepts "cyclic:6", "dihedral:4", "symmetric:3", "alternating:5",
  // "sl2:5", "psl2:7", "cayley-file:<path>".
  static GroupSpec parse(std::string_view text);
  std::string str() const;
  // Throws unsupported_parameter when a bound is exceeded.
  void validate() const;

  bool operator==(const GroupSpec&) const = default;
};

struct Element {
  std::uint64_t group_id = 0;
  Index index = 0;

  bool operator==(const Element&) const = default;
};

class Group;
using GroupPtr = std::shared_ptr<const Group>;

// Multiplication on canonical forms, resolved back to dense indices.
class GroupBackend {
 public:
  virtual ~GroupBackend() = default;
  virtual Index multiply(Index a, Index b) const = 0;
  virtual Index invert(Index a) const = 0;
  virtual std::string format(Index a) const;
  // Parses a backend-specific element notation; nullopt if not recognised.
  virtual std::optional<Index> parse(std::string_view text) const;
};

// Bookkeeping for a group built as G/N.
struct QuotientInfo {
  GroupPtr parent;
  std::vector<Index> coset_of;        // parent index -> quotient index
  std::vector<Index> representative;  // quotient index -> parent index
};

// Bookkeeping for a direct power B^N. Component 0 is the least significant
// digit of the mixed-radix index.
struct DirectPowerInfo {
  GroupPtr base;
  unsigned factors = 0;

  std::vector<Index> components(Index index) const;
  Index compose(std::span<const Index> components) const;
};

// An immutable finite group over a deterministic enumeration of its carrier.
// Safe to share across threads.
class Group {
 public:
  static constexpr std::uint64_t kStructureCap = 20000;
  static constexpr std::uint64_t kTableCap = 2048;
  static constexpr std::uint64_t kCarrierCap = 10'000'000;

  Group(std::string name, std::optional<GroupSpec> spec, std::uint64_t order,
        std::unique_ptr<GroupBackend> backend);
  Group(const Group&) = delete;
  Group& operator=(const Group&) = delete;

  std::uint64_t id() const noexcept { return id_; }
  std::uint64_t order() const noexcept { return order_; }
  const std::string& name() const noexcept { return name_; }
  const std::optional<GroupSpec>& spec() const noexcept { return spec_; }

  static constexpr Index identity() noexcept { return 0; }

  Index mul(Index a, Index b) const {
    if (table_ != nullptr) return table_[std::size_t{a} * order_ + b];
    return backend_->multiply(a, b);
  }
  Index inv(Index a) const { return inverse_[a]; }
  Index pow(Index a, std::int64_t k) const;
  Index conjugate(Index g, Index x) const { return mul(mul(g, x), inv(g)); }
  std::uint64_t element_order(Index a) const;

  // Checked element-level API. Mixing elements of different groups throws
  // group_mismatch.
  Element element(Index index) const;
  Element multiply(Element a, Element b) const;
  Element invert(Element a) const;
  Element power(Element a, std::int64_t k) const;
  void check(Element a) const;

  std::string format(Index a) const { return backend_->format(a); }
  // "#k" or "k" is a raw index; permutation groups also take cycle notation
  // "(1 2 3)(4 5)", matrix groups "[a,b,c,d]". Throws invalid_argument.
  Index parse_element(std::string_view text) const;

  const QuotientInfo* quotient_info() const noexcept { return quotient_.get(); }
  const DirectPowerInfo* power_info() const noexcept { return power_.get(); }

 private:
  friend GroupPtr quotient_by_normal_subgroup(const GroupPtr&, const IndexSet&,
                                              const std::string&);
  friend GroupPtr direct_power(const GroupPtr&, unsigned);
  void finish();

  std::uint64_t id_;
  std::string name_;
  std::optional<GroupSpec> spec_;
  std::uint64_t order_;
  std::unique_ptr<GroupBackend> backend_;
  std::vector<Index> table_storage_;
  const Index* table_ = nullptr;
  std::vector<Index> inverse_;
  std::shared_ptr<const QuotientInfo> quotient_;
  std::shared_ptr<const DirectPowerInfo> power_;
};

GroupPtr construct_group(const GroupSpec& spec);
inline GroupPtr construct_group(std::string_view spec) {
  return construct_group(GroupSpec::parse(spec));
}

// Cayley-table file: line 1 is the order n, then n rows of n indices; row g
// column h holds g*h and index 0 must be the identity. Throws
// malformed_cayley_table naming the offending row.
GroupPtr read_cayley_table(std::istream& in, const std::string& source_name);
GroupPtr load_cayley_table(const std::string& path);
GroupPtr cayley_group(std::vector<Index> table, std::uint64_t order, std::string name,
                      std::optional<GroupSpec> spec = std::nullopt);

GroupPtr quotient_by_normal_subgroup(const GroupPtr& group, const IndexSet& normal,
                                     const std::string& name);
GroupPtr quotient_by_center(const GroupPtr& group);
// B^N with |B|^N <= kCarrierCap.
GroupPtr direct_power(const GroupPtr& base, unsigned factors);

IndexSet closure(const Group& group, std::span<const Index> gens);
IndexSet closure(const Group& group, std::span<const Element> gens);
bool contains(const IndexSet& set, Index x);

// Greedy generating set: scans the carrier in index order and keeps every
// element not already in the span of the ones kept so far.
std::vector<Index> generating_set(const Group& group);
std::vector<IndexSet> conjugacy_classes(const Group& group);

IndexSet center(const Group& group);
IndexSet commutator_subgroup(const Group& group);
// Invariant factors of G/[G,G], each dividing the next. Empty iff perfect.
std::vector<std::uint64_t> abelianization_invariants(const Group& group);
bool is_perfect(const Group& group);

}  // namespace wordlab
