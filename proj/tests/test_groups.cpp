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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "oracles.hpp"
#include "wordlab/error.hpp"
#include "wordlab/groups.hpp"
#include "wordlab/rng.hpp"

using namespace wordlab;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::invalid_argument;
}

const char* const kSmallCatalog[] = {"cyclic:1",      "cyclic:6",      "cyclic:12",    "dihedral:3",
                                     "dihedral:10",   "symmetric:3",   "symmetric:4",  "symmetric:5",
                                     "alternating:4", "alternating:5", "alternating:6", "sl2:3",
                                     "sl2:5",         "sl2:7",         "psl2:5",       "psl2:7",
                                     "psl2:11",       "psl2:13"};

}  // namespace

TEST_CASE("constructed orders") {
  CHECK(construct_group("cyclic:6")->order() == 6);
  CHECK(construct_group("dihedral:5")->order() == 10);
  CHECK(construct_group("symmetric:4")->order() == 24);
  CHECK(construct_group("alternating:5")->order() == 60);
  CHECK(construct_group("alternating:6")->order() == 360);
  CHECK(construct_group("symmetric:9")->order() == 362880);
  for (std::uint64_t p : {3, 5, 7, 11, 13}) {
    const auto sl = construct_group("sl2:" + std::to_string(p));
    const auto psl = construct_group("psl2:" + std::to_string(p));
    CHECK(sl->order() == p * (p * p - 1));
    CHECK(psl->order() == p * (p * p - 1) / 2);
    // PSL(2,p) agrees with SL(2,p) modulo its center.
    CHECK(quotient_by_center(sl)->order() == psl->order());
  }
}

TEST_CASE("spec validation") {
  CHECK(code_of([] { construct_group("sl2:9"); }) == ErrorCode::unsupported_parameter);
  CHECK(code_of([] { construct_group("psl2:2"); }) == ErrorCode::unsupported_parameter);
  CHECK(code_of([] { construct_group("psl2:101"); }) == ErrorCode::unsupported_parameter);
  CHECK(code_of([] { construct_group("symmetric:10"); }) == ErrorCode::unsupported_parameter);
  CHECK(code_of([] { construct_group("cyclic:0"); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { GroupSpec::parse("quaternion:8"); }) == ErrorCode::invalid_argument);
  CHECK(GroupSpec::parse("psl2:7").str() == "psl2:7");
  CHECK(GroupSpec::parse(" cayley-file: t.txt ").path == "t.txt");
  // Largest admissible prime: 97 * (97^2 - 1) = 912576.
  CHECK(construct_group("psl2:97")->order() == 97 * (97 * 97 - 1) / 2);
}

TEST_CASE("group axioms on random triples") {
  for (const char* spec : kSmallCatalog) {
    CAPTURE(spec);
    const auto G = construct_group(spec);
    Rng rng = Rng::stream(11, {G->order()});
    for (int i = 0; i < 2000; ++i) {
      const Index a = static_cast<Index>(rng.below(G->order()));
      const Index b = static_cast<Index>(rng.below(G->order()));
      const Index c = static_cast<Index>(rng.below(G->order()));
      REQUIRE(G->mul(G->mul(a, b), c) == G->mul(a, G->mul(b, c)));
      REQUIRE(G->mul(a, G->inv(a)) == 0);
      REQUIRE(G->mul(G->inv(a), a) == 0);
      REQUIRE(G->mul(0, a) == a);
      REQUIRE(G->mul(a, 0) == a);
    }
  }
}

TEST_CASE("left multiplication permutes the carrier") {
  for (const char* spec : {"symmetric:4", "psl2:7", "dihedral:6"}) {
    const auto G = construct_group(spec);
    for (Index g : {Index{1}, static_cast<Index>(G->order() - 1)}) {
      std::vector<char> hit(G->order(), 0);
      for (Index x = 0; x < G->order(); ++x) hit[G->mul(g, x)] = 1;
      CHECK(std::count(hit.begin(), hit.end(), 1) == static_cast<long>(G->order()));
    }
  }
}

TEST_CASE("enumeration is deterministic") {
  const auto a = construct_group("psl2:11");
  const auto b = construct_group("psl2:11");
  for (Index x = 0; x < a->order(); x += 17) CHECK(a->format(x) == b->format(x));
  CHECK(a->id() != b->id());
}

TEST_CASE("permutation products match composition of cycles") {
  const auto G = construct_group("symmetric:5");
  for (Index a = 0; a < G->order(); a += 7)
    for (Index b = 0; b < G->order(); b += 11) {
      const auto pa = oracle::perm_from_cycles(G->format(a), 5);
      const auto pb = oracle::perm_from_cycles(G->format(b), 5);
      CHECK(oracle::perm_from_cycles(G->format(G->mul(a, b)), 5) == oracle::compose(pa, pb));
    }
  const Index c = G->parse_element("(1 2 3)");
  CHECK(G->element_order(c) == 3);
  CHECK(G->parse_element("(1 2)(1 3)") == G->parse_element("(1 3 2)"));
  CHECK(code_of([&] { construct_group("alternating:5")->parse_element("(1 2)"); }) ==
        ErrorCode::invalid_argument);
}

TEST_CASE("matrix elements") {
  const auto G = construct_group("sl2:5");
  const Index m = G->parse_element("[1,1,0,1]");
  CHECK(G->element_order(m) == 5);
  CHECK(G->format(G->pow(m, 2)) == "[1,2,0,1]");
  const Index minus = G->parse_element("[4,0,0,4]");
  CHECK(G->mul(minus, minus) == 0);
  CHECK(code_of([&] { G->parse_element("[1,1,1,1]"); }) == ErrorCode::invalid_argument);
  // In PSL(2,5), -I is the identity.
  const auto P = construct_group("psl2:5");
  CHECK(P->parse_element("[4,0,0,4]") == 0);
  CHECK(P->parse_element("[2,0,0,3]") == P->parse_element("[3,0,0,2]"));
}

TEST_CASE("checked element API") {
  const auto C6 = construct_group("cyclic:6");
  const auto C4 = construct_group("cyclic:4");
  const Element g = C6->element(1);
  CHECK(C6->multiply(g, C6->invert(g)).index == 0);
  CHECK(C6->power(g, 0).index == 0);
  CHECK(C6->power(g, 7) == g);
  CHECK(C6->power(g, -1) == C6->invert(g));
  CHECK(C6->power(g, -13).index == 5);
  CHECK(code_of([&] { C6->multiply(g, C4->element(1)); }) == ErrorCode::group_mismatch);
  CHECK(code_of([&] { C6->element(6); }) == ErrorCode::invalid_argument);
}

TEST_CASE("closure") {
  const auto A5 = construct_group("alternating:5");
  const Index three = A5->parse_element("(1 2 3)");
  const Index five = A5->parse_element("(1 2 3 4 5)");
  CHECK(closure(*A5, std::vector<Index>{three}).size() == 3);
  const auto full = closure(*A5, std::vector<Index>{five, three});
  CHECK(full.size() == 60);
  CHECK(full.size() == oracle::closure(*A5, {five, three}).size());
  const auto C4 = construct_group("cyclic:4");
  CHECK(closure(*C4, std::vector<Index>{2}) == IndexSet{0, 2});
  const auto C6 = construct_group("cyclic:6");
  CHECK(code_of([&] { closure(*A5, std::vector<Element>{C6->element(1)}); }) == ErrorCode::group_mismatch);
}

TEST_CASE("center and commutator subgroup") {
  const auto SL5 = construct_group("sl2:5");
  const auto Z = center(*SL5);
  CHECK(Z.size() == 2);
  CHECK(contains(Z, SL5->parse_element("[4,0,0,4]")));
  CHECK(quotient_by_center(SL5)->order() == 60);
  CHECK(center(*construct_group("alternating:5")) == IndexSet{0});
  CHECK(center(*construct_group("dihedral:4")).size() == 2);

  const auto S3 = construct_group("symmetric:3");
  CHECK(commutator_subgroup(*S3).size() == 3);
  CHECK(abelianization_invariants(*S3) == std::vector<std::uint64_t>{2});
  CHECK(is_perfect(*construct_group("alternating:5")));
  CHECK(is_perfect(*SL5));
  CHECK_FALSE(is_perfect(*construct_group("cyclic:6")));
  CHECK(abelianization_invariants(*construct_group("cyclic:12")) == std::vector<std::uint64_t>{12});
  CHECK(abelianization_invariants(*construct_group("dihedral:4")) == std::vector<std::uint64_t>{2, 2});
  CHECK(abelianization_invariants(*construct_group("alternating:4")) == std::vector<std::uint64_t>{3});
  const auto C6sq = direct_power(construct_group("cyclic:6"), 2);
  CHECK(abelianization_invariants(*C6sq) == std::vector<std::uint64_t>{6, 6});
  CHECK(abelianization_invariants(*direct_power(construct_group("symmetric:3"), 2)) ==
        std::vector<std::uint64_t>{2, 2});
  CHECK(code_of([] { center(*construct_group("symmetric:8")); }) == ErrorCode::too_large);
}

TEST_CASE("structural invariants") {
  for (const char* spec : {"symmetric:4", "dihedral:6", "sl2:3", "sl2:5", "alternating:4"}) {
    CAPTURE(spec);
    const auto G = construct_group(spec);
    const auto Z = center(*G);
    CHECK(G->order() % Z.size() == 0);
    CHECK(quotient_by_center(G)->order() == G->order() / Z.size());
    const auto D = commutator_subgroup(*G);
    for (Index g = 0; g < G->order(); ++g)
      for (Index x : D) REQUIRE(contains(D, G->conjugate(g, x)));
    // The center commutes with everything, checked directly.
    for (Index z : Z)
      for (Index g = 0; g < G->order(); ++g) REQUIRE(G->mul(z, g) == G->mul(g, z));
  }
}

TEST_CASE("conjugacy classes against orbit enumeration") {
  for (const char* spec : {"alternating:5", "symmetric:4", "psl2:7", "dihedral:5"}) {
    const auto G = construct_group(spec);
    CHECK(conjugacy_classes(*G).size() == oracle::class_count(*G));
  }
  CHECK(conjugacy_classes(*construct_group("alternating:5")).size() == 5);
}

TEST_CASE("direct power") {
  const auto A5 = construct_group("alternating:5");
  const auto P = direct_power(A5, 2);
  CHECK(P->order() == 3600);
  const auto* info = P->power_info();
  REQUIRE(info != nullptr);
  const Index a = 17, b = 42;
  const Index x = info->compose(std::vector<Index>{a, b});
  CHECK(info->components(x) == std::vector<Index>{a, b});
  const Index y = info->compose(std::vector<Index>{b, a});
  CHECK(info->components(P->mul(x, y)) == std::vector<Index>{A5->mul(a, b), A5->mul(b, a)});
  CHECK(code_of([&] { direct_power(A5, 5); }) == ErrorCode::too_large);
}

TEST_CASE("Cayley table ingestion") {
  // S3 with 0 = e, 1 = r, 2 = r^2, 3 = s, 4 = sr, 5 = sr^2 (s r = r^-1 s).
  const std::string s3 =
      "6\n0 1 2 3 4 5\n1 2 0 5 3 4\n2 0 1 4 5 3\n3 4 5 0 1 2\n4 5 3 2 0 1\n5 3 4 1 2 0\n";
  std::istringstream in(s3);
  const auto G = read_cayley_table(in, "s3.txt");
  CHECK(G->order() == 6);
  CHECK(abelianization_invariants(*G) == std::vector<std::uint64_t>{2});
  CHECK(G->spec()->kind == GroupKind::cayley_file);

  auto message_of = [](const std::string& text) {
    std::istringstream s(text);
    try {
      read_cayley_table(s, "bad.txt");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::malformed_cayley_table);
      return std::string(e.what());
    }
    FAIL("table accepted");
    return std::string();
  };
  CHECK(message_of("").find("empty") != std::string::npos);
  // Row 1 has no inverse: 1*h is never 0.
  CHECK(message_of("3\n0 1 2\n1 1 2\n2 2 1\n").find("row 1") != std::string::npos);
  CHECK(message_of("2\n0 1\n1 1\n").find("row 1") != std::string::npos);
  CHECK(message_of("2\n1 0\n0 1\n").find("identity") != std::string::npos);
  CHECK(message_of("2\n0 1\n1 5\n").find("out of range") != std::string::npos);
  CHECK(message_of("3\n0 1 2\n1 2 0\n").find("rows") != std::string::npos);
  // A Latin square with identity that is not associative (order 5 loop).
  CHECK(message_of("5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n")
            .find("associativity") != std::string::npos);
}
