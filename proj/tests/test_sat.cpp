// Copyright (c) 2026 roadreq contributors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "roadreq/admissibility.hpp"
#include "roadreq/sat.hpp"

using namespace roadreq;

namespace {

RequirementSet make(int n, std::vector<std::vector<Literal>> clauses) {
  std::vector<Clause> cs;
  for (auto& lits : clauses) cs.emplace_back(std::move(lits));
  return RequirementSet(LabelTable::synthetic(n), std::move(cs));
}

}  // namespace

TEST_CASE("solve basics") {
  SUBCASE("empty clause set is satisfiable") {
    RequirementSet rs = make(3, {});
    SolveResult r = solve(rs);
    CHECK(r.sat);
  }
  SUBCASE("contradictory units are unsatisfiable") {
    RequirementSet rs = make(2, {{{0, true}}, {{0, false}}});
    CHECK(!solve(rs).sat);
  }
  SUBCASE("shipped corpus is satisfiable with an admissible witness") {
    const RequirementSet& rs = road_requirements();
    SolveResult r = solve(rs);
    REQUIRE(r.sat);
    CHECK(check(rs, r.model).admissible);
  }
  SUBCASE("deterministic model") {
    const RequirementSet& rs = road_requirements();
    CHECK(solve(rs).model == solve(rs).model);
  }
  SUBCASE("assumptions") {
    RequirementSet rs = make(2, {{{0, true}, {1, true}}});
    Literal assume[] = {{0, false}};
    SolveResult r = solve(rs, assume);
    REQUIRE(r.sat);
    CHECK(!r.model.positive(0));
    CHECK(r.model.positive(1));

    Literal both[] = {{0, false}, {1, false}};
    CHECK(!solve(rs, both).sat);
  }
}

TEST_CASE("solve agrees with brute-force satisfiability") {
  std::mt19937 rng(20260101);
  for (int trial = 0; trial < 400; ++trial) {
    int n = 1 + int(rng() % 12);
    RequirementSet rs = testutil::random_instance(rng, n, 30);
    SolveResult r = solve(rs);
    bool brute = testutil::brute_satisfiable(rs);
    REQUIRE(r.sat == brute);
    if (r.sat) CHECK(check(rs, r.model).admissible);
  }
}

TEST_CASE("entailment") {
  SUBCASE("unit resolution example") {
    RequirementSet rs = make(2, {{{0, false}, {1, false}}, {{1, true}}});
    CHECK(entails(rs, Clause({{0, false}})));
  }
  SUBCASE("empty set entails nothing") {
    RequirementSet rs = make(1, {});
    CHECK(!entails(rs, Clause({{0, true}})));
  }
  SUBCASE("agrees with truth tables") {
    std::mt19937 rng(424242);
    for (int trial = 0; trial < 300; ++trial) {
      int n = 1 + int(rng() % 12);
      RequirementSet rs = testutil::random_instance(rng, n, 24);
      // random candidate clause
      int len = 1 + int(rng() % std::min(n, 3));
      std::vector<int> vars(n);
      for (int i = 0; i < n; ++i) vars[i] = i;
      std::shuffle(vars.begin(), vars.end(), rng);
      std::vector<Literal> lits;
      for (int i = 0; i < len; ++i) lits.push_back({vars[i], rng() % 2 == 0});
      Clause c(std::move(lits));
      CHECK(entails(rs, c) == testutil::brute_entails(rs, c));
    }
  }
  SUBCASE("wider instances") {
    std::mt19937 rng(31337);
    for (int trial = 0; trial < 20; ++trial) {
      RequirementSet rs = testutil::random_instance(rng, 16, 40);
      int len = 1 + int(rng() % 3);
      std::vector<Literal> lits;
      for (int i = 0; i < len; ++i) lits.push_back({int(rng() % 16), rng() % 2 == 0});
      std::sort(lits.begin(), lits.end());
      lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
      bool taut = false;
      for (size_t i = 0; i + 1 < lits.size(); ++i)
        if (lits[i].label == lits[i + 1].label) taut = true;
      if (taut) continue;
      Clause c(std::move(lits));
      CHECK(entails(rs, c) == testutil::brute_entails(rs, c));
    }
  }
}

TEST_CASE("find_redundant") {
  SUBCASE("seeded redundancy") {
    // {+L1} and {not L0} together entail {not L0, not L1}, and
    // {not L0, not L1} with {+L1} entail {not L0}.
    RequirementSet rs = make(2, {{{0, false}, {1, false}}, {{1, true}}, {{0, false}}});
    std::vector<int> red = find_redundant(rs);
    CHECK(red == std::vector<int>{0, 2});
  }
  SUBCASE("empty set") {
    RequirementSet rs = make(3, {});
    CHECK(find_redundant(rs).empty());
  }
  SUBCASE("irredundant set") {
    RequirementSet rs = make(3, {{{0, false}, {1, false}}, {{1, false}, {2, false}}});
    CHECK(find_redundant(rs).empty());
  }
  SUBCASE("agrees with the brute-force definition") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 60; ++trial) {
      int n = 1 + int(rng() % 10);
      RequirementSet rs = testutil::random_instance(rng, n, 14);
      std::vector<int> expected;
      for (int i = 0; i < rs.size(); ++i)
        if (testutil::brute_entails(rs.without_clause(i), rs.clause(i))) expected.push_back(i);
      CHECK(find_redundant(rs) == expected);
    }
  }
}

// The shipped corpus is heavily interdependent: the long agent-action clauses
// force every agent to carry an action, which lets the rest of the set entail
// most pairwise exclusions. The exact entailed-index set is pinned here as a
// regression anchor.
TEST_CASE("shipped corpus entailed clauses") {
  static const std::vector<int> kExpected = {
      0,   2,   3,   4,   5,   6,   7,   8,   10,  14,  15,  16,  19,  20,  21,  22,  35,  37,
      38,  40,  41,  46,  47,  49,  52,  53,  54,  55,  56,  57,  58,  59,  60,  61,  62,  64,
      65,  66,  68,  71,  72,  74,  75,  76,  77,  78,  80,  82,  83,  84,  85,  86,  87,  88,
      89,  90,  91,  92,  93,  94,  95,  96,  97,  99,  100, 102, 103, 104, 105, 106, 107, 109,
      110, 111, 112, 113, 115, 116, 117, 119, 120, 121, 122, 123, 124, 125, 126, 127, 128, 129,
      130, 131, 132, 133, 135, 136, 137, 138, 140, 141, 142, 143, 144, 145, 146, 148, 149, 150,
      151, 152, 153, 155, 156, 157, 158, 160, 161, 163, 168, 169, 170, 171, 172, 174, 201, 202,
      203, 205, 206, 207, 208, 209, 210, 211, 212, 213, 214, 215, 216, 217, 218, 219, 220, 221,
      222, 224, 225, 226, 227, 228, 229, 230, 231, 232, 233, 235, 236, 237, 238, 239, 240, 242};
  REQUIRE(kExpected.size() == 162);
  CHECK(find_redundant(road_requirements()) == kExpected);
}
