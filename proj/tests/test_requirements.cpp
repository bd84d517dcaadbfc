// Copyright (c) 2026 roadreq contributors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "roadreq/dimacs.hpp"
#include "roadreq/requirements.hpp"

using namespace roadreq;

TEST_CASE("road label table layout") {
  const LabelTable& t = road_labels();
  REQUIRE(t.size() == 41);
  int agents = 0, actions = 0, locations = 0;
  for (const auto& e : t.entries()) {
    switch (e.group) {
      case LabelGroup::Agent: ++agents; break;
      case LabelGroup::Action: ++actions; break;
      case LabelGroup::Location: ++locations; break;
    }
  }
  CHECK(agents == 10);
  CHECK(actions == 19);
  CHECK(locations == 12);
  CHECK(t.index_of("Ped") == 0);
  CHECK(t.index_of("TL") == 8);
  CHECK(t.index_of("OthTL") == 9);
  CHECK(t.index_of("MovAway") == 10);
  CHECK(t.index_of("VehLane") == 29);
  CHECK(t.index_of("Parking") == 40);
  // case-sensitive, exact
  CHECK(!t.index_of("tl"));
  CHECK(!t.index_of("ped"));
  CHECK(!t.index_of(""));
}

TEST_CASE("clause canonicalization and invariants") {
  Clause c({{5, false}, {2, true}});
  REQUIRE(c.size() == 2);
  CHECK(c.literals()[0] == Literal{2, true});
  CHECK(c.literals()[1] == Literal{5, false});
  CHECK(c.positive_mask() == (uint64_t{1} << 2));
  CHECK(c.negative_mask() == (uint64_t{1} << 5));

  CHECK_THROWS_AS(Clause(std::vector<Literal>{}), std::invalid_argument);
  CHECK_THROWS_AS(Clause({{1, true}, {1, true}}), std::invalid_argument);
  CHECK_THROWS_AS(Clause({{1, true}, {1, false}}), std::invalid_argument);

  // equality ignores literal input order and provenance
  Clause a({{0, true}, {3, false}}, "{L0, not L3}");
  Clause b({{3, false}, {0, true}});
  CHECK(a == b);
}

TEST_CASE("parse_requirements grammar") {
  const LabelTable& t = road_labels();

  SUBCASE("positive and negated items") {
    RequirementSet rs = parse_requirements("{Ped, not PushObj}\n", t);
    REQUIRE(rs.size() == 1);
    CHECK(rs.clause(0) == Clause({{*t.index_of("Ped"), true}, {*t.index_of("PushObj"), false}}));
  }
  SUBCASE("all-negative clause") {
    RequirementSet rs = parse_requirements("{not Red, not Green}", t);
    REQUIRE(rs.size() == 1);
    CHECK(rs.clause(0) == Clause({{*t.index_of("Red"), false}, {*t.index_of("Green"), false}}));
  }
  SUBCASE("comments, blank lines, CRLF") {
    RequirementSet rs = parse_requirements("# header\r\n\r\n{Ped, Cyc}\r\n# trailing\n", t);
    REQUIRE(rs.size() == 1);
    CHECK(rs.clause(0).size() == 2);
  }
  SUBCASE("clause order follows the file") {
    RequirementSet rs = parse_requirements("{Ped}\n{Car}\n{Cyc}\n", t);
    REQUIRE(rs.size() == 3);
    CHECK(rs.clause(1) == Clause({{1, true}}));
  }

  SUBCASE("tautological clause") {
    try {
      parse_requirements("{Ped, not Ped}", t);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.kind == ParseErrorKind::TautologicalClause);
      CHECK(e.line == 1);
    }
  }
  SUBCASE("duplicate literal") {
    try {
      parse_requirements("# c\n{Ped, Ped}", t);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.kind == ParseErrorKind::DuplicateLiteral);
      CHECK(e.line == 2);
    }
  }
  SUBCASE("unknown abbreviation reports line and token") {
    try {
      parse_requirements("{Ped}\n{Pedestrian, Car}", t);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.kind == ParseErrorKind::UnknownAbbrev);
      CHECK(e.line == 2);
      CHECK(e.token == "Pedestrian");
    }
  }
  SUBCASE("empty clause") {
    CHECK_THROWS_AS(parse_requirements("{}", t), ParseError);
  }
  SUBCASE("malformed line") {
    try {
      parse_requirements("Ped, Car", t);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.kind == ParseErrorKind::Malformed);
    }
  }
}

TEST_CASE("parse after serialize is the identity") {
  SUBCASE("shipped corpus") {
    const RequirementSet& rs = road_requirements();
    RequirementSet again = parse_requirements(serialize_requirements(rs), rs.labels());
    REQUIRE(again.size() == rs.size());
    for (int i = 0; i < rs.size(); ++i) CHECK(again.clause(i) == rs.clause(i));
  }
  SUBCASE("random sets") {
    std::mt19937 rng(20260809);
    for (int trial = 0; trial < 50; ++trial) {
      RequirementSet rs = testutil::random_instance(rng, 12, 20);
      RequirementSet again = parse_requirements(serialize_requirements(rs), rs.labels());
      REQUIRE(again.size() == rs.size());
      for (int i = 0; i < rs.size(); ++i) CHECK(again.clause(i) == rs.clause(i));
    }
  }
}

TEST_CASE("shipped corpus structure") {
  const RequirementSet& rs = road_requirements();
  REQUIRE(rs.size() == 243);

  int all_positive = 0, all_negative = 0;
  for (const Clause& c : rs.clauses()) {
    bool any_pos = c.positive_mask() != 0;
    bool any_neg = c.negative_mask() != 0;
    if (!any_neg) ++all_positive;
    if (!any_pos) ++all_negative;
    if (c.size() > 2 && any_neg)
      CHECK(std::popcount(c.negative_mask()) == 1);  // long clauses: at most one negation
  }
  CHECK(all_positive == 2);
  CHECK(all_negative == 214);
}

TEST_CASE("stats on the shipped corpus") {
  RequirementStats st = stats(road_requirements());
  CHECK(st.n_clauses == 243);
  CHECK(std::abs(st.avg_len - 2.86) <= 0.005);
  CHECK(st.occ_min == 2);
  CHECK(std::abs(st.occ_avg - 16.95) <= 0.005);
  CHECK(st.occ_max == 31);
  // Red, Amber and Green never occur positively; every label occurs negatively.
  CHECK(st.n_labels_positive == 38);
  CHECK(st.n_labels_negative == 41);

  REQUIRE(st.histogram.size() == 9);
  const LengthBucket& two = st.histogram.front();
  CHECK(two.length == 2);
  CHECK(two.count == 215);
  CHECK(std::abs(two.avg_negative - 1.995) <= 0.005);
  CHECK(std::abs(two.avg_positive - 0.005) <= 0.005);
  int counts[9] = {215, 5, 1, 6, 6, 1, 1, 1, 7};
  int lengths[9] = {2, 3, 7, 8, 9, 10, 12, 14, 15};
  long bucket_sum = 0;
  for (int i = 0; i < 9; ++i) {
    CHECK(st.histogram[i].length == lengths[i]);
    CHECK(st.histogram[i].count == counts[i]);
    bucket_sum += st.histogram[i].count;
  }
  CHECK(bucket_sum == st.n_clauses);
  CHECK(std::abs(st.total_avg_negative - 1.872) <= 0.001);
  CHECK(std::abs(st.total_avg_positive - 0.988) <= 0.001);
}

TEST_CASE("stats on degenerate sets") {
  SUBCASE("single unit clause") {
    RequirementSet rs(LabelTable::synthetic(3), {Clause({{0, true}})});
    RequirementStats st = stats(rs);
    CHECK(st.n_clauses == 1);
    CHECK(st.avg_len == 1.0);
    CHECK(st.occ_max == 1);
    CHECK(st.occ_min == 0);  // labels 1 and 2 never occur
    CHECK(st.n_labels_positive == 1);
    CHECK(st.n_labels_negative == 0);
  }
  SUBCASE("empty set") {
    RequirementSet rs(LabelTable::synthetic(4), {});
    RequirementStats st = stats(rs);
    CHECK(st.n_clauses == 0);
    CHECK(st.avg_len == 0.0);
    CHECK(st.histogram.empty());
  }
}

TEST_CASE("dimacs export") {
  SUBCASE("literal encoding") {
    RequirementSet rs(LabelTable::synthetic(41), {Clause({{0, true}, {2, false}})});
    std::string text = export_dimacs(rs);
    CHECK(text.find("p cnf 41 1\n") != std::string::npos);
    CHECK(text.find("1 -3 0\n") != std::string::npos);
  }
  SUBCASE("empty set") {
    RequirementSet rs(LabelTable::synthetic(41), {});
    std::string text = export_dimacs(rs);
    CHECK(text.find("p cnf 41 0\n") != std::string::npos);
    CHECK(text.substr(text.find("p cnf")) == "p cnf 41 0\n");
  }
  SUBCASE("shipped corpus has one body line per clause") {
    std::string text = export_dimacs(road_requirements());
    long body = 0;
    size_t pos = 0;
    while ((pos = text.find(" 0\n", pos)) != std::string::npos) {
      ++body;
      pos += 3;
    }
    CHECK(body == 243);
  }
  SUBCASE("export then import round-trips") {
    const RequirementSet& rs = road_requirements();
    RequirementSet again = parse_dimacs(export_dimacs(rs));
    REQUIRE(again.size() == rs.size());
    CHECK(again.labels() == rs.labels());
    for (int i = 0; i < rs.size(); ++i) CHECK(again.clause(i) == rs.clause(i));
  }
}
