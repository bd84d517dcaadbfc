// Copyright (c) 2026 roadreq contributors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "roadreq/admissibility.hpp"

using namespace roadreq;

namespace {

// Locates a shipped clause by its literal set.
int find_clause(const RequirementSet& rs, const Clause& c) {
  for (int i = 0; i < rs.size(); ++i)
    if (rs.clause(i) == c) return i;
  return -1;
}

ScoreVector constant_scores(int n, double v, std::string id = {}) {
  return ScoreVector(std::vector<double>(n, v), std::move(id));
}

}  // namespace

TEST_CASE("threshold semantics") {
  ScoreVector sv({0.6, 0.4, 0.5});
  Prediction p = threshold(sv, 0.5);
  CHECK(p.positive(0));
  CHECK(!p.positive(1));
  CHECK(!p.positive(2));  // a score equal to theta is negative

  // theta 0 turns every strictly positive score positive
  Prediction p0 = threshold(ScoreVector({0.01, 0.0, 1.0}), 0.0);
  CHECK(p0.positive(0));
  CHECK(!p0.positive(1));
  CHECK(p0.positive(2));

  CHECK_THROWS_AS(threshold(sv, -0.1), std::domain_error);
  CHECK_THROWS_AS(threshold(sv, 1.1), std::domain_error);
}

TEST_CASE("threshold is antitone in theta") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    ScoreVector sv = testutil::random_scores(rng, 41);
    std::uniform_real_distribution<double> td(0.0, 1.0);
    double t1 = td(rng), t2 = td(rng);
    if (t1 > t2) std::swap(t1, t2);
    uint64_t hi = threshold(sv, t1).bits();
    uint64_t lo = threshold(sv, t2).bits();
    CHECK((lo & ~hi) == 0);  // raising theta never turns a label positive
  }
}

TEST_CASE("check against the shipped corpus") {
  const RequirementSet& rs = road_requirements();
  const LabelTable& t = rs.labels();

  SUBCASE("red and green together violate their exclusion") {
    int red_green = find_clause(
        rs, Clause({{*t.index_of("Red"), false}, {*t.index_of("Green"), false}}));
    REQUIRE(red_green >= 0);
    // a traffic light showing red and green in the AV lane; otherwise consistent
    Prediction p = Prediction::all_negative(41);
    p.set(*t.index_of("TL"), true);
    p.set(*t.index_of("Red"), true);
    p.set(*t.index_of("Green"), true);
    p.set(*t.index_of("VehLane"), true);
    ViolationReport rep = check(rs, p);
    CHECK(!rep.admissible);
    CHECK(rep.violated == std::vector<int>{red_green});
  }

  SUBCASE("all-negative violates exactly the two all-positive clauses") {
    ViolationReport rep = check(rs, Prediction::all_negative(41));
    REQUIRE(rep.violated.size() == 2);
    for (int idx : rep.violated) CHECK(rs.clause(idx).negative_mask() == 0);
  }

  SUBCASE("all-positive violates exactly the 214 all-negative clauses") {
    ViolationReport rep = check(rs, Prediction::all_positive(41));
    REQUIRE(rep.violated.size() == 214);
    for (int idx : rep.violated) CHECK(rs.clause(idx).positive_mask() == 0);
  }

  SUBCASE("an admissible prediction") {
    // a stopped car in the AV lane
    Prediction p = Prediction::all_negative(41);
    p.set(*t.index_of("Car"), true);
    p.set(*t.index_of("Stop"), true);
    p.set(*t.index_of("VehLane"), true);
    CHECK(check(rs, p).admissible);
  }
}

TEST_CASE("satisfied clauses stay satisfied when a literal polarity is adopted") {
  std::mt19937 rng(99);
  const RequirementSet& rs = road_requirements();
  for (int trial = 0; trial < 30; ++trial) {
    Prediction p(rng(), 41);
    ViolationReport before = check(rs, p);
    for (int idx : before.violated) {
      const Clause& c = rs.clause(idx);
      for (const Literal& l : c.literals()) {
        Prediction q = p;
        q.set(l.label, l.positive);
        ViolationReport after = check(rs, q);
        CHECK(std::find(after.violated.begin(), after.violated.end(), idx) ==
              after.violated.end());
      }
    }
  }
}

TEST_CASE("corpus metrics anchors") {
  const RequirementSet& rs = road_requirements();

  SUBCASE("all-zero scores at theta 0.5") {
    std::vector<ScoreVector> svs(5, constant_scores(41, 0.0));
    CorpusMetrics m = corpus_metrics(rs, svs, 0.5);
    CHECK(m.pct_nonadmissible == 100.0);
    CHECK(m.avg_violations == 2.0);
    CHECK(m.pct_constraints_violated == doctest::Approx(100.0 * 2 / 243));
  }
  SUBCASE("all-one scores at theta 0.5") {
    std::vector<ScoreVector> svs(3, constant_scores(41, 1.0));
    CorpusMetrics m = corpus_metrics(rs, svs, 0.5);
    CHECK(m.pct_nonadmissible == 100.0);
    CHECK(m.avg_violations == 214.0);
    CHECK(m.pct_constraints_violated == doctest::Approx(100.0 * 214 / 243));
  }
  SUBCASE("single admissible prediction") {
    std::vector<double> scores(41, 0.0);
    scores[1] = 0.9;   // Car
    scores[14] = 0.9;  // Stop
    scores[29] = 0.9;  // VehLane
    std::vector<ScoreVector> svs{ScoreVector(scores)};
    CorpusMetrics m = corpus_metrics(rs, svs, 0.5);
    CHECK(m.pct_nonadmissible == 0.0);
    CHECK(m.avg_violations == 0.0);
    CHECK(m.pct_constraints_violated == 0.0);
  }
  SUBCASE("empty corpus") {
    std::vector<ScoreVector> svs;
    CHECK_THROWS_AS(corpus_metrics(rs, svs, 0.5), EmptyCorpus);
  }
  SUBCASE("percentage is exact for crisp corpora") {
    std::vector<ScoreVector> svs;
    for (int i = 0; i < 4; ++i) svs.push_back(constant_scores(41, 0.0));
    std::vector<double> scores(41, 0.0);
    scores[1] = scores[14] = scores[29] = 1.0;
    svs.push_back(ScoreVector(scores));
    CorpusMetrics m = corpus_metrics(rs, svs, 0.5);
    CHECK(m.pct_nonadmissible == 100.0 * 4 / 5);
  }
}

TEST_CASE("metrics sweep") {
  const RequirementSet& rs = road_requirements();
  std::mt19937 rng(12345);
  std::vector<ScoreVector> svs;
  for (int i = 0; i < 40; ++i) svs.push_back(testutil::random_scores(rng, 41));

  SUBCASE("single theta reduces to corpus_metrics") {
    double theta[] = {0.5};
    auto rows = metrics_sweep(rs, svs, theta);
    REQUIRE(rows.size() == 1);
    CorpusMetrics direct = corpus_metrics(rs, svs, 0.5);
    CHECK(rows[0].second.pct_nonadmissible == direct.pct_nonadmissible);
    CHECK(rows[0].second.avg_violations == direct.avg_violations);
    CHECK(rows[0].second.pct_constraints_violated == direct.pct_constraints_violated);
  }
  SUBCASE("each sweep row matches an independent computation") {
    std::vector<double> thetas;
    for (int i = 1; i <= 9; ++i) thetas.push_back(i / 10.0);
    auto rows = metrics_sweep(rs, svs, thetas);
    REQUIRE(rows.size() == 9);
    for (size_t i = 0; i < rows.size(); ++i) {
      CHECK(rows[i].first == thetas[i]);
      CorpusMetrics direct = corpus_metrics(rs, svs, thetas[i]);
      CHECK(rows[i].second.pct_nonadmissible == direct.pct_nonadmissible);
      CHECK(rows[i].second.avg_violations == direct.avg_violations);
      CHECK(rows[i].second.pct_constraints_violated == direct.pct_constraints_violated);
    }
  }
}

TEST_CASE("accumulator merge is order independent") {
  const RequirementSet& rs = road_requirements();
  std::mt19937 rng(5);
  std::vector<ViolationReport> reports;
  for (int i = 0; i < 24; ++i) reports.push_back(check(rs, Prediction(rng(), 41)));

  MetricsAccumulator whole(rs.size());
  for (const auto& r : reports) whole.add(r);

  MetricsAccumulator a(rs.size()), b(rs.size()), c(rs.size());
  for (size_t i = 0; i < reports.size(); ++i)
    (i % 3 == 0 ? a : i % 3 == 1 ? b : c).add(reports[i]);
  MetricsAccumulator merged(rs.size());
  merged.merge(c);
  merged.merge(a);
  merged.merge(b);

  CorpusMetrics m1 = whole.finalize(), m2 = merged.finalize();
  CHECK(m1.pct_nonadmissible == m2.pct_nonadmissible);
  CHECK(m1.avg_violations == m2.avg_violations);
  CHECK(m1.pct_constraints_violated == m2.pct_constraints_violated);
}
