// Copyright (c) 2026 roadreq contributors
// SPDX-License-Identifier: Apache-2.0
#include "roadreq/admissibility.hpp"

namespace roadreq {

ViolationReport check(const RequirementSet& rs, const Prediction& p) {
  ViolationReport report;
  const uint64_t bits = p.bits();
  for (int i = 0; i < rs.size(); ++i) {
    const Clause& c = rs.clause(i);
    bool satisfied = (c.positive_mask() & bits) != 0 || (c.negative_mask() & ~bits) != 0;
    if (!satisfied) report.violated.push_back(i);
  }
  report.admissible = report.violated.empty();
  return report;
}

MetricsAccumulator::MetricsAccumulator(int n_clauses)
    : n_clauses_(n_clauses), violated_once_((n_clauses + 63) / 64, 0) {}

void MetricsAccumulator::add(const ViolationReport& report) {
  ++n_items_;
  if (!report.admissible) ++n_nonadmissible_;
  total_violations_ += static_cast<long>(report.violated.size());
  for (int idx : report.violated) violated_once_[idx / 64] |= uint64_t{1} << (idx % 64);
}

void MetricsAccumulator::merge(const MetricsAccumulator& other) {
  n_items_ += other.n_items_;
  n_nonadmissible_ += other.n_nonadmissible_;
  total_violations_ += other.total_violations_;
  for (size_t i = 0; i < violated_once_.size(); ++i) violated_once_[i] |= other.violated_once_[i];
}

CorpusMetrics MetricsAccumulator::finalize() const {
  if (n_items_ == 0) throw EmptyCorpus();
  long distinct = 0;
  for (uint64_t word : violated_once_) distinct += __builtin_popcountll(word);
  CorpusMetrics m;
  m.pct_nonadmissible = 100.0 * double(n_nonadmissible_) / double(n_items_);
  m.avg_violations = double(total_violations_) / double(n_items_);
  m.pct_constraints_violated = n_clauses_ == 0 ? 0.0 : 100.0 * double(distinct) / double(n_clauses_);
  return m;
}

CorpusMetrics corpus_metrics(const RequirementSet& rs, std::span<const ScoreVector> svs,
                             double theta) {
  MetricsAccumulator acc(rs.size());
  for (const ScoreVector& sv : svs) acc.add(check(rs, threshold(sv, theta)));
  return acc.finalize();
}

std::vector<std::pair<double, CorpusMetrics>> metrics_sweep(const RequirementSet& rs,
                                                            std::span<const ScoreVector> svs,
                                                            std::span<const double> thetas) {
  std::vector<std::pair<double, CorpusMetrics>> rows;
  rows.reserve(thetas.size());
  for (double theta : thetas) rows.emplace_back(theta, corpus_metrics(rs, svs, theta));
  return rows;
}

}  // namespace roadreq
