// Copyright (c) 2026 roadreq contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <utility>
#include <vector>

#include "roadreq/prediction.hpp"
#include "roadreq/requirements.hpp"

namespace roadreq {

struct ViolationReport {
  std::vector<int> violated;  // clause indices, ascending
  bool admissible = true;
};

/// A clause is violated iff every one of its literals is falsified by p.
ViolationReport check(const RequirementSet& rs, const Prediction& p);

struct CorpusMetrics {
  double pct_nonadmissible = 0.0;        // in [0,100]
  double avg_violations = 0.0;           // mean violated clauses per prediction
  double pct_constraints_violated = 0.0; // clauses violated by at least one prediction, in [0,100]
};

class EmptyCorpus : public std::runtime_error {
 public:
  EmptyCorpus() : std::runtime_error("empty prediction corpus") {}
};

/// Streaming tally behind corpus_metrics; counts are additive, so partial
/// accumulators can be merged in any order.
class MetricsAccumulator {
 public:
  explicit MetricsAccumulator(int n_clauses);
  void add(const ViolationReport& report);
  void merge(const MetricsAccumulator& other);
  long items() const { return n_items_; }
  CorpusMetrics finalize() const;  // throws EmptyCorpus when nothing was added

 private:
  int n_clauses_;
  long n_items_ = 0;
  long n_nonadmissible_ = 0;
  long total_violations_ = 0;
  std::vector<uint64_t> violated_once_;
};

CorpusMetrics corpus_metrics(const RequirementSet& rs, std::span<const ScoreVector> svs,
                             double theta);

std::vector<std::pair<double, CorpusMetrics>> metrics_sweep(const RequirementSet& rs,
                                                            std::span<const ScoreVector> svs,
                                                            std::span<const double> thetas);

}  // namespace roadreq
