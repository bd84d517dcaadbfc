// Copyright (c) 2026 roadreq contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "roadreq/prediction.hpp"
#include "roadreq/requirements.hpp"

namespace roadreq {

enum class CorrectionPolicy {
  MinimalDistance,         // unit flip costs
  AveragePrecision,        // w_i = AP_i
  AveragePrecisionOutput,  // w_i = AP_i * c_i with c_i = o_i above theta, 1 - o_i otherwise
};

struct WeightVector {
  std::vector<double> weights;  // strictly positive, one per label
};

class NonPositiveWeight : public std::runtime_error {
 public:
  explicit NonPositiveWeight(int label)
      : std::runtime_error("non-positive correction weight for label " + std::to_string(label)) {}
};

/// Per-label flip costs under the given policy. AP-based policies require an
/// `ap` vector of the label-table size; weights are clamped below by 1e-9
/// unless `clamp` is false, in which case a zero weight throws.
WeightVector compute_weights(CorrectionPolicy policy, const ScoreVector& sv,
                             std::span<const double> ap, double theta, bool clamp = true);

struct CorrectionResult {
  Prediction corrected;
  std::vector<int> flipped;  // label indices, ascending
  double cost = 0.0;         // sum of weights over flipped, accumulated in index order
};

/// Minimum-cost admissible correction of p: every clause of rs is hard, each
/// label's current polarity is a soft unit of weight w_i. Exact optimum via
/// branch and bound over label flips with incremental unit propagation; equal
/// cost is broken towards the lexicographically smallest flipped-index set.
/// Returns nullopt when the hard clauses are unsatisfiable or the optimum
/// exceeds `budget` (tolerance 1e-12).
std::optional<CorrectionResult> correct(const RequirementSet& rs, const Prediction& p,
                                        const WeightVector& w,
                                        std::optional<double> budget = std::nullopt);

/// Score adjustment making the thresholded scores match the corrected
/// prediction: a flipped label scores theta+eps if it was at or below theta,
/// theta-eps otherwise, clamped into [0,1]. Other labels are untouched.
ScoreVector apply_flips(const ScoreVector& sv, std::span<const int> flipped, double theta,
                        double eps);

struct BoxCorrection {
  std::string id;
  std::optional<CorrectionResult> result;  // nullopt = infeasible
  ScoreVector adjusted_scores;
};

/// threshold -> compute_weights -> correct -> apply_flips per score vector.
/// Infeasible items are reported, not fatal. `threads` <= 1 runs inline.
std::vector<BoxCorrection> correct_corpus(const RequirementSet& rs,
                                          std::span<const ScoreVector> svs, double theta,
                                          CorrectionPolicy policy, std::span<const double> ap,
                                          double eps = 1e-3,
                                          std::optional<double> budget = std::nullopt,
                                          int threads = 1);

/// Weighted-DIMACS (wcnf) text for one correction instance: hard requirement
/// clauses plus one soft unit per label carrying the prediction's polarity.
/// Weights are scaled by 1e6 and rounded to integers.
std::string export_wcnf(const RequirementSet& rs, const Prediction& p, const WeightVector& w);

}  // namespace roadreq
