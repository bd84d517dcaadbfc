// Copyright (c) 2026 roadreq contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "roadreq/prediction.hpp"
#include "roadreq/requirements.hpp"

namespace roadreq {

enum class TNorm { Product, Goedel, Lukasiewicz };

enum class GoedelSubgradient { FirstArgmax };

struct LossConfig {
  TNorm tnorm = TNorm::Product;
  double alpha = 1.0;  // > 0
  GoedelSubgradient subgradient = GoedelSubgradient::FirstArgmax;
  bool product_log_space = false;  // evaluate the product fold via log1p sums
};

struct LossResult {
  double total = 0.0;               // alpha * sum_i (1 - degree_i)
  std::vector<double> per_clause;   // clause satisfaction degrees in [0,1]
  std::vector<double> gradient;     // d total / d score_j
};

/// Positive literal evaluates to the label's score, negative to 1 - score.
double literal_value(const Literal& lit, const ScoreVector& sv);

/// Disjunction relaxed by the dual t-conorm, folded over the clause's
/// canonical literal order: Product a(+)b = a + b - ab, Goedel max,
/// Lukasiewicz min(1, a + b).
double clause_eval(TNorm tnorm, const Clause& c, const ScoreVector& sv);

/// Loss with analytic gradient. Product differentiates the complement
/// product, Lukasiewicz gates on saturation, Goedel routes the subgradient to
/// the first maximizing literal in canonical order.
LossResult loss(const RequirementSet& rs, const ScoreVector& sv, const LossConfig& cfg);

/// Element-wise sum (or mean) of per-item losses, degrees and gradients.
/// Throws EmptyCorpus on an empty span. `threads` <= 1 runs inline.
LossResult loss_corpus(const RequirementSet& rs, std::span<const ScoreVector> svs,
                       const LossConfig& cfg, bool mean = false, int threads = 1);

}  // namespace roadreq
