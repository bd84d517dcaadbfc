// Copyright (c) 2026 roadreq contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "roadreq/prediction.hpp"
#include "roadreq/requirements.hpp"

namespace roadreq {

struct SolveResult {
  bool sat = false;
  Prediction model;  // a total satisfying assignment; meaningful only when sat
};

/// Complete DPLL search with unit propagation. Deterministic: branches on the
/// variable occurring most often in the shortest open clauses, ties broken by
/// lowest index; labels unconstrained at the end of the search come out
/// negative. Assumptions are applied as pre-assignments and must be
/// consistent as a set.
SolveResult solve(const RequirementSet& rs, std::span<const Literal> assumptions = {});

/// True iff rs ∧ ¬c is unsatisfiable (¬c applied as unit assumptions).
bool entails(const RequirementSet& rs, const Clause& c);

/// Indices i such that rs minus clause i entails clause i.
std::vector<int> find_redundant(const RequirementSet& rs);

}  // namespace roadreq
