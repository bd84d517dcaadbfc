// Copyright (c) 2026 roadreq contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "roadreq/requirements.hpp"

namespace roadreq::detail {

// Clause as a pair of polarity bit masks over label indices. The solver state
// is (assigned, value) with the invariant value ⊆ assigned.
struct MaskClause {
  uint64_t pos = 0;
  uint64_t neg = 0;
  uint64_t lits() const { return pos | neg; }
};

inline std::vector<MaskClause> compile(const RequirementSet& rs) {
  std::vector<MaskClause> out;
  out.reserve(rs.size());
  for (const Clause& c : rs.clauses()) out.push_back({c.positive_mask(), c.negative_mask()});
  return out;
}

inline bool satisfied(const MaskClause& c, uint64_t assigned, uint64_t value) {
  return (c.pos & value) != 0 || (c.neg & assigned & ~value) != 0;
}

enum class PropagateResult { Ok, Conflict };

// Unit propagation to fixpoint. `forced` accumulates the variables assigned here.
inline PropagateResult propagate(const std::vector<MaskClause>& clauses, uint64_t& assigned,
                                 uint64_t& value, uint64_t& forced) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const MaskClause& c : clauses) {
      if (satisfied(c, assigned, value)) continue;
      uint64_t open = c.lits() & ~assigned;
      if (open == 0) return PropagateResult::Conflict;
      if (std::has_single_bit(open)) {
        assigned |= open;
        forced |= open;
        if (c.pos & open) value |= open;
        changed = true;
      }
    }
  }
  return PropagateResult::Ok;
}

}  // namespace roadreq::detail
