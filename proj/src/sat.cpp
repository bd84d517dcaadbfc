// Copyright (c) 2026 roadreq contributors
// SPDX-License-Identifier: Apache-2.0
#include "roadreq/sat.hpp"

#include <bit>

#include "roadreq/detail/cnf.hpp"

namespace roadreq {

namespace {

using detail::MaskClause;

struct Dpll {
  const std::vector<MaskClause>& clauses;
  int n_vars;
  uint64_t model = 0;

  bool all_satisfied(uint64_t assigned, uint64_t value) const {
    for (const MaskClause& c : clauses)
      if (!detail::satisfied(c, assigned, value)) return false;
    return true;
  }

  // Most occurrences among the shortest open clauses; ties to the lowest
  // index. The polarity seen more often in those clauses is tried first
  // (negative first on a tie).
  void pick_branch(uint64_t assigned, uint64_t value, int& var, bool& first_polarity) const {
    int best_len = 65;
    for (const MaskClause& c : clauses) {
      if (detail::satisfied(c, assigned, value)) continue;
      int len = std::popcount(c.lits() & ~assigned);
      if (len < best_len) best_len = len;
    }
    int best_count = -1;
    int best_var = -1;
    int pos_count = 0, neg_count = 0;
    for (int v = 0; v < n_vars; ++v) {
      if ((assigned >> v) & 1) continue;
      int count = 0, pc = 0, nc = 0;
      for (const MaskClause& c : clauses) {
        if (detail::satisfied(c, assigned, value)) continue;
        if (std::popcount(c.lits() & ~assigned) != best_len) continue;
        if ((c.pos >> v) & 1) ++count, ++pc;
        if ((c.neg >> v) & 1) ++count, ++nc;
      }
      if (count > best_count) {
        best_count = count;
        best_var = v;
        pos_count = pc;
        neg_count = nc;
      }
    }
    var = best_var;
    first_polarity = pos_count > neg_count;
  }

  bool search(uint64_t assigned, uint64_t value) {
    uint64_t forced = 0;
    if (detail::propagate(clauses, assigned, value, forced) == detail::PropagateResult::Conflict)
      return false;
    if (all_satisfied(assigned, value)) {
      model = value;  // free labels default to negative
      return true;
    }
    int var = -1;
    bool first = false;
    pick_branch(assigned, value, var, first);
    for (bool polarity : {first, !first}) {
      uint64_t bit = uint64_t{1} << var;
      if (search(assigned | bit, polarity ? (value | bit) : value)) return true;
    }
    return false;
  }
};

}  // namespace

SolveResult solve(const RequirementSet& rs, std::span<const Literal> assumptions) {
  auto clauses = detail::compile(rs);
  uint64_t assigned = 0, value = 0;
  for (const Literal& l : assumptions) {
    uint64_t bit = uint64_t{1} << l.label;
    assigned |= bit;
    if (l.positive) value |= bit;
  }
  Dpll dpll{clauses, rs.labels().size()};
  SolveResult result;
  result.sat = dpll.search(assigned, value);
  if (result.sat) result.model = Prediction(dpll.model, rs.labels().size());
  return result;
}

bool entails(const RequirementSet& rs, const Clause& c) {
  std::vector<Literal> negated;
  negated.reserve(c.size());
  for (const Literal& l : c.literals()) negated.push_back({l.label, !l.positive});
  return !solve(rs, negated).sat;
}

std::vector<int> find_redundant(const RequirementSet& rs) {
  std::vector<int> redundant;
  for (int i = 0; i < rs.size(); ++i)
    if (entails(rs.without_clause(i), rs.clause(i))) redundant.push_back(i);
  return redundant;
}

}  // namespace roadreq
