// Copyright (c) 2026 roadreq contributors
// SPDX-License-Identifier: Apache-2.0
#include "roadreq/count.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>
#include <vector>

#include "roadreq/detail/cnf.hpp"

namespace roadreq {

namespace {

using detail::MaskClause;

// A residual formula: reduced clauses, sorted and deduplicated, so equal
// formulas serialize identically.
using Formula = std::vector<MaskClause>;

Formula canonicalize(Formula f) {
  std::sort(f.begin(), f.end(), [](const MaskClause& a, const MaskClause& b) {
    return a.pos != b.pos ? a.pos < b.pos : a.neg < b.neg;
  });
  f.erase(std::unique(f.begin(), f.end(),
                      [](const MaskClause& a, const MaskClause& b) {
                        return a.pos == b.pos && a.neg == b.neg;
                      }),
          f.end());
  return f;
}

struct FormulaHash {
  size_t operator()(const Formula& f) const {
    size_t h = f.size();
    for (const MaskClause& c : f) {
      h = h * 1000003 + std::hash<uint64_t>{}(c.pos);
      h = h * 1000003 + std::hash<uint64_t>{}(c.neg);
    }
    return h;
  }
};

struct FormulaEq {
  bool operator()(const Formula& a, const Formula& b) const {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i].pos != b[i].pos || a[i].neg != b[i].neg) return false;
    return true;
  }
};

uint64_t formula_vars(const Formula& f) {
  uint64_t v = 0;
  for (const MaskClause& c : f) v |= c.lits();
  return v;
}

// Removes satisfied clauses and strips falsified literals for one assignment.
// Returns false on an empty residual clause.
bool reduce(const Formula& f, int var, bool value, Formula& out) {
  const uint64_t bit = uint64_t{1} << var;
  out.clear();
  out.reserve(f.size());
  for (const MaskClause& c : f) {
    if ((value ? c.pos : c.neg) & bit) continue;  // satisfied
    MaskClause r = c;
    r.pos &= ~bit;
    r.neg &= ~bit;
    if (r.lits() == 0) return false;
    out.push_back(r);
  }
  return true;
}

class Counter {
 public:
  // Counts models of f over exactly the variables occurring in f.
  mpz_class count(Formula f) {
    // Unit propagation; forced variables contribute a factor of one,
    // variables whose clauses all disappear contribute a factor of two.
    uint64_t vars_in = formula_vars(f);
    int forced = 0;
    while (true) {
      const MaskClause* unit = nullptr;
      for (const MaskClause& c : f)
        if (std::has_single_bit(c.lits())) {
          unit = &c;
          break;
        }
      if (!unit) break;
      int var = std::countr_zero(unit->lits());
      bool value = unit->pos != 0;
      Formula next;
      if (!reduce(f, var, value, next)) return 0;
      f = std::move(next);
      ++forced;
    }
    uint64_t vars_left = formula_vars(f);
    int lost = std::popcount(vars_in) - forced - std::popcount(vars_left);
    mpz_class result = mpz_class(1) << lost;
    if (f.empty()) return result;

    for (Formula& component : split_components(f)) {
      mpz_class sub = count_component(std::move(component));
      if (sub == 0) return 0;
      result *= sub;
    }
    return result;
  }

 private:
  std::vector<Formula> split_components(const Formula& f) {
    std::vector<Formula> components;
    std::vector<bool> used(f.size(), false);
    for (size_t seed = 0; seed < f.size(); ++seed) {
      if (used[seed]) continue;
      uint64_t vars = f[seed].lits();
      Formula comp{f[seed]};
      used[seed] = true;
      bool grew = true;
      while (grew) {
        grew = false;
        for (size_t j = 0; j < f.size(); ++j) {
          if (used[j] || (f[j].lits() & vars) == 0) continue;
          vars |= f[j].lits();
          comp.push_back(f[j]);
          used[j] = true;
          grew = true;
        }
      }
      components.push_back(std::move(comp));
    }
    return components;
  }

  mpz_class count_component(Formula f) {
    f = canonicalize(f);
    if (auto it = cache_.find(f); it != cache_.end()) return it->second;

    int var = pick_branch(f);
    mpz_class total = 0;
    const uint64_t comp_vars = formula_vars(f);
    for (bool value : {false, true}) {
      Formula next;
      if (!reduce(f, var, value, next)) continue;
      uint64_t next_vars = formula_vars(next);
      int lost = std::popcount(comp_vars) - 1 - std::popcount(next_vars);
      mpz_class sub = next.empty() ? mpz_class(1) : count(std::move(next));
      total += sub << lost;
    }
    cache_.emplace(std::move(f), total);
    return total;
  }

  // Most occurrences among the shortest clauses, ties to the lowest index.
  static int pick_branch(const Formula& f) {
    int best_len = 65;
    for (const MaskClause& c : f) best_len = std::min(best_len, std::popcount(c.lits()));
    int best_var = -1, best_count = -1;
    uint64_t vars = formula_vars(f);
    for (int v = 0; v < 64; ++v) {
      if (!((vars >> v) & 1)) continue;
      int count = 0;
      for (const MaskClause& c : f)
        if (std::popcount(c.lits()) == best_len && ((c.lits() >> v) & 1)) ++count;
      if (count > best_count) {
        best_count = count;
        best_var = v;
      }
    }
    return best_var;
  }

  std::unordered_map<Formula, mpz_class, FormulaHash, FormulaEq> cache_;
};

}  // namespace

ModelCount count_models(const RequirementSet& rs) {
  Formula f = detail::compile(rs);
  int n = rs.labels().size();
  Counter counter;
  int unconstrained = n - std::popcount(formula_vars(f));
  mpz_class value = counter.count(std::move(f)) << unconstrained;
  return {value};
}

}  // namespace roadreq
