// Copyright (c) 2026 roadreq contributors
// SPDX-License-Identifier: Apache-2.0
#include "roadreq/maxsat.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "roadreq/admissibility.hpp"
#include "roadreq/detail/cnf.hpp"
#include "roadreq/sat.hpp"

namespace roadreq {

namespace {

using detail::MaskClause;

constexpr double kCostTol = 1e-12;
constexpr double kWeightFloor = 1e-9;

double mask_cost(uint64_t flips, const std::vector<double>& w) {
  double cost = 0.0;
  for (uint64_t m = flips; m != 0; m &= m - 1) cost += w[std::countr_zero(m)];
  return cost;  // ascending index order
}

// Exact in double for up to 64 labels: distinct powers of two never collide.
double lex_tiebreak(uint64_t flips) {
  double t = 0.0;
  for (uint64_t m = flips; m != 0; m &= m - 1) t += std::ldexp(1.0, -(std::countr_zero(m) + 1));
  return t;
}

// Branch and bound over label flips. Unassigned labels default to the
// original prediction, so the cheapest completion of any node is its default
// completion; branching targets the first clause falsified by that default.
class FlipSearch {
 public:
  FlipSearch(const std::vector<MaskClause>& clauses, int n_vars, uint64_t p_bits,
             const std::vector<double>& w, std::optional<double> budget)
      : clauses_(clauses), n_vars_(n_vars), p_(p_bits), w_(w), budget_(budget) {}

  void seed_incumbent(uint64_t q_bits) { offer_candidate(q_bits & mask_all()); }

  void run() { node(0, 0, 0.0); }

  bool has_incumbent() const { return has_incumbent_; }
  double best_cost() const { return best_cost_; }
  uint64_t best_assignment() const { return best_q_; }
  uint64_t best_flips() const { return best_q_ ^ p_; }

 private:
  uint64_t mask_all() const {
    return n_vars_ >= 64 ? ~uint64_t{0} : (uint64_t{1} << n_vars_) - 1;
  }

  void offer_candidate(uint64_t q_bits) {
    uint64_t flips = q_bits ^ p_;
    double cost = mask_cost(flips, w_);
    double tb = lex_tiebreak(flips);
    if (!has_incumbent_ || cost < best_cost_ - kCostTol ||
        (std::abs(cost - best_cost_) <= kCostTol && tb > best_tb_)) {
      has_incumbent_ = true;
      best_cost_ = cost;
      best_tb_ = tb;
      best_q_ = q_bits;
    }
  }

  void node(uint64_t assigned, uint64_t value, double cost) {
    // Hard-clause unit propagation; forced flips accrue cost.
    bool changed = true;
    while (changed) {
      changed = false;
      for (const MaskClause& c : clauses_) {
        if (detail::satisfied(c, assigned, value)) continue;
        uint64_t open = c.lits() & ~assigned;
        if (open == 0) return;  // conflict
        if (std::has_single_bit(open)) {
          bool pol = (c.pos & open) != 0;
          assigned |= open;
          if (pol) value |= open;
          if (pol != ((p_ & open) != 0)) cost += w_[std::countr_zero(open)];
          changed = true;
        }
      }
    }

    // Clauses falsified by the default completion (assigned ∪ p elsewhere).
    uint64_t lb_used = 0;
    double lb = cost;
    const MaskClause* branch_clause = nullptr;
    for (const MaskClause& c : clauses_) {
      if (detail::satisfied(c, assigned, value)) continue;
      uint64_t open = c.lits() & ~assigned;
      uint64_t open_default_sat = ((c.pos & p_) | (c.neg & ~p_)) & open;
      if (open_default_sat != 0) continue;  // default completion satisfies it
      if (!branch_clause) branch_clause = &c;
      if ((open & lb_used) == 0) {  // variable-disjoint: bounds add up
        double cheapest = std::numeric_limits<double>::infinity();
        for (uint64_t m = open; m != 0; m &= m - 1)
          cheapest = std::min(cheapest, w_[std::countr_zero(m)]);
        lb += cheapest;
        lb_used |= open;
      }
    }

    if (!branch_clause) {
      offer_candidate(value | (p_ & ~assigned));
      return;
    }

    if (budget_ && lb > *budget_ + kCostTol) return;
    if (has_incumbent_) {
      if (lb > best_cost_ + kCostTol) return;
      if (lb >= best_cost_ - kCostTol) {
        // Only equal-cost candidates can follow; worth it only if the
        // tiebreak could still improve.
        double tb_ub = lex_tiebreak((value ^ p_) & assigned) + lex_tiebreak(~assigned & mask_all());
        if (tb_ub <= best_tb_) return;
      }
    }

    // Partition on the first flipped literal of the branch clause: branch k
    // flips open literal k and pins the earlier ones to the prediction.
    uint64_t open = branch_clause->lits() & ~assigned;
    uint64_t pinned = 0;
    for (uint64_t m = open; m != 0; m &= m - 1) {
      int v = std::countr_zero(m);
      uint64_t bit = uint64_t{1} << v;
      uint64_t next_assigned = assigned | pinned | bit;
      uint64_t next_value = value | (p_ & pinned);
      if (p_ & bit)
        next_value &= ~bit;  // flip to negative
      else
        next_value |= bit;  // flip to positive
      node(next_assigned, next_value, cost + w_[v]);
      pinned |= bit;
    }
  }

  const std::vector<MaskClause>& clauses_;
  int n_vars_;
  uint64_t p_;
  const std::vector<double>& w_;
  std::optional<double> budget_;

  bool has_incumbent_ = false;
  double best_cost_ = 0.0;
  double best_tb_ = 0.0;
  uint64_t best_q_ = 0;
};

// Cheap repair used to seed the upper bound: repeatedly satisfy the first
// violated clause by flipping its cheapest label.
std::optional<uint64_t> greedy_repair(const std::vector<MaskClause>& clauses, uint64_t p_bits,
                                      const std::vector<double>& w, int n_vars) {
  uint64_t q = p_bits;
  for (int iter = 0; iter < 2 * n_vars + 4; ++iter) {
    const MaskClause* violated = nullptr;
    for (const MaskClause& c : clauses) {
      if ((c.pos & q) == 0 && (c.neg & ~q) == 0) {
        violated = &c;
        break;
      }
    }
    if (!violated) return q;
    int best = -1;
    for (uint64_t m = violated->lits(); m != 0; m &= m - 1) {
      int v = std::countr_zero(m);
      if (best < 0 || w[v] < w[best]) best = v;
    }
    q ^= uint64_t{1} << best;
  }
  return std::nullopt;
}

}  // namespace

WeightVector compute_weights(CorrectionPolicy policy, const ScoreVector& sv,
                             std::span<const double> ap, double theta, bool clamp) {
  const int n = sv.size();
  WeightVector out;
  out.weights.assign(n, 1.0);
  if (policy == CorrectionPolicy::MinimalDistance) return out;
  if (static_cast<int>(ap.size()) != n)
    throw std::invalid_argument("AP vector size does not match label count");
  for (int i = 0; i < n; ++i) {
    double w = ap[i];
    if (policy == CorrectionPolicy::AveragePrecisionOutput) {
      double c = sv[i] > theta ? sv[i] : 1.0 - sv[i];
      w *= c;
    }
    if (w < kWeightFloor) {
      if (!clamp) throw NonPositiveWeight(i);
      w = kWeightFloor;
    }
    out.weights[i] = w;
  }
  return out;
}

std::optional<CorrectionResult> correct(const RequirementSet& rs, const Prediction& p,
                                        const WeightVector& w, std::optional<double> budget) {
  const int n = rs.labels().size();
  if (p.size() != n) throw std::invalid_argument("prediction size does not match label table");
  if (static_cast<int>(w.weights.size()) != n)
    throw std::invalid_argument("weight vector size does not match label table");
  for (int i = 0; i < n; ++i)
    if (!(w.weights[i] > 0.0)) throw NonPositiveWeight(i);

  auto clauses = detail::compile(rs);

  auto finish = [&](uint64_t q_bits, double cost) -> std::optional<CorrectionResult> {
    if (budget && cost > *budget + kCostTol) return std::nullopt;
    CorrectionResult res;
    res.corrected = Prediction(q_bits, n);
    uint64_t flips = q_bits ^ p.bits();
    for (uint64_t m = flips; m != 0; m &= m - 1) res.flipped.push_back(std::countr_zero(m));
    res.cost = cost;
    return res;
  };

  // Already admissible: nothing to do.
  bool admissible = true;
  for (const MaskClause& c : clauses)
    if ((c.pos & p.bits()) == 0 && (c.neg & ~p.bits()) == 0) {
      admissible = false;
      break;
    }
  if (admissible) return finish(p.bits(), 0.0);

  FlipSearch search(clauses, n, p.bits(), w.weights, budget);
  if (auto greedy = greedy_repair(clauses, p.bits(), w.weights, n)) search.seed_incumbent(*greedy);
  if (!search.has_incumbent()) {
    SolveResult sr = solve(rs);
    if (!sr.sat) return std::nullopt;
    search.seed_incumbent(sr.model.bits());
  }
  search.run();
  if (!search.has_incumbent()) return std::nullopt;
  return finish(search.best_assignment(), mask_cost(search.best_flips(), w.weights));
}

ScoreVector apply_flips(const ScoreVector& sv, std::span<const int> flipped, double theta,
                        double eps) {
  if (!(eps > 0.0)) throw std::domain_error("eps must be positive");
  std::vector<double> out = sv.values();
  for (int i : flipped) {
    double adjusted = sv[i] <= theta ? theta + eps : theta - eps;
    out.at(i) = std::clamp(adjusted, 0.0, 1.0);
  }
  return ScoreVector(std::move(out), sv.id());
}

std::vector<BoxCorrection> correct_corpus(const RequirementSet& rs,
                                          std::span<const ScoreVector> svs, double theta,
                                          CorrectionPolicy policy, std::span<const double> ap,
                                          double eps, std::optional<double> budget, int threads) {
  std::vector<BoxCorrection> out(svs.size());
  auto work = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      const ScoreVector& sv = svs[i];
      Prediction p = threshold(sv, theta);
      WeightVector w = compute_weights(policy, sv, ap, theta);
      auto res = correct(rs, p, w, budget);
      BoxCorrection box;
      box.id = sv.id();
      if (res) {
        box.adjusted_scores = apply_flips(sv, res->flipped, theta, eps);
        box.result = std::move(res);
      } else {
        box.adjusted_scores = sv;
      }
      out[i] = std::move(box);
    }
  };
  if (threads <= 1 || svs.size() < 2) {
    work(0, svs.size());
  } else {
    size_t n_threads = std::min<size_t>(threads, svs.size());
    std::vector<std::thread> pool;
    size_t chunk = (svs.size() + n_threads - 1) / n_threads;
    for (size_t t = 0; t < n_threads; ++t) {
      size_t begin = t * chunk;
      size_t end = std::min(svs.size(), begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

std::string export_wcnf(const RequirementSet& rs, const Prediction& p, const WeightVector& w) {
  const int n = rs.labels().size();
  long long top = 1;
  std::vector<long long> soft(n);
  for (int i = 0; i < n; ++i) {
    soft[i] = std::max<long long>(1, std::llround(w.weights[i] * 1e6));
    top += soft[i];
  }
  std::ostringstream out;
  out << "c correction instance; soft weights scaled by 1e6\n";
  out << "p wcnf " << n << " " << rs.size() + n << " " << top << "\n";
  for (const Clause& c : rs.clauses()) {
    out << top;
    for (const Literal& l : c.literals()) out << " " << (l.positive ? l.label + 1 : -(l.label + 1));
    out << " 0\n";
  }
  for (int i = 0; i < n; ++i)
    out << soft[i] << " " << (p.positive(i) ? i + 1 : -(i + 1)) << " 0\n";
  return out.str();
}

}  // namespace roadreq
