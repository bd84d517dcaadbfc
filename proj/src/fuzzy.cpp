// Copyright (c) 2026 roadreq contributors
// SPDX-License-Identifier: Apache-2.0
#include "roadreq/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "roadreq/admissibility.hpp"

namespace roadreq {

double literal_value(const Literal& lit, const ScoreVector& sv) {
  double o = sv[lit.label];
  return lit.positive ? o : 1.0 - o;
}

namespace {

double product_fold(const Clause& c, const ScoreVector& sv, bool log_space) {
  // 1 - prod(1 - v_i)
  if (log_space) {
    double log_comp = 0.0;
    for (const Literal& l : c.literals()) {
      double v = literal_value(l, sv);
      if (v >= 1.0) return 1.0;
      log_comp += std::log1p(-v);
    }
    return -std::expm1(log_comp);
  }
  double comp = 1.0;
  for (const Literal& l : c.literals()) comp *= 1.0 - literal_value(l, sv);
  return 1.0 - comp;
}

}  // namespace

double clause_eval(TNorm tnorm, const Clause& c, const ScoreVector& sv) {
  switch (tnorm) {
    case TNorm::Product:
      return product_fold(c, sv, false);
    case TNorm::Goedel: {
      double m = 0.0;
      for (const Literal& l : c.literals()) m = std::max(m, literal_value(l, sv));
      return m;
    }
    case TNorm::Lukasiewicz: {
      double s = 0.0;
      for (const Literal& l : c.literals()) s += literal_value(l, sv);
      return std::min(1.0, s);
    }
  }
  throw std::logic_error("unknown t-norm");
}

LossResult loss(const RequirementSet& rs, const ScoreVector& sv, const LossConfig& cfg) {
  if (!(cfg.alpha > 0.0)) throw std::domain_error("alpha must be positive");
  const int n = rs.labels().size();
  if (sv.size() != n) throw std::invalid_argument("score vector size does not match label table");

  LossResult res;
  res.per_clause.reserve(rs.size());
  res.gradient.assign(n, 0.0);

  for (const Clause& c : rs.clauses()) {
    const auto lits = c.literals();
    double degree = 0.0;
    switch (cfg.tnorm) {
      case TNorm::Product: {
        degree = product_fold(c, sv, cfg.product_log_space);
        // d degree / d v_k = prod_{j != k} (1 - v_j), via prefix/suffix products
        const size_t k = lits.size();
        std::vector<double> comp(k);
        for (size_t i = 0; i < k; ++i) comp[i] = 1.0 - literal_value(lits[i], sv);
        std::vector<double> prefix(k + 1, 1.0), suffix(k + 1, 1.0);
        for (size_t i = 0; i < k; ++i) prefix[i + 1] = prefix[i] * comp[i];
        for (size_t i = k; i-- > 0;) suffix[i] = suffix[i + 1] * comp[i];
        for (size_t i = 0; i < k; ++i) {
          double d_v = prefix[i] * suffix[i + 1];
          double sign = lits[i].positive ? 1.0 : -1.0;
          // total contribution: alpha * d(1 - degree)/d o = -alpha * d_v * sign
          res.gradient[lits[i].label] -= cfg.alpha * d_v * sign;
        }
        break;
      }
      case TNorm::Goedel: {
        size_t argmax = 0;
        double m = -1.0;
        for (size_t i = 0; i < lits.size(); ++i) {
          double v = literal_value(lits[i], sv);
          if (v > m) {  // first argmax in canonical order
            m = v;
            argmax = i;
          }
        }
        degree = m;
        double sign = lits[argmax].positive ? 1.0 : -1.0;
        res.gradient[lits[argmax].label] -= cfg.alpha * sign;
        break;
      }
      case TNorm::Lukasiewicz: {
        double s = 0.0;
        for (const Literal& l : lits) s += literal_value(l, sv);
        degree = std::min(1.0, s);
        if (s < 1.0) {
          for (const Literal& l : lits)
            res.gradient[l.label] -= cfg.alpha * (l.positive ? 1.0 : -1.0);
        }
        break;
      }
    }
    res.per_clause.push_back(degree);
    res.total += cfg.alpha * (1.0 - degree);
  }
  return res;
}

LossResult loss_corpus(const RequirementSet& rs, std::span<const ScoreVector> svs,
                       const LossConfig& cfg, bool mean, int threads) {
  if (svs.empty()) throw EmptyCorpus();
  const int n = rs.labels().size();

  auto accumulate = [&](size_t begin, size_t end) {
    LossResult acc;
    acc.per_clause.assign(rs.size(), 0.0);
    acc.gradient.assign(n, 0.0);
    for (size_t i = begin; i < end; ++i) {
      LossResult item = loss(rs, svs[i], cfg);
      acc.total += item.total;
      for (int j = 0; j < rs.size(); ++j) acc.per_clause[j] += item.per_clause[j];
      for (int j = 0; j < n; ++j) acc.gradient[j] += item.gradient[j];
    }
    return acc;
  };

  LossResult total;
  total.per_clause.assign(rs.size(), 0.0);
  total.gradient.assign(n, 0.0);
  if (threads <= 1 || svs.size() < 2) {
    total = accumulate(0, svs.size());
  } else {
    size_t n_threads = std::min<size_t>(threads, svs.size());
    size_t chunk = (svs.size() + n_threads - 1) / n_threads;
    std::vector<LossResult> parts(n_threads);
    std::vector<std::thread> pool;
    for (size_t t = 0; t < n_threads; ++t) {
      size_t begin = t * chunk;
      size_t end = std::min(svs.size(), begin + chunk);
      if (begin >= end) break;
      pool.emplace_back([&, t, begin, end] { parts[t] = accumulate(begin, end); });
    }
    for (auto& th : pool) th.join();
    for (const LossResult& part : parts) {
      if (part.gradient.empty()) continue;
      total.total += part.total;
      for (int j = 0; j < rs.size(); ++j) total.per_clause[j] += part.per_clause[j];
      for (int j = 0; j < n; ++j) total.gradient[j] += part.gradient[j];
    }
  }
  if (mean) {
    double inv = 1.0 / double(svs.size());
    total.total *= inv;
    for (double& d : total.per_clause) d *= inv;
    for (double& d : total.gradient) d *= inv;
  }
  return total;
}

}  // namespace roadreq
