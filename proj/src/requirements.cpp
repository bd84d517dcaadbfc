// Copyright (c) 2026 roadreq contributors
// SPDX-License-Identifier: Apache-2.0
#include "roadreq/requirements.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

#include "roadreq/corpus_data.hpp"

namespace roadreq {

Clause::Clause(std::vector<Literal> literals, std::string source_line)
    : literals_(std::move(literals)), source_line_(std::move(source_line)) {
  if (literals_.empty()) throw std::invalid_argument("empty clause");
  std::sort(literals_.begin(), literals_.end());
  for (size_t i = 0; i + 1 < literals_.size(); ++i) {
    if (literals_[i] == literals_[i + 1])
      throw std::invalid_argument("duplicate literal in clause");
    if (literals_[i].label == literals_[i + 1].label)
      throw std::invalid_argument("complementary pair in clause");
  }
  for (const Literal& l : literals_) {
    if (l.label < 0 || l.label >= 64)
      throw std::invalid_argument("literal label out of mask range");
    (l.positive ? pos_mask_ : neg_mask_) |= uint64_t{1} << l.label;
  }
}

RequirementSet::RequirementSet(LabelTable labels, std::vector<Clause> clauses)
    : labels_(std::move(labels)), clauses_(std::move(clauses)) {
  for (const Clause& c : clauses_)
    for (const Literal& l : c.literals())
      if (l.label >= labels_.size())
        throw std::invalid_argument("clause literal outside label table");
}

RequirementSet RequirementSet::without_clause(int index) const {
  std::vector<Clause> rest;
  rest.reserve(clauses_.size() - 1);
  for (int i = 0; i < size(); ++i)
    if (i != index) rest.push_back(clauses_[i]);
  return RequirementSet(labels_, std::move(rest));
}

namespace {

std::string_view trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

RequirementSet parse_requirements(std::string_view text, const LabelTable& table) {
  std::vector<Clause> clauses;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() != '{' || line.back() != '}')
      throw ParseError(ParseErrorKind::Malformed, line_no, std::string(line),
                       "expected a clause of the form { item, item, ... }");
    std::string_view body = line.substr(1, line.size() - 2);

    std::vector<Literal> lits;
    size_t start = 0;
    bool saw_any_item = false;
    while (start <= body.size()) {
      size_t comma = body.find(',', start);
      std::string_view item =
          trim(body.substr(start, comma == std::string_view::npos ? body.size() - start : comma - start));
      start = comma == std::string_view::npos ? body.size() + 1 : comma + 1;
      if (item.empty()) {
        if (comma == std::string_view::npos && !saw_any_item) break;  // "{}" handled below
        throw ParseError(ParseErrorKind::Malformed, line_no, "", "empty item in clause");
      }
      saw_any_item = true;
      bool positive = true;
      if (item.substr(0, 4) == "not " || item.substr(0, 4) == "not\t") {
        positive = false;
        item = trim(item.substr(4));
        if (item.empty())
          throw ParseError(ParseErrorKind::Malformed, line_no, "not", "dangling 'not'");
      }
      auto idx = table.index_of(item);
      if (!idx)
        throw ParseError(ParseErrorKind::UnknownAbbrev, line_no, std::string(item),
                         "unknown label abbreviation '" + std::string(item) + "'");
      lits.push_back({*idx, positive});
    }
    if (lits.empty())
      throw ParseError(ParseErrorKind::EmptyClause, line_no, "", "clause has no literals");

    auto sorted = lits;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i + 1 < sorted.size(); ++i) {
      if (sorted[i] == sorted[i + 1])
        throw ParseError(ParseErrorKind::DuplicateLiteral, line_no,
                         table.entry(sorted[i].label).abbrev, "duplicate literal");
      if (sorted[i].label == sorted[i + 1].label)
        throw ParseError(ParseErrorKind::TautologicalClause, line_no,
                         table.entry(sorted[i].label).abbrev,
                         "clause contains a label and its negation");
    }
    clauses.emplace_back(std::move(lits), std::string(line));
  }
  return RequirementSet(table, std::move(clauses));
}

std::string serialize_requirements(const RequirementSet& rs) {
  std::ostringstream out;
  for (const Clause& c : rs.clauses()) {
    out << '{';
    bool first = true;
    for (const Literal& l : c.literals()) {
      if (!first) out << ", ";
      first = false;
      if (!l.positive) out << "not ";
      out << rs.labels().entry(l.label).abbrev;
    }
    out << "}\n";
  }
  return out.str();
}

const RequirementSet& road_requirements() {
  static const RequirementSet rs = parse_requirements(kRoadRequirementsText, road_labels());
  return rs;
}

RequirementStats stats(const RequirementSet& rs) {
  RequirementStats st;
  st.n_clauses = rs.size();
  const int n_labels = rs.labels().size();

  std::vector<int> occurrences(n_labels, 0);
  std::vector<bool> appears_pos(n_labels, false), appears_neg(n_labels, false);
  std::map<int, std::array<long, 3>> buckets;  // length -> {count, neg literals, pos literals}
  long total_len = 0, total_neg = 0, total_pos = 0;

  for (const Clause& c : rs.clauses()) {
    int n_neg = 0, n_pos = 0;
    for (const Literal& l : c.literals()) {
      (l.positive ? appears_pos : appears_neg)[l.label] = true;
      (l.positive ? n_pos : n_neg)++;
      occurrences[l.label]++;  // no duplicate labels within a clause
    }
    total_len += c.size();
    total_neg += n_neg;
    total_pos += n_pos;
    auto& b = buckets[c.size()];
    b[0]++;
    b[1] += n_neg;
    b[2] += n_pos;
  }

  if (st.n_clauses > 0) {
    st.avg_len = double(total_len) / st.n_clauses;
    st.total_avg_negative = double(total_neg) / st.n_clauses;
    st.total_avg_positive = double(total_pos) / st.n_clauses;
  }
  for (int i = 0; i < n_labels; ++i) {
    if (appears_pos[i]) st.n_labels_positive++;
    if (appears_neg[i]) st.n_labels_negative++;
  }
  if (n_labels > 0) {
    st.occ_min = *std::min_element(occurrences.begin(), occurrences.end());
    st.occ_max = *std::max_element(occurrences.begin(), occurrences.end());
    long sum = 0;
    for (int o : occurrences) sum += o;
    st.occ_avg = double(sum) / n_labels;
  }
  for (const auto& [len, b] : buckets)
    st.histogram.push_back({len, int(b[0]), double(b[1]) / b[0], double(b[2]) / b[0]});
  return st;
}

}  // namespace roadreq
