// Copyright (c) 2026 roadreq contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "roadreq/labels.hpp"

namespace roadreq {

struct Literal {
  int label = 0;
  bool positive = true;
  auto operator<=>(const Literal&) const = default;
};

/// A disjunctive requirement clause. Literals are stored as a set, canonically
/// sorted by (label, polarity); construction rejects empty clauses, duplicate
/// literals and complementary pairs. Labels must fit in 64 bits so clauses can
/// carry precomputed polarity masks.
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Literal> literals, std::string source_line = {});

  std::span<const Literal> literals() const { return literals_; }
  int size() const { return static_cast<int>(literals_.size()); }
  uint64_t positive_mask() const { return pos_mask_; }
  uint64_t negative_mask() const { return neg_mask_; }
  const std::string& source_line() const { return source_line_; }

  bool operator==(const Clause& other) const { return literals_ == other.literals_; }

 private:
  std::vector<Literal> literals_;
  uint64_t pos_mask_ = 0;
  uint64_t neg_mask_ = 0;
  std::string source_line_;
};

/// An ordered CNF requirement set over a label table.
class RequirementSet {
 public:
  RequirementSet() = default;
  RequirementSet(LabelTable labels, std::vector<Clause> clauses);

  const LabelTable& labels() const { return labels_; }
  std::span<const Clause> clauses() const { return clauses_; }
  const Clause& clause(int index) const { return clauses_.at(index); }
  int size() const { return static_cast<int>(clauses_.size()); }

  /// Same label table, clause at `index` removed. Used by redundancy checking.
  RequirementSet without_clause(int index) const;

 private:
  LabelTable labels_;
  std::vector<Clause> clauses_;
};

enum class ParseErrorKind {
  UnknownAbbrev,
  DuplicateLiteral,
  TautologicalClause,
  EmptyClause,
  Malformed,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, int line, std::string token, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        kind(kind),
        line(line),
        token(std::move(token)) {}

  ParseErrorKind kind;
  int line;        // 1-based line number in the input text
  std::string token;
};

/// Parses one clause per non-comment line in the grammar
///   `{` item (`,` item)* `}`   with   item := [`not` ] abbrev
/// Lines starting with `#` and blank lines are ignored. CR line endings are
/// tolerated. Clauses keep their file order; each keeps its source line.
RequirementSet parse_requirements(std::string_view text, const LabelTable& table);

/// Canonical text form; parse(serialize(rs)) == rs.
std::string serialize_requirements(const RequirementSet& rs);

/// The shipped ROAD requirement corpus (243 clauses over the 41 ROAD labels).
const RequirementSet& road_requirements();

struct LengthBucket {
  int length = 0;
  int count = 0;
  double avg_negative = 0.0;  // mean number of negative literals per clause
  double avg_positive = 0.0;
};

struct RequirementStats {
  int n_clauses = 0;
  double avg_len = 0.0;
  int n_labels_positive = 0;  // labels occurring as a positive literal somewhere
  int n_labels_negative = 0;
  int occ_min = 0;            // occurrences = clauses mentioning the label, either polarity
  double occ_avg = 0.0;
  int occ_max = 0;
  std::vector<LengthBucket> histogram;  // ascending by clause length
  double total_avg_negative = 0.0;      // over all clauses
  double total_avg_positive = 0.0;
};

RequirementStats stats(const RequirementSet& rs);

}  // namespace roadreq
