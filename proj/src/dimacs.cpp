// Copyright (c) 2026 roadreq contributors
// SPDX-License-Identifier: Apache-2.0
#include "roadreq/dimacs.hpp"

#include <sstream>

namespace roadreq {

std::string export_dimacs(const RequirementSet& rs) {
  std::ostringstream out;
  for (int i = 0; i < rs.labels().size(); ++i)
    out << "c " << i + 1 << " " << rs.labels().entry(i).abbrev << "\n";
  out << "p cnf " << rs.labels().size() << " " << rs.size() << "\n";
  for (const Clause& c : rs.clauses()) {
    for (const Literal& l : c.literals())
      out << (l.positive ? l.label + 1 : -(l.label + 1)) << " ";
    out << "0\n";
  }
  return out.str();
}

RequirementSet parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int n_vars = -1, n_clauses_declared = -1;
  std::vector<Clause> clauses;
  std::vector<Literal> current;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == 'c') continue;
    if (line[0] == 'p') {
      std::istringstream hs(line);
      std::string p, cnf;
      if (!(hs >> p >> cnf >> n_vars >> n_clauses_declared) || cnf != "cnf" || n_vars < 0)
        throw ParseError(ParseErrorKind::Malformed, line_no, line, "bad DIMACS header");
      continue;
    }
    if (n_vars < 0)
      throw ParseError(ParseErrorKind::Malformed, line_no, line, "clause before DIMACS header");
    std::istringstream ls(line);
    long lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (current.empty())
          throw ParseError(ParseErrorKind::EmptyClause, line_no, "", "empty DIMACS clause");
        try {
          clauses.emplace_back(std::move(current));
        } catch (const std::invalid_argument& e) {
          throw ParseError(ParseErrorKind::TautologicalClause, line_no, "", e.what());
        }
        current.clear();
      } else {
        int var = int(lit > 0 ? lit : -lit);
        if (var > n_vars)
          throw ParseError(ParseErrorKind::UnknownAbbrev, line_no, std::to_string(lit),
                           "variable exceeds declared count");
        current.push_back({var - 1, lit > 0});
      }
    }
  }
  if (!current.empty()) clauses.emplace_back(std::move(current));
  LabelTable table = (n_vars == road_labels().size()) ? road_labels() : LabelTable::synthetic(n_vars);
  return RequirementSet(std::move(table), std::move(clauses));
}

bool looks_like_dimacs(std::string_view text) {
  size_t pos = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) continue;
    if (line[b] == '#' || line[b] == '{') return false;
    if (line[b] == 'c' || line[b] == 'p') return true;
    return false;
  }
  return false;
}

}  // namespace roadreq
