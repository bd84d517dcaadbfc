// Copyright (c) 2026 roadreq contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include "roadreq/requirements.hpp"

namespace roadreq {

/// Standard DIMACS CNF text: header `p cnf <n_labels> <n_clauses>`, one clause
/// per line with 1-based signed variables and a trailing 0. Comment lines map
/// variable numbers to label abbreviations.
std::string export_dimacs(const RequirementSet& rs);

/// Parses DIMACS CNF. Uses the ROAD label table when the header declares 41
/// variables, otherwise an anonymous table of the declared size.
RequirementSet parse_dimacs(std::string_view text);

/// True if the text looks like DIMACS rather than the brace clause grammar.
bool looks_like_dimacs(std::string_view text);

}  // namespace roadreq
