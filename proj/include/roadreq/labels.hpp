// Copyright (c) 2026 roadreq contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace roadreq {

enum class LabelGroup : uint8_t { Agent, Action, Location };

struct LabelEntry {
  std::string name;
  std::string abbrev;
  LabelGroup group;
};

/// Ordered label vocabulary. A label's index is its position in the table.
/// Abbreviations are unique and matched case-sensitively.
class LabelTable {
 public:
  LabelTable() = default;
  explicit LabelTable(std::vector<LabelEntry> entries);

  int size() const { return static_cast<int>(entries_.size()); }
  const LabelEntry& entry(int index) const { return entries_.at(index); }
  const std::vector<LabelEntry>& entries() const { return entries_; }

  /// Exact, case-sensitive lookup.
  std::optional<int> index_of(std::string_view abbrev) const;

  /// Anonymous n-label table (L0, L1, ...) for synthetic instances.
  static LabelTable synthetic(int n);

  bool operator==(const LabelTable& other) const;

 private:
  std::vector<LabelEntry> entries_;
};

/// The 41-label ROAD vocabulary: 10 agents, 19 actions, 12 locations,
/// in canonical order (agents 0-9, actions 10-28, locations 29-40).
const LabelTable& road_labels();

}  // namespace roadreq
