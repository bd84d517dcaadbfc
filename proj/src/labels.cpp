// Copyright (c) 2026 roadreq contributors
// SPDX-License-Identifier: Apache-2.0
#include "roadreq/labels.hpp"

#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace roadreq {

LabelTable::LabelTable(std::vector<LabelEntry> entries) : entries_(std::move(entries)) {
  std::unordered_set<std::string_view> seen;
  for (const auto& e : entries_) {
    if (e.abbrev.empty()) throw std::invalid_argument("label with empty abbreviation");
    if (!seen.insert(e.abbrev).second)
      throw std::invalid_argument("duplicate label abbreviation: " + e.abbrev);
  }
}

std::optional<int> LabelTable::index_of(std::string_view abbrev) const {
  for (int i = 0; i < size(); ++i)
    if (entries_[i].abbrev == abbrev) return i;
  return std::nullopt;
}

LabelTable LabelTable::synthetic(int n) {
  std::vector<LabelEntry> es;
  es.reserve(n);
  for (int i = 0; i < n; ++i)
    es.push_back({"label " + std::to_string(i), "L" + std::to_string(i), LabelGroup::Agent});
  return LabelTable(std::move(es));
}

bool LabelTable::operator==(const LabelTable& other) const {
  if (size() != other.size()) return false;
  for (int i = 0; i < size(); ++i) {
    if (entries_[i].abbrev != other.entries_[i].abbrev ||
        entries_[i].group != other.entries_[i].group)
      return false;
  }
  return true;
}

const LabelTable& road_labels() {
  static const LabelTable table = [] {
    const LabelGroup ag = LabelGroup::Agent;
    const LabelGroup ac = LabelGroup::Action;
    const LabelGroup lo = LabelGroup::Location;
    std::vector<LabelEntry> es = {
        {"Pedestrian", "Ped", ag},
        {"Car", "Car", ag},
        {"Cyclist", "Cyc", ag},
        {"Motorbike", "Mobike", ag},
        {"Medium vehicle", "MedVeh", ag},
        {"Large vehicle", "LarVeh", ag},
        {"Bus", "Bus", ag},
        {"Emergency vehicle", "EmVeh", ag},
        {"AV traffic light", "TL", ag},
        {"Other traffic light", "OthTL", ag},
        {"Move away", "MovAway", ac},
        {"Move towards", "MovTow", ac},
        {"Move", "Mov", ac},
        {"Brake", "Brake", ac},
        {"Stop", "Stop", ac},
        {"Indicating left", "IncatLeft", ac},
        {"Indicating right", "IncatRht", ac},
        {"Hazard lights on", "HazLit", ac},
        {"Turn left", "TurLft", ac},
        {"Turn right", "TurRht", ac},
        {"Overtake", "Ovtak", ac},
        {"Wait to cross", "Wait2X", ac},
        {"Cross road from left", "XingFmLft", ac},
        {"Cross road from right", "XingFmRht", ac},
        {"Crossing", "Xing", ac},
        {"Push object", "PushObj", ac},
        {"Red traffic light", "Red", ac},
        {"Amber traffic light", "Amber", ac},
        {"Green traffic light", "Green", ac},
        {"AV lane", "VehLane", lo},
        {"Outgoing lane", "OutgoLane", lo},
        {"Outgoing cycle lane", "OutgoCycLane", lo},
        {"Incoming lane", "IncomLane", lo},
        {"Incoming cycle lane", "IncomCycLane", lo},
        {"Pavement", "Pav", lo},
        {"Left pavement", "LftPav", lo},
        {"Right pavement", "RhtPav", lo},
        {"Junction", "Jun", lo},
        {"Crossing location", "XingLoc", lo},
        {"Bus stop", "BusStop", lo},
        {"Parking", "Parking", lo},
    };
    return LabelTable(std::move(es));
  }();
  return table;
}

}  // namespace roadreq
