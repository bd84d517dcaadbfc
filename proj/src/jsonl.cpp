// Copyright (c) 2026 roadreq contributors
// SPDX-License-Identifier: Apache-2.0
#include "roadreq/jsonl.hpp"

#include <json.hpp>

namespace roadreq {

std::optional<ScoreRecord> ScoreRecordReader::next() {
  std::string raw;
  while (std::getline(in_, raw)) {
    ++line_;
    size_t b = raw.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;

    nlohmann::json j = nlohmann::json::parse(raw, nullptr, false);
    if (j.is_discarded()) throw JsonlError(line_, "invalid JSON");
    if (!j.is_object()) throw JsonlError(line_, "expected a JSON object");
    if (!j.contains("scores") || !j["scores"].is_array())
      throw JsonlError(line_, "missing \"scores\" array");
    if (static_cast<int>(j["scores"].size()) != n_labels_)
      throw JsonlError(line_, "expected " + std::to_string(n_labels_) + " scores, got " +
                                  std::to_string(j["scores"].size()));

    std::vector<double> scores;
    scores.reserve(n_labels_);
    for (const auto& v : j["scores"]) {
      if (!v.is_number()) throw JsonlError(line_, "scores must be numbers");
      double s = v.get<double>();
      if (!(s >= 0.0 && s <= 1.0)) throw JsonlError(line_, "score outside [0,1]");
      scores.push_back(s);
    }
    std::string id = j.value("id", std::string{});

    ScoreRecord rec;
    rec.scores = ScoreVector(std::move(scores), std::move(id));
    if (j.contains("gt")) {
      if (!j["gt"].is_array() || static_cast<int>(j["gt"].size()) != n_labels_)
        throw JsonlError(line_, "\"gt\" must be an array of " + std::to_string(n_labels_) +
                                    " booleans");
      Prediction gt(0, n_labels_);
      for (int i = 0; i < n_labels_; ++i) {
        const auto& v = j["gt"][i];
        if (!v.is_boolean()) throw JsonlError(line_, "\"gt\" entries must be booleans");
        gt.set(i, v.get<bool>());
      }
      rec.ground_truth = gt;
    }
    return rec;
  }
  return std::nullopt;
}

}  // namespace roadreq
