// Copyright (c) 2026 roadreq contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <istream>
#include <optional>
#include <string>

#include "roadreq/prediction.hpp"

namespace roadreq {

/// One line of the predictions file:
///   {"id": "box-3", "scores": [41 reals], "gt": [41 booleans]}
/// "id" and "gt" are optional; "scores" is required.
struct ScoreRecord {
  ScoreVector scores;
  std::optional<Prediction> ground_truth;
};

class JsonlError : public std::runtime_error {
 public:
  JsonlError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line(line) {}
  int line;
};

/// Streaming JSON Lines reader; blank lines are skipped.
class ScoreRecordReader {
 public:
  ScoreRecordReader(std::istream& in, int n_labels) : in_(in), n_labels_(n_labels) {}

  /// Next record, or nullopt at end of input. Throws JsonlError on bad input.
  std::optional<ScoreRecord> next();

  int line() const { return line_; }

 private:
  std::istream& in_;
  int n_labels_;
  int line_ = 0;
};

}  // namespace roadreq
