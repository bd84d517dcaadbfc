// Copyright (c) 2026 roadreq contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "roadreq/labels.hpp"

namespace roadreq {

/// One prediction unit's model outputs: a score in [0,1] per label.
class ScoreVector {
 public:
  ScoreVector() = default;
  explicit ScoreVector(std::vector<double> scores, std::string id = {});

  int size() const { return static_cast<int>(scores_.size()); }
  double operator[](int i) const { return scores_[i]; }
  const std::vector<double>& values() const { return scores_; }
  const std::string& id() const { return id_; }

  void set(int i, double value);

 private:
  std::vector<double> scores_;
  std::string id_;
};

/// A total assignment of positive/negative polarity to every label. Serves
/// both model predictions and ground truths. Backed by a bit mask (label
/// count is limited to 64, well above the 41 ROAD labels).
class Prediction {
 public:
  Prediction() = default;
  Prediction(uint64_t bits, int n_labels);
  explicit Prediction(const std::vector<bool>& assignment);

  static Prediction all_negative(int n_labels) { return Prediction(0, n_labels); }
  static Prediction all_positive(int n_labels);

  int size() const { return n_; }
  bool positive(int i) const { return (bits_ >> i) & 1; }
  void set(int i, bool positive);
  uint64_t bits() const { return bits_; }

  bool operator==(const Prediction&) const = default;

 private:
  uint64_t bits_ = 0;
  int n_ = 0;
};

/// Label i is positive iff score > theta; a score equal to theta is negative.
/// Throws std::domain_error unless theta is in [0,1].
Prediction threshold(const ScoreVector& sv, double theta);

}  // namespace roadreq
