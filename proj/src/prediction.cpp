// Copyright (c) 2026 roadreq contributors
// SPDX-License-Identifier: Apache-2.0
#include "roadreq/prediction.hpp"

#include <stdexcept>

namespace roadreq {

ScoreVector::ScoreVector(std::vector<double> scores, std::string id)
    : scores_(std::move(scores)), id_(std::move(id)) {
  for (double s : scores_)
    if (!(s >= 0.0 && s <= 1.0))
      throw std::domain_error("score outside [0,1]");
}

void ScoreVector::set(int i, double value) {
  if (!(value >= 0.0 && value <= 1.0)) throw std::domain_error("score outside [0,1]");
  scores_.at(i) = value;
}

Prediction::Prediction(uint64_t bits, int n_labels) : bits_(bits), n_(n_labels) {
  if (n_labels < 0 || n_labels > 64) throw std::invalid_argument("label count out of range");
  if (n_labels < 64) bits_ &= (uint64_t{1} << n_labels) - 1;
}

Prediction::Prediction(const std::vector<bool>& assignment)
    : Prediction(0, static_cast<int>(assignment.size())) {
  for (size_t i = 0; i < assignment.size(); ++i)
    if (assignment[i]) bits_ |= uint64_t{1} << i;
}

Prediction Prediction::all_positive(int n_labels) {
  uint64_t bits = n_labels >= 64 ? ~uint64_t{0} : (uint64_t{1} << n_labels) - 1;
  return Prediction(bits, n_labels);
}

void Prediction::set(int i, bool positive) {
  if (i < 0 || i >= n_) throw std::out_of_range("label index");
  if (positive)
    bits_ |= uint64_t{1} << i;
  else
    bits_ &= ~(uint64_t{1} << i);
}

Prediction threshold(const ScoreVector& sv, double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::domain_error("theta outside [0,1]");
  Prediction p(0, sv.size());
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > theta) p.set(i, true);
  return p;
}

}  // namespace roadreq
