/*
 * Copyright 2026 The FairForge Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FFORGE_METRICS_H_
#define FFORGE_METRICS_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fforge/demographics.h"

namespace fforge {

// Scores at or above the threshold are classified fake.
inline constexpr double kDefaultThreshold = 0.5;

struct PredictionRow {
  std::string sample_id;
  double score = 0.0;  // probability of fake, in [0, 1]
  int true_label = 0;  // 1 = fake
  DemographicGroup group;

  friend bool operator==(const PredictionRow&, const PredictionRow&) = default;
};

// Rows with unique ids, finite scores in [0, 1] and binary labels.
class PredictionSet {
 public:
  PredictionSet() = default;
  // Throws ValidationError on duplicate ids or invalid values.
  explicit PredictionSet(std::vector<PredictionRow> rows);

  const std::vector<PredictionRow>& rows() const { return rows_; }
  size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  friend bool operator==(const PredictionSet&, const PredictionSet&) = default;

 private:
  std::vector<PredictionRow> rows_;
};

inline bool PredictedFake(double score, double threshold) {
  return score >= threshold;
}

// Undefined values are nullopt, never zero.
struct GroupMetrics {
  int count = 0;
  std::optional<double> accuracy;  // undefined iff count == 0
  std::optional<double> tpr;       // undefined without positives
  std::optional<double> auc;       // undefined unless both classes occur
};

using GroupAccuracies = std::array<std::optional<double>, kNumGroups>;

// Fraction of rows whose thresholded prediction matches the label. Throws
// ValidationError for an empty set.
double OverallAccuracy(const PredictionSet& preds,
                       double threshold = kDefaultThreshold);

// Accuracy restricted to each group; absent groups are nullopt.
GroupAccuracies PerGroupAccuracy(const PredictionSet& preds,
                                 double threshold = kDefaultThreshold);

// max - min over the defined entries, which equals the largest pairwise gap.
// 0 for a single defined entry; ValidationError when none is defined.
double MaxDisparity(std::span<const std::optional<double>> accuracies);

// TP / (TP + FN) with the same tie rule as accuracy.
std::optional<double> TruePositiveRate(std::span<const PredictionRow> rows,
                                       double threshold = kDefaultThreshold);

// Mann-Whitney statistic: P(random positive outranks random negative), ties
// counting one half. Computed from mid-ranks.
std::optional<double> AreaUnderCurve(std::span<const PredictionRow> rows);

GroupMetrics ComputeGroupMetrics(std::span<const PredictionRow> rows,
                                 double threshold = kDefaultThreshold);

}  // namespace fforge

#endif  // FFORGE_METRICS_H_
