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

#include "fforge/metrics.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "fforge/errors.h"

namespace fforge {

PredictionSet::PredictionSet(std::vector<PredictionRow> rows)
    : rows_(std::move(rows)) {
  std::unordered_set<std::string> seen;
  for (const auto& r : rows_) {
    if (!seen.insert(r.sample_id).second) {
      throw ValidationError("duplicate sample id \"" + r.sample_id +
                            "\" in predictions");
    }
    if (!std::isfinite(r.score) || r.score < 0.0 || r.score > 1.0) {
      throw ValidationError("score of \"" + r.sample_id +
                            "\" is not a finite value in [0, 1]");
    }
    if (r.true_label != 0 && r.true_label != 1) {
      throw ValidationError("label of \"" + r.sample_id + "\" must be 0 or 1");
    }
  }
}

double OverallAccuracy(const PredictionSet& preds, double threshold) {
  if (preds.empty()) throw ValidationError("accuracy of an empty set");
  size_t correct = 0;
  for (const auto& r : preds.rows()) {
    if (PredictedFake(r.score, threshold) == (r.true_label == 1)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(preds.size());
}

GroupAccuracies PerGroupAccuracy(const PredictionSet& preds,
                                 double threshold) {
  std::array<size_t, kNumGroups> correct{};
  std::array<size_t, kNumGroups> total{};
  for (const auto& r : preds.rows()) {
    const int k = r.group.index();
    ++total[k];
    if (PredictedFake(r.score, threshold) == (r.true_label == 1)) ++correct[k];
  }
  GroupAccuracies out;
  for (int k = 0; k < kNumGroups; ++k) {
    if (total[k] > 0) {
      out[k] = static_cast<double>(correct[k]) / static_cast<double>(total[k]);
    }
  }
  return out;
}

double MaxDisparity(std::span<const std::optional<double>> accuracies) {
  std::optional<double> lo, hi;
  for (const auto& a : accuracies) {
    if (!a) continue;
    lo = lo ? std::min(*lo, *a) : *a;
    hi = hi ? std::max(*hi, *a) : *a;
  }
  if (!lo) throw ValidationError("max disparity needs a present group");
  return *hi - *lo;
}

std::optional<double> TruePositiveRate(std::span<const PredictionRow> rows,
                                       double threshold) {
  size_t positives = 0;
  size_t hits = 0;
  for (const auto& r : rows) {
    if (r.true_label != 1) continue;
    ++positives;
    if (PredictedFake(r.score, threshold)) ++hits;
  }
  if (positives == 0) return std::nullopt;
  return static_cast<double>(hits) / static_cast<double>(positives);
}

std::optional<double> AreaUnderCurve(std::span<const PredictionRow> rows) {
  std::vector<std::pair<double, int>> scored;
  scored.reserve(rows.size());
  size_t positives = 0;
  for (const auto& r : rows) {
    scored.emplace_back(r.score, r.true_label);
    positives += r.true_label == 1;
  }
  const size_t negatives = rows.size() - positives;
  if (positives == 0 || negatives == 0) return std::nullopt;

  std::sort(scored.begin(), scored.end());
  // Sum of mid-ranks (1-based) of the positives. Ranks are half-integers, so
  // the sum is exact in double for any realistic set size.
  double rank_sum = 0.0;
  size_t i = 0;
  while (i < scored.size()) {
    size_t j = i;
    size_t pos_in_tie = 0;
    while (j < scored.size() && scored[j].first == scored[i].first) {
      pos_in_tie += scored[j].second == 1;
      ++j;
    }
    const double mid_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    rank_sum += mid_rank * static_cast<double>(pos_in_tie);
    i = j;
  }
  const double np = static_cast<double>(positives);
  const double u = rank_sum - np * (np + 1.0) / 2.0;
  return u / (np * static_cast<double>(negatives));
}

GroupMetrics ComputeGroupMetrics(std::span<const PredictionRow> rows,
                                 double threshold) {
  GroupMetrics m;
  m.count = static_cast<int>(rows.size());
  if (rows.empty()) return m;
  size_t correct = 0;
  for (const auto& r : rows) {
    if (PredictedFake(r.score, threshold) == (r.true_label == 1)) ++correct;
  }
  m.accuracy = static_cast<double>(correct) / static_cast<double>(rows.size());
  m.tpr = TruePositiveRate(rows, threshold);
  m.auc = AreaUnderCurve(rows);
  return m;
}

}  // namespace fforge
