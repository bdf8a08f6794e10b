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

#ifndef FFORGE_REPORT_H_
#define FFORGE_REPORT_H_

#include <array>
#include <string>

#include "fforge/demographics.h"
#include "fforge/metrics.h"
#include "json.hpp"

namespace fforge {

struct FairnessReport {
  std::string dataset_name;
  double threshold = kDefaultThreshold;
  GroupMetrics overall;
  // Indexed by DemographicGroup::index(); absent groups have count 0.
  std::array<GroupMetrics, kNumGroups> per_group;
  std::array<GroupMetrics, kNumGenders> gender_marginal;
  std::array<GroupMetrics, kNumRaces> race_marginal;
  // Largest accuracy gap among present intersection groups.
  double max_disparity_accuracy = 0.0;
  double gender_disparity_accuracy = 0.0;
  double race_disparity_accuracy = 0.0;
};

// Throws ValidationError for an empty prediction set.
FairnessReport BuildReport(const PredictionSet& preds,
                           const std::string& dataset_name,
                           double threshold = kDefaultThreshold);

// Pretty-printed JSON with sorted keys. Fractions carry 6 decimals, the
// matching *_pct fields 2 decimals; undefined metrics are null. Top-level
// keys: dataset, gender_marginal, max_disparity_accuracy(_pct), overall,
// per_group, race_marginal, threshold, plus effective_config when given.
std::string ReportToJson(const FairnessReport& report,
                         const nlohmann::json& effective_config = nullptr);

}  // namespace fforge

#endif  // FFORGE_REPORT_H_
