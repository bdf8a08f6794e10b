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

#include "fforge/report.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <optional>
#include <vector>

#include "fforge/errors.h"

namespace fforge {
namespace {

std::string Fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string Quote(const std::string& s) { return nlohmann::json(s).dump(); }

// Minimal writer for an object tree whose keys the caller emits in sorted
// order.
class JsonWriter {
 public:
  void BeginObject() {
    out_ += "{";
    first_.push_back(true);
  }
  void EndObject() {
    const bool empty = first_.back();
    first_.pop_back();
    if (!empty) Newline();
    out_ += "}";
  }
  void Key(const std::string& key) {
    if (!first_.back()) out_ += ",";
    first_.back() = false;
    Newline();
    out_ += Quote(key) + ": ";
  }
  void Raw(const std::string& text) { out_ += text; }
  void Number(double v, int decimals) { out_ += Fixed(v, decimals); }
  void Optional(const std::optional<double>& v, int decimals, double scale) {
    out_ += v ? Fixed(*v * scale, decimals) : "null";
  }

  std::string Take() { return std::move(out_) + "\n"; }

 private:
  void Newline() {
    out_ += "\n";
    out_.append(2 * first_.size(), ' ');
  }

  std::string out_;
  std::vector<bool> first_;
};

void WriteMetrics(JsonWriter& w, const GroupMetrics& m) {
  w.BeginObject();
  w.Key("accuracy");
  w.Optional(m.accuracy, 6, 1.0);
  w.Key("accuracy_pct");
  w.Optional(m.accuracy, 2, 100.0);
  w.Key("auc");
  w.Optional(m.auc, 6, 1.0);
  w.Key("auc_pct");
  w.Optional(m.auc, 2, 100.0);
  w.Key("count");
  w.Raw(std::to_string(m.count));
  w.Key("present");
  w.Raw(m.count > 0 ? "true" : "false");
  w.Key("tpr");
  w.Optional(m.tpr, 6, 1.0);
  w.Key("tpr_pct");
  w.Optional(m.tpr, 2, 100.0);
  w.EndObject();
}

void WriteDisparity(JsonWriter& w, double disparity) {
  w.Key("max_disparity_accuracy");
  w.Number(disparity, 6);
  w.Key("max_disparity_accuracy_pct");
  w.Number(disparity * 100.0, 2);
}

template <size_t N>
void WriteMarginal(JsonWriter& w, const std::array<GroupMetrics, N>& entries,
                   const std::array<std::string, N>& names, double disparity) {
  std::map<std::string, const GroupMetrics*> sorted;
  for (size_t i = 0; i < N; ++i) sorted[names[i]] = &entries[i];
  w.BeginObject();
  w.Key("groups");
  w.BeginObject();
  for (const auto& [name, m] : sorted) {
    w.Key(name);
    WriteMetrics(w, *m);
  }
  w.EndObject();
  WriteDisparity(w, disparity);
  w.EndObject();
}

template <size_t N>
double DisparityOf(const std::array<GroupMetrics, N>& entries) {
  std::array<std::optional<double>, N> acc;
  for (size_t i = 0; i < N; ++i) acc[i] = entries[i].accuracy;
  return MaxDisparity(acc);
}

}  // namespace

FairnessReport BuildReport(const PredictionSet& preds,
                           const std::string& dataset_name, double threshold) {
  if (preds.empty()) throw ValidationError("cannot report on empty predictions");
  FairnessReport report;
  report.dataset_name = dataset_name;
  report.threshold = threshold;
  report.overall = ComputeGroupMetrics(preds.rows(), threshold);

  std::array<std::vector<PredictionRow>, kNumGroups> by_group;
  std::array<std::vector<PredictionRow>, kNumGenders> by_gender;
  std::array<std::vector<PredictionRow>, kNumRaces> by_race;
  for (const auto& r : preds.rows()) {
    by_group[r.group.index()].push_back(r);
    by_gender[static_cast<int>(r.group.gender)].push_back(r);
    by_race[static_cast<int>(r.group.race)].push_back(r);
  }
  for (int k = 0; k < kNumGroups; ++k) {
    report.per_group[k] = ComputeGroupMetrics(by_group[k], threshold);
  }
  for (int g = 0; g < kNumGenders; ++g) {
    report.gender_marginal[g] = ComputeGroupMetrics(by_gender[g], threshold);
  }
  for (int r = 0; r < kNumRaces; ++r) {
    report.race_marginal[r] = ComputeGroupMetrics(by_race[r], threshold);
  }
  report.max_disparity_accuracy = DisparityOf(report.per_group);
  report.gender_disparity_accuracy = DisparityOf(report.gender_marginal);
  report.race_disparity_accuracy = DisparityOf(report.race_marginal);
  return report;
}

std::string ReportToJson(const FairnessReport& report,
                         const nlohmann::json& effective_config) {
  JsonWriter w;
  w.BeginObject();
  w.Key("dataset");
  w.Raw(Quote(report.dataset_name));
  if (!effective_config.is_null()) {
    w.Key("effective_config");
    w.Raw(effective_config.dump());
  }
  w.Key("gender_marginal");
  WriteMarginal<kNumGenders>(
      w, report.gender_marginal,
      {std::string(GenderToken(Gender::kMale)),
       std::string(GenderToken(Gender::kFemale))},
      report.gender_disparity_accuracy);
  WriteDisparity(w, report.max_disparity_accuracy);
  w.Key("overall");
  WriteMetrics(w, report.overall);

  std::map<std::string, int> codes;
  for (const auto& g : AllGroups()) codes[g.code()] = g.index();
  w.Key("per_group");
  w.BeginObject();
  for (const auto& [code, k] : codes) {
    w.Key(code);
    WriteMetrics(w, report.per_group[k]);
  }
  w.EndObject();

  std::array<std::string, kNumRaces> races;
  for (int r = 0; r < kNumRaces; ++r) {
    races[r] = std::string(RaceToken(static_cast<Race>(r)));
  }
  w.Key("race_marginal");
  WriteMarginal<kNumRaces>(w, report.race_marginal, races,
                           report.race_disparity_accuracy);
  w.Key("threshold");
  w.Number(report.threshold, 6);
  w.EndObject();
  return w.Take();
}

}  // namespace fforge
