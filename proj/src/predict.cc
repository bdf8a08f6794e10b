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

#include "fforge/predict.h"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "fforge/errors.h"
#include "fforge/loss.h"

namespace fforge {
namespace {

constexpr char kCsvHeader[] = "sample_id,score,true_label,gender,race";

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, ',')) fields.push_back(cur);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

PredictionSet PredictRecords(const ModelSpec& spec, const ParamVector& params,
                             std::span<const SampleRecord> records,
                             ImageStore& images, int chunk) {
  if (chunk < 1) throw ValidationError("prediction chunk must be >= 1");
  std::vector<PredictionRow> rows;
  rows.reserve(records.size());
  for (size_t begin = 0; begin < records.size();
       begin += static_cast<size_t>(chunk)) {
    const size_t end = std::min(records.size(), begin + chunk);
    const auto part = records.subspan(begin, end - begin);
    const Batch batch = MakeBatch(part, images);
    const ForwardResult<float> fwd = Forward(spec, params, batch);
    for (size_t i = 0; i < part.size(); ++i) {
      const double logit = fwd.fake_logits[i];
      if (!std::isfinite(logit)) {
        throw NumericError("non-finite logit for sample \"" + part[i].id + "\"");
      }
      rows.push_back({part[i].id, Sigmoid(logit),
                      static_cast<int>(part[i].label), part[i].group});
    }
  }
  return PredictionSet(std::move(rows));
}

PredictionSet Predict(const ModelSpec& spec, const ParamVector& params,
                      const DatasetManifest& manifest, ImageStore& images) {
  const std::vector<SampleRecord> test = manifest.Filter(Split::kTest);
  if (test.empty()) throw ValidationError("manifest has no test samples");
  return PredictRecords(spec, params, test, images);
}

void WritePredictionsCsv(const PredictionSet& preds, std::ostream& out) {
  out << kCsvHeader << '\n';
  char score[40];
  for (const auto& r : preds.rows()) {
    if (r.sample_id.find_first_of(",\"\r\n") != std::string::npos) {
      throw ValidationError("sample id \"" + r.sample_id +
                            "\" cannot be written to CSV");
    }
    std::snprintf(score, sizeof(score), "%.17g", r.score);
    out << r.sample_id << ',' << score << ',' << r.true_label << ','
        << GenderToken(r.group.gender) << ',' << RaceToken(r.group.race)
        << '\n';
  }
}

void WritePredictionsCsv(const PredictionSet& preds,
                         const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  WritePredictionsCsv(preds, out);
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

PredictionSet ReadPredictionsCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ValidationError("prediction file is empty");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) {
    throw ValidationError("prediction file header must be \"" +
                          std::string(kCsvHeader) + "\"");
  }
  std::vector<PredictionRow> rows;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      const auto f = SplitCsv(line);
      if (f.size() != 5) throw ValidationError("expected 5 fields");
      PredictionRow row;
      row.sample_id = f[0];
      if (row.sample_id.empty()) throw ValidationError("empty sample_id");
      errno = 0;
      char* end = nullptr;
      row.score = std::strtod(f[1].c_str(), &end);
      if (f[1].empty() || *end != '\0' || errno == ERANGE) {
        throw ValidationError("malformed score \"" + f[1] + "\"");
      }
      if (!(row.score >= 0.0 && row.score <= 1.0)) {
        throw ValidationError("score " + f[1] + " is outside [0, 1]");
      }
      if (f[2] != "0" && f[2] != "1") {
        throw ValidationError("unknown label token \"" + f[2] + "\"");
      }
      row.true_label = f[2] == "1";
      row.group.gender = ParseGender(f[3]);
      row.group.race = ParseRace(f[4]);
      rows.push_back(std::move(row));
    } catch (const ValidationError& e) {
      throw ValidationError("predictions line " + std::to_string(line_no) +
                            ": " + e.what());
    }
  }
  return PredictionSet(std::move(rows));
}

PredictionSet ReadPredictionsCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open predictions " + path.string());
  try {
    return ReadPredictionsCsv(in);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace fforge
