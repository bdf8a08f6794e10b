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

#include "fforge/manifest.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_set>

#include "fforge/errors.h"
#include "json.hpp"

namespace fforge {
namespace {

using nlohmann::json;

const std::set<std::string>& RecordKeys() {
  static const std::set<std::string> keys = {
      "gender", "id", "image_path", "label", "provenance", "race", "split"};
  return keys;
}

const json& Require(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw ValidationError(std::string("missing field \"") + key + "\"");
  }
  return *it;
}

std::string RequireString(const json& obj, const char* key) {
  const json& v = Require(obj, key);
  if (!v.is_string()) {
    throw ValidationError(std::string("field \"") + key +
                          "\" must be a string");
  }
  return v.get<std::string>();
}

}  // namespace

DatasetManifest::DatasetManifest(std::string source_name,
                                 std::vector<SampleRecord> records)
    : source_name_(std::move(source_name)), records_(std::move(records)) {
  std::unordered_set<std::string> seen;
  seen.reserve(records_.size());
  for (const auto& r : records_) {
    if (r.id.empty()) throw ValidationError("empty sample id");
    if (!seen.insert(r.id).second) {
      throw ValidationError("duplicate sample id \"" + r.id + "\"");
    }
    if (r.provenance == Provenance::kSynthetic && r.label != Label::kFake) {
      throw ValidationError("synthetic sample \"" + r.id +
                            "\" must be labeled fake");
    }
  }
}

std::vector<SampleRecord> DatasetManifest::Filter(Split split) const {
  std::vector<SampleRecord> out;
  for (const auto& r : records_) {
    if (r.split == split) out.push_back(r);
  }
  return out;
}

std::string RecordToJsonLine(const SampleRecord& record) {
  json obj;
  obj["id"] = record.id;
  obj["image_path"] = record.image_path;
  obj["label"] = static_cast<int>(record.label);
  obj["gender"] = std::string(GenderToken(record.group.gender));
  obj["race"] = std::string(RaceToken(record.group.race));
  obj["provenance"] =
      record.provenance == Provenance::kOriginal ? "original" : "synthetic";
  obj["split"] = record.split == Split::kTrain ? "train" : "test";
  return obj.dump();
}

SampleRecord RecordFromJsonLine(const std::string& line) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  if (!obj.is_object()) throw ValidationError("record is not a JSON object");
  for (const auto& [key, _] : obj.items()) {
    if (!RecordKeys().contains(key)) {
      throw ValidationError("unknown field \"" + key + "\"");
    }
  }

  SampleRecord r;
  r.id = RequireString(obj, "id");
  r.image_path = RequireString(obj, "image_path");

  const json& label = Require(obj, "label");
  if (!label.is_number_integer() ||
      (label.get<int64_t>() != 0 && label.get<int64_t>() != 1)) {
    throw ValidationError("unknown label token " + label.dump());
  }
  r.label = label.get<int64_t>() == 0 ? Label::kReal : Label::kFake;

  r.group.gender = ParseGender(RequireString(obj, "gender"));
  r.group.race = ParseRace(RequireString(obj, "race"));

  const std::string provenance = RequireString(obj, "provenance");
  if (provenance == "original") {
    r.provenance = Provenance::kOriginal;
  } else if (provenance == "synthetic") {
    r.provenance = Provenance::kSynthetic;
  } else {
    throw ValidationError("unknown provenance token \"" + provenance + "\"");
  }

  const std::string split = RequireString(obj, "split");
  if (split == "train") {
    r.split = Split::kTrain;
  } else if (split == "test") {
    r.split = Split::kTest;
  } else {
    throw ValidationError("unknown split token \"" + split + "\"");
  }
  return r;
}

DatasetManifest ReadManifest(std::istream& in, std::string source_name) {
  std::vector<SampleRecord> records;
  std::unordered_set<std::string> seen;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      records.push_back(RecordFromJsonLine(line));
      if (!seen.insert(records.back().id).second) {
        throw ValidationError("duplicate sample id \"" + records.back().id +
                              "\"");
      }
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " +
                            e.what());
    }
  }
  if (in.bad()) throw IoError("read error in manifest " + source_name);
  try {
    return DatasetManifest(std::move(source_name), std::move(records));
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("manifest: ") + e.what());
  }
}

DatasetManifest LoadManifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open manifest " + path.string());
  try {
    return ReadManifest(in, path.stem().string());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void WriteManifest(const DatasetManifest& manifest, std::ostream& out) {
  for (const auto& r : manifest.records()) out << RecordToJsonLine(r) << '\n';
}

void WriteManifest(const DatasetManifest& manifest,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  WriteManifest(manifest, out);
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

GroupPartition PartitionByGroup(const DatasetManifest& manifest) {
  GroupPartition partition;
  for (const auto& r : manifest.records()) {
    partition[r.group.index()].push_back(r.id);
  }
  return partition;
}

size_t DatasetStats::Total() const {
  size_t total = 0;
  for (const auto& row : counts_) total += row[0] + row[1];
  return total;
}

DatasetStats ComputeDatasetStats(const DatasetManifest& manifest) {
  DatasetStats stats;
  for (const auto& r : manifest.records()) stats.Add(r.group, r.label);
  return stats;
}

}  // namespace fforge
