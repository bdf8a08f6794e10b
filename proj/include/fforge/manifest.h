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

#ifndef FFORGE_MANIFEST_H_
#define FFORGE_MANIFEST_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fforge/demographics.h"

namespace fforge {

enum class Label { kReal = 0, kFake = 1 };
enum class Provenance { kOriginal, kSynthetic };
enum class Split { kTrain, kTest };

struct SampleRecord {
  std::string id;
  // Relative paths resolve against the manifest's directory.
  std::string image_path;
  Label label = Label::kReal;
  DemographicGroup group;
  Provenance provenance = Provenance::kOriginal;
  Split split = Split::kTrain;

  friend bool operator==(const SampleRecord&, const SampleRecord&) = default;
};

// Ordered, validated list of samples. Immutable once built; safe to share
// read-only across threads.
class DatasetManifest {
 public:
  DatasetManifest() = default;
  // Validates: unique ids, synthetic records labeled fake.
  DatasetManifest(std::string source_name, std::vector<SampleRecord> records);

  const std::string& source_name() const { return source_name_; }
  const std::vector<SampleRecord>& records() const { return records_; }
  size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  // Records of one split, in manifest order.
  std::vector<SampleRecord> Filter(Split split) const;

  friend bool operator==(const DatasetManifest&,
                         const DatasetManifest&) = default;

 private:
  std::string source_name_;
  std::vector<SampleRecord> records_;
};

// Canonical JSONL line for one record (sorted keys, compact).
std::string RecordToJsonLine(const SampleRecord& record);
// Parses one JSONL line. Throws ValidationError naming the offending field or
// token.
SampleRecord RecordFromJsonLine(const std::string& line);

// Loads a JSONL manifest; errors name the 1-based line number. The manifest's
// source_name is the file stem.
DatasetManifest LoadManifest(const std::filesystem::path& path);
DatasetManifest ReadManifest(std::istream& in, std::string source_name);

void WriteManifest(const DatasetManifest& manifest, std::ostream& out);
void WriteManifest(const DatasetManifest& manifest,
                   const std::filesystem::path& path);

// Sample ids per group, indexed by DemographicGroup::index(). Every group has
// an entry, possibly empty.
using GroupPartition = std::array<std::vector<std::string>, kNumGroups>;
GroupPartition PartitionByGroup(const DatasetManifest& manifest);

// Counts per (group, label).
class DatasetStats {
 public:
  size_t count(const DemographicGroup& group, Label label) const {
    return counts_[group.index()][static_cast<int>(label)];
  }
  size_t GroupTotal(const DemographicGroup& group) const {
    return count(group, Label::kReal) + count(group, Label::kFake);
  }
  size_t Total() const;

  void Add(const DemographicGroup& group, Label label) {
    ++counts_[group.index()][static_cast<int>(label)];
  }

  friend bool operator==(const DatasetStats&, const DatasetStats&) = default;

 private:
  std::array<std::array<size_t, 2>, kNumGroups> counts_{};
};

DatasetStats ComputeDatasetStats(const DatasetManifest& manifest);

}  // namespace fforge

#endif  // FFORGE_MANIFEST_H_
