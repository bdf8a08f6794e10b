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

#ifndef FFORGE_TESTS_TEST_SUPPORT_H_
#define FFORGE_TESTS_TEST_SUPPORT_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>

#include "json.hpp"

#include "fforge/demographics.h"
#include "fforge/image.h"
#include "fforge/image_store.h"
#include "fforge/manifest.h"
#include "fforge/metrics.h"
#include "fforge/rng.h"

namespace fforge::testing {

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

ImageTensor RandomImage(Rng& rng, int height, int width);

// Real-only dataset of uniform-noise images carrying a per-group tint.
// Every fourth sample of a group goes to the test split. Writes images/ and
// manifest.jsonl under dir and returns the manifest.
DatasetManifest WriteToyRealDataset(const std::filesystem::path& dir,
                                    const std::array<int, kNumGroups>& counts,
                                    int side, uint64_t seed);

// Same records without touching disk; images go into `store`.
DatasetManifest MakeToyRealDataset(const std::array<int, kNumGroups>& counts,
                                   int side, uint64_t seed, ImageStore& store);

// Two-pattern forgery data: a demographic colour pattern on every image and,
// on fakes, a checkerboard-textured square patch whose amplitude depends on
// the group.
struct PatternDataOptions {
  int side = 64;
  int real_per_group = 100;
  int fake_per_group = 100;
  int patch_side = 16;
  double noise = 0.08;
  double artifact = 0.25;
  double subtle_artifact = 0.08;
  int subtle_group = DemographicGroup{Gender::kFemale, Race::kAsian}.index();
  Split split = Split::kTrain;
  std::string id_prefix = "p";
  uint64_t seed = 0;
};
DatasetManifest MakePatternDataset(const PatternDataOptions& options,
                                   ImageStore& store);

// Prediction set with random scores, labels and groups; some groups may be
// absent. Scores are drawn from a small grid so ties occur.
PredictionSet RandomPredictionSet(Rng& rng, int max_rows);

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs `binary args` with `cwd` as working directory, capturing both streams.
CliResult RunCli(const std::string& binary, const std::string& args,
                 const std::filesystem::path& cwd);

// Writes a real-only toy dataset under dir/real and a config file dir/c.json
// whose paths chain the five subcommands when each runs with
// --out <dir>/{synth,balance,train,predict,evaluate}. Training runs 2 epochs
// on a small 16x16 model.
std::filesystem::path WriteToyPipeline(const std::filesystem::path& dir,
                                       uint64_t seed);

}  // namespace fforge::testing

#endif  // FFORGE_TESTS_TEST_SUPPORT_H_
