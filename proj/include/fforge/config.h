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

#ifndef FFORGE_CONFIG_H_
#define FFORGE_CONFIG_H_

// Run configuration shared by every subcommand. One JSON document:
//
//   {
//     "seed": 0,
//     "paths": {"real_manifest", "dataset_manifest", "checkpoint",
//               "predictions", "out_dir"},
//     "model": {...ModelSpec...},
//     "train": {...SamConfig...},
//     "synth": {"scale": [lo, hi], "rotation_deg": [lo, hi], ...},
//     "balance": {"target": "max_group" | "explicit_count",
//                 "explicit_count": N},
//     "eval": {"threshold": 0.5, "dataset_name": ""}
//   }
//
// Every section and key is optional; unknown keys at any level are errors.
// Relative paths resolve against the working directory.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "fforge/metrics.h"
#include "fforge/model.h"
#include "fforge/sam.h"
#include "fforge/synth.h"
#include "json.hpp"

namespace fforge {

struct PathConfig {
  std::string real_manifest;
  std::string dataset_manifest;
  std::string checkpoint;
  std::string predictions;
  std::string out_dir;
};

struct EvalConfig {
  double threshold = kDefaultThreshold;
  // Defaults to the evaluated manifest's or prediction file's stem.
  std::string dataset_name;
};

struct RunConfig {
  uint64_t seed = 0;
  PathConfig paths;
  ModelSpec model;
  SamConfig train;
  SynthRanges synth;
  BalancePolicy balance;
  EvalConfig eval;

  // Checks every section; throws ValidationError.
  void Validate() const;
};

RunConfig RunConfigFromJson(const nlohmann::json& j);
// Fully resolved form, defaults included. Round-trips through
// RunConfigFromJson.
nlohmann::json RunConfigToJson(const RunConfig& config);

// Reads and parses a config file. Throws ValidationError when the file is
// missing or malformed.
RunConfig LoadRunConfig(const std::filesystem::path& path);

}  // namespace fforge

#endif  // FFORGE_CONFIG_H_
