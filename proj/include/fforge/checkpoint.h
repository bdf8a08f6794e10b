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

#ifndef FFORGE_CHECKPOINT_H_
#define FFORGE_CHECKPOINT_H_

// Checkpoint container:
//
//   "FFORGE1"                      7-byte magic
//   uint32 little-endian           header length in bytes
//   header                         UTF-8 JSON: {"model": ModelSpec,
//                                  "tensors": [{"name", "shape"}...],
//                                  "effective_config": object or null}
//   tensor data                    float32 little-endian, tensors in header
//                                  order, no padding

#include <filesystem>
#include <string>

#include "fforge/model.h"
#include "fforge/params.h"
#include "json.hpp"

namespace fforge {

inline constexpr char kCheckpointMagic[] = "FFORGE1";

struct Checkpoint {
  ModelSpec spec;
  ParamVector params;
  nlohmann::json effective_config;  // null when absent
};

std::string SerializeCheckpoint(const Checkpoint& checkpoint);
// Throws ValidationError for a bad magic, malformed header, or tensors that
// do not match the layout the model spec implies.
Checkpoint DeserializeCheckpoint(const std::string& bytes);

void SaveCheckpoint(const Checkpoint& checkpoint,
                    const std::filesystem::path& path);
Checkpoint LoadCheckpoint(const std::filesystem::path& path);

}  // namespace fforge

#endif  // FFORGE_CHECKPOINT_H_
