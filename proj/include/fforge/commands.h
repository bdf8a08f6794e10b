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

#ifndef FFORGE_COMMANDS_H_
#define FFORGE_COMMANDS_H_

// Pipeline stages behind the fforge subcommands. Each returns a process exit
// code: 0 on success, 1 on a validation error (bad config, bad input data),
// 2 on a runtime failure (I/O, non-finite numerics). Errors are reported on
// `err`. Outputs go only to the output directory, which also receives
// effective_config.json.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "fforge/config.h"

namespace fforge {

struct CommandOptions {
  std::optional<std::filesystem::path> config_path;
  std::optional<uint64_t> seed;
  std::optional<std::filesystem::path> out_dir;
  // Validate and print the effective configuration; write nothing.
  bool dry_run = false;
};

// Config file (or defaults) with --seed and --out applied.
RunConfig ResolveConfig(const CommandOptions& options);

// synth: one self-blended fake per real sample of paths.real_manifest.
// Writes manifest.jsonl and images/.
int CmdSynth(const CommandOptions& options, std::ostream& out,
             std::ostream& err);
// balance: equalizes the eight groups of paths.real_manifest with
// self-blended fakes. Writes manifest.jsonl and images/.
int CmdBalance(const CommandOptions& options, std::ostream& out,
               std::ostream& err);
// train: fits a model on the train split of paths.dataset_manifest. Writes
// model.ffg, train_log.jsonl and checkpoint_epoch<N>.ffg every
// train.checkpoint_every epochs.
int CmdTrain(const CommandOptions& options, std::ostream& out,
             std::ostream& err);
// predict: scores the test split of paths.dataset_manifest with
// paths.checkpoint. Writes predictions.csv.
int CmdPredict(const CommandOptions& options, std::ostream& out,
               std::ostream& err);
// evaluate: fairness report for paths.predictions, cross-checked against
// paths.dataset_manifest when set. Writes report.json.
int CmdEvaluate(const CommandOptions& options, std::ostream& out,
                std::ostream& err);

}  // namespace fforge

#endif  // FFORGE_COMMANDS_H_
