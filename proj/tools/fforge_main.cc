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

// fforge: self-blended synthesis, balancing, fairness-aware SAM training and
// per-group evaluation for face forgery detectors.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fforge/commands.h"

namespace {

constexpr char kExitCodes[] =
    "Exit codes: 0 success, 1 validation error, 2 runtime failure.";

struct Flags {
  std::string config;
  uint64_t seed = 0;
  std::string out;
  bool dry_run = false;
};

CLI::App* AddCommand(CLI::App& app, const std::string& name,
                     const std::string& description, const std::string& errors,
                     Flags& flags) {
  CLI::App* sub = app.add_subcommand(name, description);
  sub->footer(errors + "\n" + kExitCodes);
  sub->add_option("--config", flags.config, "JSON run configuration")
      ->check(CLI::ExistingFile);
  sub->add_option("--seed", flags.seed, "Global seed (overrides config)");
  sub->add_option("--out", flags.out,
                  "Output directory (overrides paths.out_dir)");
  sub->add_flag("--dry-run", flags.dry_run,
                "Validate and print the effective configuration only");
  return sub;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fforge: fairness-aware face forgery detection toolkit"};
  app.require_subcommand(1);
  Flags flags;

  const std::string common =
      "Validation errors (exit 1): unreadable or malformed --config, unknown "
      "config keys, out-of-range values, unset or missing input paths.";
  CLI::App* synth = AddCommand(
      app, "synth", "One self-blended fake per real sample",
      common + "\nAlso exit 1: fake records in paths.real_manifest, malformed "
               "manifest lines. Exit 2: unreadable images, write failures.",
      flags);
  CLI::App* balance = AddCommand(
      app, "balance", "Equalize demographic groups with self-blended fakes",
      common + "\nAlso exit 1: fake records in paths.real_manifest, a group "
               "without real samples, balance.explicit_count below the "
               "largest group. Exit 2: unreadable images, write failures.",
      flags);
  CLI::App* train = AddCommand(
      app, "train", "Train the detector with SAM and the fairness penalty",
      common + "\nAlso exit 1: empty train split, image size mismatching "
               "the model input. Exit 2: unreadable images, non-finite loss, "
               "write failures.",
      flags);
  CLI::App* predict = AddCommand(
      app, "predict", "Score the test split with a trained checkpoint",
      common + "\nAlso exit 1: corrupt checkpoint, empty test split. Exit 2: "
               "unreadable images, non-finite logits, write failures.",
      flags);
  CLI::App* evaluate = AddCommand(
      app, "evaluate", "Per-group fairness report from predictions",
      common + "\nAlso exit 1: malformed prediction CSV, predictions that "
               "disagree with paths.dataset_manifest. Exit 2: write failures.",
      flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  fforge::CommandOptions options;
  if (!flags.config.empty()) options.config_path = flags.config;
  if (app.get_subcommands().front()->count("--seed") > 0) {
    options.seed = flags.seed;
  }
  if (!flags.out.empty()) options.out_dir = flags.out;
  options.dry_run = flags.dry_run;

  if (synth->parsed()) return fforge::CmdSynth(options, std::cout, std::cerr);
  if (balance->parsed()) {
    return fforge::CmdBalance(options, std::cout, std::cerr);
  }
  if (train->parsed()) return fforge::CmdTrain(options, std::cout, std::cerr);
  if (predict->parsed()) {
    return fforge::CmdPredict(options, std::cout, std::cerr);
  }
  if (evaluate->parsed()) {
    return fforge::CmdEvaluate(options, std::cout, std::cerr);
  }
  return 1;
}
