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

#include "fforge/commands.h"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>

#include "fforge/checkpoint.h"
#include "fforge/errors.h"
#include "fforge/image_store.h"
#include "fforge/manifest.h"
#include "fforge/predict.h"
#include "fforge/report.h"
#include "fforge/rng.h"

namespace fforge {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr char kManifestFile[] = "manifest.jsonl";
constexpr char kConfigFile[] = "effective_config.json";

json EffectiveConfig(const RunConfig& config, const std::string& command) {
  json j = RunConfigToJson(config);
  j["command"] = command;
  return j;
}

fs::path RequirePath(const std::string& value, const std::string& key) {
  if (value.empty()) throw ValidationError("paths." + key + " is not set");
  const fs::path p(value);
  if (!fs::exists(p)) {
    throw ValidationError("paths." + key + " does not exist: " + value);
  }
  return p;
}

fs::path OutDir(const RunConfig& config) {
  if (config.paths.out_dir.empty()) {
    throw ValidationError("no output directory (use --out or paths.out_dir)");
  }
  return config.paths.out_dir;
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

void PrepareOutDir(const fs::path& dir, const json& effective) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  WriteText(dir / kConfigFile, effective.dump(2) + "\n");
}

// Refuses to overwrite an input file with an output file.
void CheckNotInput(const fs::path& output, const fs::path& input) {
  std::error_code ec;
  if (fs::exists(output) && fs::equivalent(output, input, ec)) {
    throw ValidationError("output " + output.string() +
                          " would overwrite input " + input.string());
  }
}

int Guarded(const char* name, std::ostream& err,
            const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const ValidationError& e) {
    err << "fforge " << name << ": validation error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "fforge " << name << ": runtime failure: " << e.what() << "\n";
    return 2;
  }
}

// Shared body of synth and balance.
int GenerateCommand(
    const char* name, const CommandOptions& options, std::ostream& out,
    std::ostream& err,
    const std::function<DatasetManifest(const RunConfig&,
                                        const DatasetManifest&, ImageStore&)>&
        generate) {
  return Guarded(name, err, [&] {
    const RunConfig config = ResolveConfig(options);
    const json effective = EffectiveConfig(config, name);
    const fs::path input = RequirePath(config.paths.real_manifest,
                                       "real_manifest");
    if (options.dry_run) {
      out << effective.dump(2) << "\n";
      return;
    }
    const fs::path dir = OutDir(config);
    CheckNotInput(dir / kManifestFile, input);
    const DatasetManifest manifest = LoadManifest(input);
    ImageStore images(input.parent_path());
    const DatasetManifest result = generate(config, manifest, images);
    PrepareOutDir(dir, effective);
    const DatasetManifest written = WriteDataset(result, images, dir);
    const DatasetStats stats = ComputeDatasetStats(written);
    out << "wrote " << written.size() << " records to "
        << (dir / kManifestFile).string() << "\n";
    for (const auto& g : AllGroups()) {
      out << "  " << g.code() << " real=" << stats.count(g, Label::kReal)
          << " fake=" << stats.count(g, Label::kFake) << "\n";
    }
  });
}

void CrossCheck(const PredictionSet& preds, const DatasetManifest& manifest) {
  std::map<std::string, const SampleRecord*> test;
  for (const auto& r : manifest.records()) {
    if (r.split == Split::kTest) test[r.id] = &r;
  }
  for (const auto& row : preds.rows()) {
    const auto it = test.find(row.sample_id);
    if (it == test.end()) {
      throw ValidationError("prediction for \"" + row.sample_id +
                            "\" has no test record in the manifest");
    }
    const SampleRecord& r = *it->second;
    if (static_cast<int>(r.label) != row.true_label || r.group != row.group) {
      throw ValidationError("prediction for \"" + row.sample_id +
                            "\" disagrees with the manifest label or group");
    }
  }
  if (preds.size() != test.size()) {
    throw ValidationError("manifest has " + std::to_string(test.size()) +
                          " test records but predictions cover " +
                          std::to_string(preds.size()));
  }
}

}  // namespace

RunConfig ResolveConfig(const CommandOptions& options) {
  RunConfig config =
      options.config_path ? LoadRunConfig(*options.config_path) : RunConfig{};
  if (options.seed) {
    config.seed = *options.seed;
    config.train.seed = *options.seed;
  }
  if (options.out_dir) config.paths.out_dir = options.out_dir->string();
  config.Validate();
  return config;
}

int CmdSynth(const CommandOptions& options, std::ostream& out,
             std::ostream& err) {
  return GenerateCommand(
      "synth", options, out, err,
      [](const RunConfig& c, const DatasetManifest& m, ImageStore& images) {
        return SynthesizePairs(m, images, c.seed, c.synth);
      });
}

int CmdBalance(const CommandOptions& options, std::ostream& out,
               std::ostream& err) {
  return GenerateCommand(
      "balance", options, out, err,
      [](const RunConfig& c, const DatasetManifest& m, ImageStore& images) {
        return BalanceDataset(m, images, c.balance, c.seed, c.synth);
      });
}

int CmdTrain(const CommandOptions& options, std::ostream& out,
             std::ostream& err) {
  return Guarded("train", err, [&] {
    const RunConfig config = ResolveConfig(options);
    const json effective = EffectiveConfig(config, "train");
    const fs::path input =
        RequirePath(config.paths.dataset_manifest, "dataset_manifest");
    if (options.dry_run) {
      out << effective.dump(2) << "\n";
      return;
    }
    const fs::path dir = OutDir(config);
    const DatasetManifest manifest = LoadManifest(input);
    const std::vector<SampleRecord> train = manifest.Filter(Split::kTrain);
    if (train.empty()) throw ValidationError("manifest has no train samples");
    ImageStore images(input.parent_path());

    PrepareOutDir(dir, effective);
    std::ofstream log(dir / "train_log.jsonl", std::ios::binary);
    if (!log) throw IoError("cannot open train_log.jsonl for writing");

    ParamVector params =
        InitParams<float>(config.model, DeriveSeed(config.seed, "init"));
    const int every = config.train.checkpoint_every;
    Train(config.model, params, train, images, config.train,
          [&](const EpochLog& epoch, const ParamVector& current) {
            for (const auto& s : epoch.steps) log << s.ToJsonLine() << "\n";
            log.flush();
            if (!log) throw IoError("write failed for train_log.jsonl");
            const int done = epoch.epoch + 1;
            char line[128];
            std::snprintf(line, sizeof(line),
                          "epoch %d/%d  mean loss %.6f  %.1fs\n", done,
                          config.train.epochs, epoch.mean_total,
                          epoch.wall_seconds);
            err << line;
            if (every > 0 && done % every == 0 && done < config.train.epochs) {
              SaveCheckpoint({config.model, current, effective},
                             dir / ("checkpoint_epoch" + std::to_string(done) +
                                    ".ffg"));
            }
          });
    SaveCheckpoint({config.model, params, effective}, dir / "model.ffg");
    out << "wrote " << (dir / "model.ffg").string() << "\n";
  });
}

int CmdPredict(const CommandOptions& options, std::ostream& out,
               std::ostream& err) {
  return Guarded("predict", err, [&] {
    const RunConfig config = ResolveConfig(options);
    const fs::path ckpt_path =
        RequirePath(config.paths.checkpoint, "checkpoint");
    const fs::path input =
        RequirePath(config.paths.dataset_manifest, "dataset_manifest");
    if (options.dry_run) {
      out << EffectiveConfig(config, "predict").dump(2) << "\n";
      return;
    }
    const fs::path dir = OutDir(config);
    const Checkpoint ckpt = LoadCheckpoint(ckpt_path);
    RunConfig resolved = config;
    resolved.model = ckpt.spec;
    const DatasetManifest manifest = LoadManifest(input);
    ImageStore images(input.parent_path());
    const PredictionSet preds =
        Predict(ckpt.spec, ckpt.params, manifest, images);
    const fs::path csv = dir / "predictions.csv";
    CheckNotInput(csv, input);
    PrepareOutDir(dir, EffectiveConfig(resolved, "predict"));
    WritePredictionsCsv(preds, csv);
    out << "wrote " << preds.size() << " predictions to " << csv.string()
        << "\n";
  });
}

int CmdEvaluate(const CommandOptions& options, std::ostream& out,
                std::ostream& err) {
  return Guarded("evaluate", err, [&] {
    const RunConfig config = ResolveConfig(options);
    const json effective = EffectiveConfig(config, "evaluate");
    const fs::path pred_path =
        RequirePath(config.paths.predictions, "predictions");
    std::optional<fs::path> manifest_path;
    if (!config.paths.dataset_manifest.empty()) {
      manifest_path =
          RequirePath(config.paths.dataset_manifest, "dataset_manifest");
    }
    if (options.dry_run) {
      out << effective.dump(2) << "\n";
      return;
    }
    const fs::path dir = OutDir(config);
    const PredictionSet preds = ReadPredictionsCsv(pred_path);
    std::string name = config.eval.dataset_name;
    if (manifest_path) {
      const DatasetManifest manifest = LoadManifest(*manifest_path);
      CrossCheck(preds, manifest);
      if (name.empty()) name = manifest.source_name();
    }
    if (name.empty()) name = pred_path.stem().string();
    const FairnessReport report =
        BuildReport(preds, name, config.eval.threshold);
    PrepareOutDir(dir, effective);
    WriteText(dir / "report.json", ReportToJson(report, effective));
    char line[160];
    std::snprintf(line, sizeof(line),
                  "overall accuracy %.2f%%  max disparity %.2f points\n",
                  100.0 * report.overall.accuracy.value_or(0.0),
                  100.0 * report.max_disparity_accuracy);
    out << line << "wrote " << (dir / "report.json").string() << "\n";
  });
}

}  // namespace fforge
