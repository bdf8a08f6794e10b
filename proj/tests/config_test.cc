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

#include "fforge/config.h"

#include <fstream>

#include <gtest/gtest.h>

#include "fforge/errors.h"
#include "test_support.h"

namespace fforge {
namespace {

using nlohmann::json;

TEST(RunConfigTest, EmptyDocumentGivesDefaults) {
  const RunConfig c = RunConfigFromJson(json::object());
  EXPECT_EQ(c.seed, 0u);
  EXPECT_EQ(c.model, ModelSpec{});
  EXPECT_EQ(c.train.lambda, 20.0);
  EXPECT_EQ(c.train.batch_size, 16);
  EXPECT_EQ(c.eval.threshold, 0.5);
  EXPECT_EQ(c.balance.target, BalancePolicy::Target::kMaxGroup);
}

TEST(RunConfigTest, ResolvedFormRoundTrips) {
  const json in = {
      {"seed", 42},
      {"paths", {{"real_manifest", "data/m.jsonl"}, {"out_dir", "out"}}},
      {"model", {{"embedding_dim", 32}, {"head_real", {1}}}},
      {"train", {{"epochs", 3}, {"lr", 0.01}}},
      {"synth", {{"rotation_deg", {-5.0, 5.0}}}},
      {"balance", {{"target", "explicit_count"}, {"explicit_count", 12}}},
      {"eval", {{"threshold", 0.4}, {"dataset_name", "toy"}}}};
  const RunConfig c = RunConfigFromJson(in);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.train.seed, 42u);
  EXPECT_EQ(c.model.embedding_dim, 32);
  EXPECT_EQ(c.train.epochs, 3);
  EXPECT_EQ(c.synth.rotation_deg.lo, -5.0);
  EXPECT_EQ(c.balance.explicit_count, 12u);
  EXPECT_EQ(c.paths.real_manifest, "data/m.jsonl");
  const json resolved = RunConfigToJson(c);
  EXPECT_EQ(RunConfigToJson(RunConfigFromJson(resolved)), resolved);
}

TEST(RunConfigTest, UnknownKeysRejectedAtEveryLevel) {
  for (const json& bad :
       {json{{"sed", 1}}, json{{"paths", {{"ckpt", "x"}}}},
        json{{"model", {{"depth", 3}}}}, json{{"train", {{"rate", 1}}}},
        json{{"synth", {{"hue", {0, 1}}}}},
        json{{"balance", {{"goal", "max_group"}}}},
        json{{"eval", {{"cutoff", 0.5}}}}}) {
    EXPECT_THROW(RunConfigFromJson(bad), ValidationError) << bad.dump();
  }
}

TEST(RunConfigTest, InvalidValuesRejected) {
  for (const json& bad :
       {json::array(), json{{"seed", -1}}, json{{"seed", "x"}},
        json{{"synth", {{"scale", {1.2, 0.8}}}}},
        json{{"synth", {{"scale", 0.9}}}},
        json{{"balance", {{"target", "median"}}}},
        json{{"balance", {{"target", "explicit_count"}}}},
        json{{"eval", {{"threshold", 1.5}}}},
        json{{"train", {{"batch_size", 0}}}}}) {
    EXPECT_THROW(RunConfigFromJson(bad), ValidationError) << bad.dump();
  }
}

TEST(RunConfigTest, LoadReportsThePath) {
  testing::TempDir dir("config");
  const auto path = dir.path() / "c.json";
  std::ofstream(path) << "{\"seed\": 3, \"nope\": 1}";
  try {
    LoadRunConfig(path);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("c.json"), std::string::npos);
  }
  std::ofstream(path) << "{not json";
  EXPECT_THROW(LoadRunConfig(path), ValidationError);
  EXPECT_THROW(LoadRunConfig(dir.path() / "absent.json"), ValidationError);
  std::ofstream(path) << "{\"seed\": 3}";
  EXPECT_EQ(LoadRunConfig(path).seed, 3u);
}

}  // namespace
}  // namespace fforge
