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

#include <sstream>

#include <gtest/gtest.h>

#include "fforge/checkpoint.h"
#include "fforge/errors.h"
#include "fforge/rng.h"
#include "test_support.h"

namespace fforge {
namespace {

std::vector<SampleRecord> FourRecords(ImageStore& store, int side) {
  Rng rng(2024);
  std::vector<SampleRecord> records;
  for (int i = 0; i < 4; ++i) {
    SampleRecord r;
    r.id = "img" + std::to_string(i);
    r.image_path = "images/" + r.id + ".png";
    r.label = i % 2 ? Label::kFake : Label::kReal;
    r.provenance = i % 2 ? Provenance::kSynthetic : Provenance::kOriginal;
    r.group = AllGroups()[i];
    r.split = Split::kTest;
    store.Put(r.id, testing::RandomImage(rng, side, side));
    records.push_back(r);
  }
  return records;
}

TEST(PredictTest, FrozenModelGolden) {
  ImageStore store;
  const ModelSpec spec;
  const auto records = FourRecords(store, spec.input_height);
  const Checkpoint ckpt = DeserializeCheckpoint(
      SerializeCheckpoint({spec, InitParams<float>(spec, 7), nullptr}));
  const PredictionSet preds = PredictRecords(spec, ckpt.params, records, store);
  const double golden[4] = {0x1.1008f9cd48509p-1, 0x1.0eb58a43841d1p-1,
                            0x1.0f3ec57751471p-1, 0x1.0f56d02cfb38fp-1};
  ASSERT_EQ(preds.size(), 4u);
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(preds.rows()[i].score, golden[i]) << i;
    EXPECT_EQ(preds.rows()[i].sample_id, records[i].id);
    EXPECT_EQ(preds.rows()[i].true_label, i % 2);
    EXPECT_EQ(preds.rows()[i].group, records[i].group);
  }
}

TEST(PredictTest, ZeroLogitGivesHalf) {
  ImageStore store;
  const ModelSpec spec;
  const auto records = FourRecords(store, spec.input_height);
  ParamVector p = InitParams<float>(spec, 1);
  for (float& v : p.flat()) v = 0.0f;
  for (const auto& row : PredictRecords(spec, p, records, store).rows()) {
    EXPECT_EQ(row.score, 0.5);
  }
}

TEST(PredictTest, ChunkingDoesNotChangeScores) {
  ImageStore store;
  ModelSpec spec;
  spec.input_height = spec.input_width = 16;
  const auto records = FourRecords(store, 16);
  const ParamVector p = InitParams<float>(spec, 3);
  EXPECT_EQ(PredictRecords(spec, p, records, store, 1),
            PredictRecords(spec, p, records, store, 64));
}

TEST(PredictTest, DuplicateSampleRejected) {
  ImageStore store;
  ModelSpec spec;
  spec.input_height = spec.input_width = 16;
  auto records = FourRecords(store, 16);
  records.push_back(records[0]);
  EXPECT_THROW(PredictRecords(spec, InitParams<float>(spec, 3), records, store),
               ValidationError);
}

TEST(PredictTest, EmptyTestSplitRejected) {
  ImageStore store;
  std::array<int, kNumGroups> counts;
  counts.fill(2);  // indices 0 and 1 only: all train
  const DatasetManifest m = testing::MakeToyRealDataset(counts, 16, 1, store);
  ModelSpec spec;
  spec.input_height = spec.input_width = 16;
  EXPECT_THROW(Predict(spec, InitParams<float>(spec, 1), m, store),
               ValidationError);
}

TEST(PredictionsCsvTest, RoundTripIsExact) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<PredictionRow> rows;
    const int n = static_cast<int>(rng.Below(20));
    for (int i = 0; i < n; ++i) {
      rows.push_back({"s" + std::to_string(i), rng.Uniform(),
                      static_cast<int>(rng.Below(2)),
                      AllGroups()[rng.Below(kNumGroups)]});
    }
    const PredictionSet set(rows);
    std::stringstream ss;
    WritePredictionsCsv(set, ss);
    ASSERT_EQ(ReadPredictionsCsv(ss), set);
  }
}

TEST(PredictionsCsvTest, Format) {
  const PredictionSet set(std::vector<PredictionRow>{
      {"a", 0.25, 1, {Gender::kFemale, Race::kAsian}}});
  std::stringstream ss;
  WritePredictionsCsv(set, ss);
  EXPECT_EQ(ss.str(),
            "sample_id,score,true_label,gender,race\na,0.25,1,F,Asian\n");
}

TEST(PredictionsCsvTest, Errors) {
  auto read = [](const std::string& text) {
    std::stringstream ss(text);
    return ReadPredictionsCsv(ss);
  };
  const std::string header = "sample_id,score,true_label,gender,race\n";
  EXPECT_THROW(read("id,score\n"), ValidationError);
  EXPECT_THROW(read(header + "a,0.5,2,M,Black\n"), ValidationError);
  EXPECT_THROW(read(header + "a,x,1,M,Black\n"), ValidationError);
  EXPECT_THROW(read(header + "a,0.5,1,M\n"), ValidationError);
  EXPECT_THROW(read(header + "a,0.5,1,M,Martian\n"), ValidationError);
  EXPECT_THROW(read(header + "a,0.5,1,M,Black\na,0.2,0,M,Black\n"),
               ValidationError);
  try {
    read(header + "a,0.5,1,M,Black\nb,1.5,1,M,Black\n");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos)
        << e.what();
  }
  EXPECT_EQ(read(header + "a,0.5,1,M,Black\r\n").size(), 1u);

  std::stringstream out;
  EXPECT_THROW(WritePredictionsCsv(
                   PredictionSet(std::vector<PredictionRow>{
                       {"a,b", 0.5, 1, {Gender::kMale, Race::kBlack}}}),
                   out),
               ValidationError);
}

}  // namespace
}  // namespace fforge
