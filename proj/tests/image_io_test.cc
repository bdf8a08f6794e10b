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

#include "fforge/image_io.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "fforge/errors.h"
#include "fforge/image.h"
#include "test_support.h"

namespace fforge {
namespace {

std::string FileBytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(ImageTest, RejectsSmallOrOutOfRangeImages) {
  EXPECT_THROW(ImageTensor(7, 8), ValidationError);
  EXPECT_THROW(ImageTensor(8, 8, std::vector<float>(8 * 8 * 3, 1.5f)),
               ValidationError);
  std::vector<float> v(8 * 8 * 3, 0.5f);
  v[10] = std::nanf("");
  EXPECT_THROW(ImageTensor(8, 8, v), ValidationError);
  EXPECT_THROW(ImageTensor(8, 8, std::vector<float>(5)), ValidationError);
}

TEST(ImageIoTest, QuantizedImagesRoundTripExactly) {
  testing::TempDir dir("png");
  Rng rng(4);
  std::vector<float> v(12 * 9 * 3);
  for (auto& x : v) x = static_cast<float>(rng.Below(256)) / 255.0f;
  const ImageTensor img(12, 9, v);
  WritePng(img, dir.path() / "a.png");
  const ImageTensor back = ReadPng(dir.path() / "a.png");
  ASSERT_TRUE(back.SameShape(img));
  for (size_t i = 0; i < v.size(); ++i) {
    EXPECT_EQ(back.values()[i], img.values()[i]);
  }
}

TEST(ImageIoTest, WritesAreByteIdentical) {
  testing::TempDir dir("png");
  Rng rng(5);
  const ImageTensor img = testing::RandomImage(rng, 16, 16);
  WritePng(img, dir.path() / "a.png");
  WritePng(img, dir.path() / "b.png");
  EXPECT_EQ(FileBytes(dir.path() / "a.png"), FileBytes(dir.path() / "b.png"));
}

TEST(ImageIoTest, RoundingErrorIsAtMostHalfStep) {
  testing::TempDir dir("png");
  Rng rng(6);
  const ImageTensor img = testing::RandomImage(rng, 10, 10);
  WritePng(img, dir.path() / "a.png");
  const ImageTensor back = ReadPng(dir.path() / "a.png");
  for (size_t i = 0; i < img.size(); ++i) {
    EXPECT_LE(std::fabs(back.values()[i] - img.values()[i]), 0.5 / 255 + 1e-6);
  }
}

TEST(ImageIoTest, MissingOrCorruptFilesAreIoErrors) {
  testing::TempDir dir("png");
  EXPECT_THROW(ReadPng(dir.path() / "nope.png"), IoError);
  std::ofstream(dir.path() / "bad.png") << "not a png";
  EXPECT_THROW(ReadPng(dir.path() / "bad.png"), IoError);
}

}  // namespace
}  // namespace fforge
