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

#include "fforge/params.h"

#include <cmath>

#include <gtest/gtest.h>

#include "fforge/errors.h"
#include "fforge/rng.h"

namespace fforge {
namespace {

ParamVector TwoTensors() {
  ParamVector p;
  p.Add("a", {2, 3});
  p.Add("b", {4});
  auto a = p.tensor("a");
  auto b = p.tensor("b");
  for (size_t i = 0; i < a.size(); ++i) a[i] = static_cast<float>(i);
  for (size_t i = 0; i < b.size(); ++i) b[i] = -static_cast<float>(i);
  return p;
}

TEST(ParamsTest, LayoutAndLookup) {
  const ParamVector p = TwoTensors();
  EXPECT_EQ(p.total_dim(), 10u);
  EXPECT_EQ(p.entry("b").offset, 6u);
  EXPECT_EQ(p.tensor("b")[1], -1.0f);
  EXPECT_TRUE(p.Contains("a"));
  EXPECT_FALSE(p.Contains("c"));
  EXPECT_THROW(p.entry("c"), ValidationError);
}

TEST(ParamsTest, DuplicateNamesAreRejected) {
  ParamVector p;
  p.Add("w", {2});
  EXPECT_THROW(p.Add("w", {3}), ValidationError);
}

TEST(ParamsTest, FlattenUnflattenIsABijection) {
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    ParamVector layout;
    const int n = 1 + static_cast<int>(rng.Below(5));
    for (int i = 0; i < n; ++i) {
      layout.Add("t" + std::to_string(i),
                 {1 + rng.Below(4), 1 + rng.Below(3)});
    }
    std::vector<float> flat(layout.total_dim());
    for (auto& v : flat) v = static_cast<float>(rng.Normal());
    const ParamVector p = ParamVector::Unflatten(layout, flat);
    ASSERT_TRUE(p.SameLayout(layout));
    ASSERT_TRUE(std::equal(flat.begin(), flat.end(), p.flat().begin()));
    ASSERT_EQ(ParamVector::Unflatten(layout, p.flat()), p);
  }
  const ParamVector layout = TwoTensors();
  std::vector<float> short_flat(3);
  EXPECT_THROW(ParamVector::Unflatten(layout, short_flat), ValidationError);
}

TEST(ParamsTest, NormZerosAndFiniteness) {
  ParamVector p;
  p.Add("v", {2});
  p.tensor("v")[0] = 3.0f;
  p.tensor("v")[1] = 4.0f;
  EXPECT_EQ(p.Norm(), 5.0);
  EXPECT_EQ(p.ZerosLike().Norm(), 0.0);
  EXPECT_TRUE(p.AllFinite());
  p.flat()[0] = std::nanf("");
  EXPECT_FALSE(p.AllFinite());
}

TEST(ParamsTest, CastPreservesLayout) {
  const ParamVector p = TwoTensors();
  const BasicParamVector<double> d = p.Cast<double>();
  EXPECT_EQ(d.entries().size(), 2u);
  EXPECT_EQ(d.tensor("a")[5], 5.0);
  EXPECT_EQ(d.Cast<float>(), p);
}

}  // namespace
}  // namespace fforge
