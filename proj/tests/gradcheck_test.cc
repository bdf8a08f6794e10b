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

#include "fforge/gradcheck.h"

#include <cmath>
#include <limits>
#include <set>

#include <gtest/gtest.h>

#include "fforge/errors.h"
#include "fforge/rng.h"

namespace fforge {
namespace {

BasicParamVector<double> RandomParams(Rng& rng, size_t n) {
  BasicParamVector<double> p;
  p.Add("w", {n});
  for (double& v : p.flat()) v = rng.Uniform(-2, 2);
  return p;
}

TEST(GradCheckTest, QuadraticIsExactUpToRounding) {
  Rng rng(1);
  const auto p = RandomParams(rng, 20);
  auto analytic = p;
  for (double& v : analytic.flat()) v *= 2;
  auto loss = [](const BasicParamVector<double>& w) {
    double s = 0.0;
    for (double v : w.flat()) s += v * v;
    return s;
  };
  const auto coords = SampleCoordinates(p.total_dim(), 20, 1);
  EXPECT_LT(FiniteDiffGradCheck(p, loss, analytic, coords, 1e-5), 1e-8);
}

TEST(GradCheckTest, ConstantLossHasZeroError) {
  Rng rng(2);
  const auto p = RandomParams(rng, 5);
  const auto coords = SampleCoordinates(5, 5, 2);
  EXPECT_EQ(FiniteDiffGradCheck(
                p, [](const BasicParamVector<double>&) { return 3.0; },
                p.ZerosLike(), coords, 1e-5),
            0.0);
}

TEST(GradCheckTest, DetectsWrongGradient) {
  Rng rng(3);
  const auto p = RandomParams(rng, 4);
  auto loss = [](const BasicParamVector<double>& w) {
    double s = 0.0;
    for (double v : w.flat()) s += v * v;
    return s;
  };
  const auto coords = SampleCoordinates(4, 4, 3);
  EXPECT_GT(FiniteDiffGradCheck(p, loss, p, coords, 1e-5), 0.1);
}

TEST(GradCheckTest, Errors) {
  Rng rng(4);
  const auto p = RandomParams(rng, 3);
  const auto coords = SampleCoordinates(3, 3, 4);
  auto nan_loss = [](const BasicParamVector<double>&) {
    return std::numeric_limits<double>::quiet_NaN();
  };
  EXPECT_THROW(FiniteDiffGradCheck(p, nan_loss, p, coords, 1e-5), NumericError);
  auto ok = [](const BasicParamVector<double>&) { return 0.0; };
  EXPECT_THROW(FiniteDiffGradCheck(p, ok, p, coords, 0.0), ValidationError);
  const std::vector<size_t> bad = {7};
  EXPECT_THROW(FiniteDiffGradCheck(p, ok, p, bad, 1e-5), ValidationError);
}

TEST(SampleCoordinatesTest, DistinctSortedAndInRange) {
  const auto c = SampleCoordinates(1000, 50, 9);
  ASSERT_EQ(c.size(), 50u);
  EXPECT_TRUE(std::is_sorted(c.begin(), c.end()));
  EXPECT_EQ(std::set<size_t>(c.begin(), c.end()).size(), 50u);
  EXPECT_LT(c.back(), 1000u);
  EXPECT_EQ(SampleCoordinates(5, 50, 9).size(), 5u);
  EXPECT_EQ(SampleCoordinates(1000, 50, 9), c);
}

}  // namespace
}  // namespace fforge
