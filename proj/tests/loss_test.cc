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

#include "fforge/loss.h"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "fforge/errors.h"
#include "fforge/rng.h"

namespace fforge {
namespace {

TEST(BceTest, Examples) {
  EXPECT_NEAR(BceLoss(std::vector<double>{0.5}, std::vector<int>{1}).value,
              std::log(2.0), 1e-12);
  EXPECT_NEAR(
      BceLoss(std::vector<double>{1 - 1e-7}, std::vector<int>{1}).value, 1e-7,
      1e-12);
  const double expected = (-std::log(0.9) - std::log(0.8)) / 2;
  const auto r = BceLoss(std::vector<double>{0.9, 0.2}, std::vector<int>{1, 0});
  EXPECT_NEAR(r.value, expected, 1e-12);
  EXPECT_NEAR(r.value, 0.164252, 5e-7);
  EXPECT_NEAR(r.grad[0], -1.0 / (0.9 * 2), 1e-12);
  EXPECT_NEAR(r.grad[1], 1.0 / (0.8 * 2), 1e-12);
}

TEST(BceTest, ClampedEntriesHaveZeroGradient) {
  const auto r = BceLoss(std::vector<double>{1.0, 0.0}, std::vector<int>{0, 1});
  EXPECT_TRUE(std::isfinite(r.value));
  EXPECT_NEAR(r.value, -std::log(kProbEps), 1e-9);
  EXPECT_EQ(r.grad[0], 0.0);
  EXPECT_EQ(r.grad[1], 0.0);
}

TEST(BceTest, EmptyBatchIsRejected) {
  EXPECT_THROW(BceLoss(std::vector<double>{}, std::vector<int>{}),
               ValidationError);
}

TEST(DemographicCeTest, Examples) {
  std::vector<double> uniform(8, 0.3);
  EXPECT_NEAR(DemographicCrossEntropy(uniform, std::vector<int>{5}).value,
              std::log(8.0), 1e-12);
  std::vector<double> sharp(8, 0.0);
  sharp[2] = 30.0;
  EXPECT_LT(DemographicCrossEntropy(sharp, std::vector<int>{2}).value, 1e-9);
  std::vector<double> one(8, 0.0);
  one[0] = 1.0;
  const auto r = DemographicCrossEntropy(one, std::vector<int>{0});
  const double e = std::exp(1.0);
  EXPECT_NEAR(r.value, -std::log(e / (e + 7)), 1e-12);
  EXPECT_NEAR(r.value, 1.2740088, 5e-7);
  EXPECT_NEAR(r.grad[0], e / (e + 7) - 1, 1e-12);
  EXPECT_NEAR(r.grad[1], 1 / (e + 7), 1e-12);
}

TEST(DemographicCeTest, LargeLogitsStayFinite) {
  std::vector<double> big(16, 0.0);
  big[3] = 1000.0;
  big[8 + 7] = -1000.0;
  const auto r = DemographicCrossEntropy(big, std::vector<int>{3, 0});
  EXPECT_TRUE(std::isfinite(r.value));
  for (double g : r.grad) EXPECT_TRUE(std::isfinite(g));
}

TEST(SoftAccuracyTest, Examples) {
  const auto acc = SoftGroupAccuracy(std::vector<double>{0.8, 0.4, 0.1},
                                     std::vector<int>{1, 1, 0},
                                     std::vector<int>{0, 0, 1});
  EXPECT_NEAR(acc.accuracy[0], 0.6, 1e-12);
  EXPECT_NEAR(acc.accuracy[1], 0.9, 1e-12);
  EXPECT_EQ(acc.PresentCount(), 2);

  const auto one = SoftGroupAccuracy(std::vector<double>{1.0, 0.0},
                                     std::vector<int>{1, 0},
                                     std::vector<int>{4, 4});
  EXPECT_EQ(one.PresentCount(), 1);
  EXPECT_TRUE(one.present[4]);
  EXPECT_NEAR(one.accuracy[4], 1.0, 1e-6);
}

TEST(VarianceTest, Examples) {
  GroupAccuracyVector acc;
  for (int k : {0, 3, 6}) {
    acc.present[k] = true;
    acc.accuracy[k] = 0.9;
  }
  EXPECT_NEAR(AccuracyVariance(acc).value, 0.0, 1e-15);

  GroupAccuracyVector two;
  two.present[1] = two.present[2] = true;
  two.accuracy[1] = 0.9;
  two.accuracy[2] = 0.8;
  two.accuracy[5] = 0.1;  // absent, must be ignored
  const auto v = AccuracyVariance(two);
  EXPECT_NEAR(v.value, 0.0025, 1e-15);
  EXPECT_NEAR(v.grad[1], 0.05, 1e-12);
  EXPECT_NEAR(v.grad[2], -0.05, 1e-12);
  EXPECT_EQ(v.grad[5], 0.0);

  GroupAccuracyVector single;
  single.present[7] = true;
  single.accuracy[7] = 0.3;
  EXPECT_EQ(AccuracyVariance(single).value, 0.0);
  EXPECT_THROW(AccuracyVariance(GroupAccuracyVector{}), ValidationError);
}

TEST(TotalLossTest, ComposesTheThreeTerms) {
  const std::vector<double> fake = {0.3, -1.2, 2.0};
  std::vector<double> dem(24);
  Rng rng(1);
  for (auto& v : dem) v = rng.Uniform(-2, 2);
  const std::vector<int> y = {1, 0, 1}, g = {0, 0, 5};
  const auto zero = TotalLoss(fake, dem, y, g, 0.0).breakdown;
  EXPECT_EQ(zero.total, zero.l_real + zero.l_dem);
  const auto twenty = TotalLoss(fake, dem, y, g, 20.0).breakdown;
  EXPECT_EQ(twenty.lambda, 20.0);
  EXPECT_EQ(twenty.total, twenty.l_real + 20.0 * twenty.var_acc + twenty.l_dem);
  EXPECT_GT(twenty.var_acc, 0.0);
}

// Central differences on the logits, in double, against the analytic
// gradients for both logit sets.
TEST(TotalLossTest, LogitGradientsMatchFiniteDifferences) {
  Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng.Below(6));
    std::vector<double> fake(n), dem(n * 8);
    std::vector<int> y(n), g(n);
    for (auto& v : fake) v = rng.Uniform(-3, 3);
    for (auto& v : dem) v = rng.Uniform(-3, 3);
    for (int i = 0; i < n; ++i) {
      y[i] = static_cast<int>(rng.Below(2));
      g[i] = static_cast<int>(rng.Below(3));
    }
    const auto r = TotalLoss(fake, dem, y, g, 20.0);
    const double h = 1e-6;
    for (int i = 0; i < n; ++i) {
      auto up = fake, dn = fake;
      up[i] += h;
      dn[i] -= h;
      const double fd = (TotalLoss(up, dem, y, g, 20.0).breakdown.total -
                         TotalLoss(dn, dem, y, g, 20.0).breakdown.total) /
                        (2 * h);
      ASSERT_NEAR(r.grads.fake[i], fd, 1e-7);
    }
    for (size_t j = 0; j < dem.size(); ++j) {
      auto up = dem, dn = dem;
      up[j] += h;
      dn[j] -= h;
      const double fd = (TotalLoss(fake, up, y, g, 20.0).breakdown.total -
                         TotalLoss(fake, dn, y, g, 20.0).breakdown.total) /
                        (2 * h);
      ASSERT_NEAR(r.grads.dem[j], fd, 1e-7);
    }
  }
}

TEST(TotalLossTest, VarianceTermDoesNotTouchDemographicLogits) {
  const std::vector<double> fake = {0.3, -1.2};
  const std::vector<double> dem(16, 0.1);
  const std::vector<int> y = {1, 0}, g = {0, 1};
  EXPECT_EQ(TotalLoss(fake, dem, y, g, 0.0).grads.dem,
            TotalLoss(fake, dem, y, g, 20.0).grads.dem);
}

TEST(SigmoidTest, StableAtExtremes) {
  EXPECT_EQ(Sigmoid(0.0), 0.5);
  EXPECT_NEAR(Sigmoid(800.0), 1.0, 0.0);
  EXPECT_NEAR(Sigmoid(-800.0), 0.0, 1e-300);
  EXPECT_EQ(ClampProbability(0.0), kProbEps);
  EXPECT_EQ(ClampProbability(1.0), 1 - kProbEps);
}

}  // namespace
}  // namespace fforge
