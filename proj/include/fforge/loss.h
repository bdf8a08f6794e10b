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

#ifndef FFORGE_LOSS_H_
#define FFORGE_LOSS_H_

#include <array>
#include <span>
#include <vector>

#include "fforge/demographics.h"
#include "fforge/model.h"

namespace fforge {

// Probabilities entering either loss are clamped to [kProbEps, 1 - kProbEps].
inline constexpr double kProbEps = 1e-7;

struct LossBreakdown {
  double l_real = 0.0;
  double l_dem = 0.0;
  double var_acc = 0.0;
  double lambda = 0.0;
  // l_real + lambda * var_acc + l_dem, evaluated in that order.
  double total = 0.0;
};

struct ScalarWithGrad {
  double value = 0.0;
  std::vector<double> grad;
};

// Per-group soft accuracy; entries of absent groups are 0 and masked out.
struct GroupAccuracyVector {
  std::array<double, kNumGroups> accuracy{};
  std::array<bool, kNumGroups> present{};

  int PresentCount() const;
};

double Sigmoid(double z);
double ClampProbability(double p);

// Mean binary cross-entropy. The gradient is with respect to p and is zero
// where the clamp is active. Throws ValidationError on an empty batch.
ScalarWithGrad BceLoss(std::span<const double> p, std::span<const int> y);

// Mean softmax cross-entropy over 8 classes (max-subtracted); targets are
// class indices. Gradient w.r.t. logits is (softmax - onehot) / B.
ScalarWithGrad DemographicCrossEntropy(std::span<const double> logits,
                                       std::span<const int> targets);

// acc_k = mean over group k of y * p + (1 - y) * (1 - p), p clamped.
GroupAccuracyVector SoftGroupAccuracy(std::span<const double> p,
                                      std::span<const int> y,
                                      std::span<const int> group_ids);

// Population variance over present groups (0 for a single group); gradient
// has one entry per group, zero for absent groups. Throws ValidationError
// when no group is present.
ScalarWithGrad AccuracyVariance(const GroupAccuracyVector& acc);

struct TotalLossResult {
  LossBreakdown breakdown;
  LogitGrads grads;
};

// l_real + lambda * Var_acc + l_dem. The variance term reaches the real/fake
// logits through the soft accuracies; l_dem only touches the demographic
// logits.
TotalLossResult TotalLoss(std::span<const double> fake_logits,
                          std::span<const double> dem_logits,
                          std::span<const int> labels_real,
                          std::span<const int> group_ids, double lambda);

template <typename T>
TotalLossResult TotalLoss(const ForwardResult<T>& forward,
                          const BasicBatch<T>& batch, double lambda) {
  const std::vector<double> fake(forward.fake_logits.begin(),
                                 forward.fake_logits.end());
  const std::vector<double> dem(forward.dem_logits.begin(),
                                forward.dem_logits.end());
  return TotalLoss(fake, dem, batch.labels_real, batch.labels_dem(), lambda);
}

}  // namespace fforge

#endif  // FFORGE_LOSS_H_
