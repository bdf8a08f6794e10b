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

#include <algorithm>
#include <cmath>

#include "fforge/errors.h"

namespace fforge {
namespace {

void CheckSizes(size_t a, size_t b, const char* what) {
  if (a != b) throw ValidationError(std::string(what) + ": size mismatch");
}

}  // namespace

int GroupAccuracyVector::PresentCount() const {
  return static_cast<int>(std::count(present.begin(), present.end(), true));
}

double Sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double ClampProbability(double p) {
  return std::clamp(p, kProbEps, 1.0 - kProbEps);
}

ScalarWithGrad BceLoss(std::span<const double> p, std::span<const int> y) {
  CheckSizes(p.size(), y.size(), "bce");
  if (p.empty()) throw ValidationError("bce: empty batch");
  const double n = static_cast<double>(p.size());
  ScalarWithGrad out;
  out.grad.resize(p.size());
  double sum = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    const double pc = ClampProbability(p[i]);
    const bool clamped = pc != p[i];
    if (y[i] == 1) {
      sum += -std::log(pc);
      out.grad[i] = clamped ? 0.0 : -1.0 / (pc * n);
    } else {
      sum += -std::log(1.0 - pc);
      out.grad[i] = clamped ? 0.0 : 1.0 / ((1.0 - pc) * n);
    }
  }
  out.value = sum / n;
  return out;
}

ScalarWithGrad DemographicCrossEntropy(std::span<const double> logits,
                                       std::span<const int> targets) {
  const size_t n = targets.size();
  CheckSizes(logits.size(), n * kNumGroups, "demographic cross-entropy");
  if (n == 0) throw ValidationError("demographic cross-entropy: empty batch");
  ScalarWithGrad out;
  out.grad.resize(logits.size());
  double sum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    if (targets[i] < 0 || targets[i] >= kNumGroups) {
      throw ValidationError("demographic target out of range");
    }
    const double* z = &logits[i * kNumGroups];
    const double zmax = *std::max_element(z, z + kNumGroups);
    double denom = 0.0;
    for (int c = 0; c < kNumGroups; ++c) denom += std::exp(z[c] - zmax);
    const double log_denom = std::log(denom);
    sum += -(z[targets[i]] - zmax - log_denom);
    for (int c = 0; c < kNumGroups; ++c) {
      const double prob = std::exp(z[c] - zmax - log_denom);
      out.grad[i * kNumGroups + c] =
          (prob - (c == targets[i] ? 1.0 : 0.0)) / static_cast<double>(n);
    }
  }
  out.value = sum / static_cast<double>(n);
  return out;
}

GroupAccuracyVector SoftGroupAccuracy(std::span<const double> p,
                                      std::span<const int> y,
                                      std::span<const int> group_ids) {
  CheckSizes(p.size(), y.size(), "soft accuracy");
  CheckSizes(p.size(), group_ids.size(), "soft accuracy");
  if (p.empty()) throw ValidationError("soft accuracy: empty batch");
  std::array<double, kNumGroups> sum{};
  std::array<int, kNumGroups> count{};
  for (size_t i = 0; i < p.size(); ++i) {
    const int k = group_ids[i];
    if (k < 0 || k >= kNumGroups) {
      throw ValidationError("soft accuracy: group id out of range");
    }
    const double pc = ClampProbability(p[i]);
    sum[k] += y[i] == 1 ? pc : 1.0 - pc;
    ++count[k];
  }
  GroupAccuracyVector acc;
  for (int k = 0; k < kNumGroups; ++k) {
    acc.present[k] = count[k] > 0;
    acc.accuracy[k] = count[k] > 0 ? sum[k] / count[k] : 0.0;
  }
  return acc;
}

ScalarWithGrad AccuracyVariance(const GroupAccuracyVector& acc) {
  const int present = acc.PresentCount();
  if (present == 0) {
    throw ValidationError("accuracy variance: no group present");
  }
  double mean = 0.0;
  for (int k = 0; k < kNumGroups; ++k) {
    if (acc.present[k]) mean += acc.accuracy[k];
  }
  mean /= present;
  ScalarWithGrad out;
  out.grad.assign(kNumGroups, 0.0);
  if (present == 1) return out;
  double sum = 0.0;
  for (int k = 0; k < kNumGroups; ++k) {
    if (!acc.present[k]) continue;
    const double d = acc.accuracy[k] - mean;
    sum += d * d;
    // The mean's own dependence cancels because sum_k d_k = 0.
    out.grad[k] = 2.0 * d / present;
  }
  out.value = sum / present;
  return out;
}

TotalLossResult TotalLoss(std::span<const double> fake_logits,
                          std::span<const double> dem_logits,
                          std::span<const int> labels_real,
                          std::span<const int> group_ids, double lambda) {
  const size_t n = fake_logits.size();
  CheckSizes(labels_real.size(), n, "total loss");
  CheckSizes(group_ids.size(), n, "total loss");
  if (!(lambda >= 0.0)) throw ValidationError("lambda must be >= 0");

  std::vector<double> p(n);
  for (size_t i = 0; i < n; ++i) p[i] = Sigmoid(fake_logits[i]);

  const ScalarWithGrad bce = BceLoss(p, labels_real);
  const ScalarWithGrad ce = DemographicCrossEntropy(dem_logits, group_ids);
  const GroupAccuracyVector acc = SoftGroupAccuracy(p, labels_real, group_ids);
  const ScalarWithGrad var = AccuracyVariance(acc);

  std::array<int, kNumGroups> count{};
  for (int g : group_ids) ++count[g];

  TotalLossResult result;
  LossBreakdown& b = result.breakdown;
  b.l_real = bce.value;
  b.l_dem = ce.value;
  b.var_acc = var.value;
  b.lambda = lambda;
  b.total = b.l_real + lambda * b.var_acc + b.l_dem;

  result.grads.fake.resize(n);
  for (size_t i = 0; i < n; ++i) {
    // Zero past the clamp, matching the loss value's flat region.
    const bool clamped = ClampProbability(p[i]) != p[i];
    const double dacc_dp = (2.0 * labels_real[i] - 1.0) / count[group_ids[i]];
    const double dloss_dp = bce.grad[i] + lambda * var.grad[group_ids[i]] *
                                              (clamped ? 0.0 : dacc_dp);
    result.grads.fake[i] = dloss_dp * p[i] * (1.0 - p[i]);
  }
  result.grads.dem = ce.grad;
  return result;
}

}  // namespace fforge
