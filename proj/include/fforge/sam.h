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

#ifndef FFORGE_SAM_H_
#define FFORGE_SAM_H_

// Sharpness-aware minimization around SGD with momentum and weight decay.
//
// One step: gradient g1 at w; perturbation eps = rho * g1 / (|g1| + tau);
// gradient g2 at w + eps; restore w from a saved copy; then
//   buf <- momentum * buf + (g2 + weight_decay * w)
//   w   <- w - lr * buf
// Weight decay enters only the base update, never the perturbation.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fforge/image_store.h"
#include "fforge/loss.h"
#include "fforge/manifest.h"
#include "fforge/model.h"
#include "fforge/params.h"
#include "json.hpp"

namespace fforge {

inline constexpr double kPerturbationTau = 1e-12;

struct SamConfig {
  double rho = 0.05;
  double lr = 5e-4;
  double momentum = 0.9;
  double weight_decay = 5e-3;
  int epochs = 100;
  int batch_size = 16;
  double lambda = 20.0;
  uint64_t seed = 0;
  // Write an intermediate checkpoint every N epochs; 0 writes only the final
  // one.
  int checkpoint_every = 0;

  void Validate() const;
};

// seed is not part of the JSON form; it comes from the global run seed.
nlohmann::json SamConfigToJson(const SamConfig& config);
SamConfig SamConfigFromJson(const nlohmann::json& j, SamConfig base = {});

template <typename T>
struct OptimizerState {
  BasicParamVector<T> momentum;
  int64_t step_count = 0;

  static OptimizerState ForParams(const BasicParamVector<T>& params) {
    return {params.ZerosLike(), 0};
  }
};

template <typename T>
struct LossAndGrad {
  LossBreakdown breakdown;
  BasicParamVector<T> grad;
};

template <typename T>
using GradFn = std::function<LossAndGrad<T>(const BasicParamVector<T>&)>;

// eps = rho * g / (|g|_2 + tau). Throws NumericError for non-finite input.
template <typename T>
BasicParamVector<T> ComputePerturbation(const BasicParamVector<T>& grad,
                                        double rho);

struct StepStats {
  LossBreakdown perturbed;  // loss at w + eps
  double grad_norm = 0.0;   // |g1|
  double eps_norm = 0.0;
};

// Updates params and state in place. Throws NumericError (leaving params and
// state untouched) when either loss evaluation is not finite.
template <typename T>
StepStats SamStep(BasicParamVector<T>& params, const GradFn<T>& loss,
                  const SamConfig& config, OptimizerState<T>& state);

// Forward, total loss and backward of the model on one batch.
template <typename T>
GradFn<T> ModelGradFn(const ModelSpec& spec, const BasicBatch<T>& batch,
                      double lambda);

struct StepLog {
  int epoch = 0;
  int64_t step = 0;  // global step index, 0-based
  LossBreakdown loss;
  double grad_norm = 0.0;
  double eps_norm = 0.0;

  // {epoch, step, l_real, l_dem, var_acc, total, grad_norm, eps_norm}
  std::string ToJsonLine() const;
};

struct EpochLog {
  int epoch = 0;
  std::vector<StepLog> steps;
  double mean_total = 0.0;
  double wall_seconds = 0.0;
};

// Order of samples in one epoch: a seeded permutation of [0, n).
std::vector<size_t> EpochOrder(size_t n, uint64_t seed, int epoch);

// One pass over `train`: shuffle with the epoch seed, cut into batches of
// batch_size (the short final batch is kept), one SamStep per batch.
EpochLog TrainEpoch(const ModelSpec& spec, ParamVector& params,
                    std::span<const SampleRecord> train, ImageStore& images,
                    const SamConfig& config, OptimizerState<float>& state,
                    int epoch);

// Runs config.epochs epochs, calling on_epoch after each.
using EpochCallback =
    std::function<void(const EpochLog&, const ParamVector&)>;
void Train(const ModelSpec& spec, ParamVector& params,
           std::span<const SampleRecord> train, ImageStore& images,
           const SamConfig& config, const EpochCallback& on_epoch = {});

}  // namespace fforge

#endif  // FFORGE_SAM_H_
