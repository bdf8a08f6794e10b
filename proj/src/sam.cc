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

#include "fforge/sam.h"

#include <chrono>
#include <cmath>
#include <limits>

#include "fforge/errors.h"
#include "fforge/rng.h"

namespace fforge {
namespace {

using nlohmann::json;

bool Finite(const LossBreakdown& b) {
  return std::isfinite(b.total) && std::isfinite(b.l_real) &&
         std::isfinite(b.l_dem) && std::isfinite(b.var_acc);
}

template <typename T>
LossAndGrad<T> Evaluate(const GradFn<T>& loss, const BasicParamVector<T>& w,
                        const char* where) {
  LossAndGrad<T> r = loss(w);
  if (!Finite(r.breakdown) || !r.grad.AllFinite()) {
    throw NumericError(std::string("non-finite loss or gradient at ") + where);
  }
  return r;
}

double NumberField(const json& v, const std::string& key) {
  if (!v.is_number()) {
    throw ValidationError("train." + key + " must be a number");
  }
  return v.get<double>();
}

int IntField(const json& v, const std::string& key) {
  if (!v.is_number_integer()) {
    throw ValidationError("train." + key + " must be an integer");
  }
  return v.get<int>();
}

}  // namespace

void SamConfig::Validate() const {
  if (!(rho >= 0.0) || !std::isfinite(rho)) {
    throw ValidationError("train.rho must be >= 0");
  }
  if (!(lr > 0.0) || !std::isfinite(lr)) {
    throw ValidationError("train.lr must be > 0");
  }
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    throw ValidationError("train.momentum must lie in [0, 1)");
  }
  if (!(weight_decay >= 0.0) || !std::isfinite(weight_decay)) {
    throw ValidationError("train.weight_decay must be >= 0");
  }
  if (epochs < 1) throw ValidationError("train.epochs must be >= 1");
  if (batch_size < 1) throw ValidationError("train.batch_size must be >= 1");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ValidationError("train.lambda must be >= 0");
  }
  if (checkpoint_every < 0) {
    throw ValidationError("train.checkpoint_every must be >= 0");
  }
}

json SamConfigToJson(const SamConfig& c) {
  return {{"rho", c.rho},
          {"lr", c.lr},
          {"momentum", c.momentum},
          {"weight_decay", c.weight_decay},
          {"epochs", c.epochs},
          {"batch_size", c.batch_size},
          {"lambda", c.lambda},
          {"checkpoint_every", c.checkpoint_every}};
}

SamConfig SamConfigFromJson(const json& j, SamConfig base) {
  if (!j.is_object()) throw ValidationError("train must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "rho") {
      base.rho = NumberField(v, key);
    } else if (key == "lr") {
      base.lr = NumberField(v, key);
    } else if (key == "momentum") {
      base.momentum = NumberField(v, key);
    } else if (key == "weight_decay") {
      base.weight_decay = NumberField(v, key);
    } else if (key == "epochs") {
      base.epochs = IntField(v, key);
    } else if (key == "batch_size") {
      base.batch_size = IntField(v, key);
    } else if (key == "lambda") {
      base.lambda = NumberField(v, key);
    } else if (key == "checkpoint_every") {
      base.checkpoint_every = IntField(v, key);
    } else {
      throw ValidationError("unknown key train." + key);
    }
  }
  base.Validate();
  return base;
}

template <typename T>
BasicParamVector<T> ComputePerturbation(const BasicParamVector<T>& grad,
                                        double rho) {
  if (!grad.AllFinite()) {
    throw NumericError("perturbation: gradient is not finite");
  }
  double scale = rho / (grad.Norm() + kPerturbationTau);
  BasicParamVector<T> eps = grad;
  auto apply = [&] {
    const auto g = grad.flat();
    auto e = eps.flat();
    for (size_t i = 0; i < e.size(); ++i) {
      e[i] = static_cast<T>(scale * static_cast<double>(g[i]));
    }
  };
  apply();
  // Rounding can push the norm a few ulps past rho; pull it back inside.
  while (eps.Norm() > rho) {
    scale *= 1.0 - 4.0 * std::numeric_limits<T>::epsilon();
    apply();
  }
  return eps;
}

template <typename T>
StepStats SamStep(BasicParamVector<T>& params, const GradFn<T>& loss,
                  const SamConfig& config, OptimizerState<T>& state) {
  if (!state.momentum.SameLayout(params)) {
    throw ValidationError("optimizer state does not match the parameters");
  }
  StepStats stats;
  const LossAndGrad<T> first = Evaluate(loss, params, "w");
  stats.grad_norm = first.grad.Norm();
  const BasicParamVector<T> eps = ComputePerturbation(first.grad, config.rho);
  stats.eps_norm = eps.Norm();

  // Perturb a copy; the entry point is never modified until the update.
  BasicParamVector<T> perturbed = params;
  {
    auto w = perturbed.flat();
    const auto e = eps.flat();
    for (size_t i = 0; i < w.size(); ++i) w[i] += e[i];
  }
  const LossAndGrad<T> second = Evaluate(loss, perturbed, "w + eps");
  stats.perturbed = second.breakdown;

  const T momentum = static_cast<T>(config.momentum);
  const T decay = static_cast<T>(config.weight_decay);
  const T lr = static_cast<T>(config.lr);
  auto w = params.flat();
  auto buf = state.momentum.flat();
  const auto g = second.grad.flat();
  for (size_t i = 0; i < w.size(); ++i) {
    buf[i] = momentum * buf[i] + (g[i] + decay * w[i]);
    w[i] = w[i] - lr * buf[i];
  }
  ++state.step_count;
  return stats;
}

template <typename T>
GradFn<T> ModelGradFn(const ModelSpec& spec, const BasicBatch<T>& batch,
                      double lambda) {
  return [&spec, &batch, lambda](const BasicParamVector<T>& w) {
    const ForwardResult<T> fwd = Forward(spec, w, batch);
    TotalLossResult loss = TotalLoss(fwd, batch, lambda);
    return LossAndGrad<T>{loss.breakdown,
                          Backward(spec, w, batch, loss.grads, fwd.cache)};
  };
}

std::string StepLog::ToJsonLine() const {
  json j = {{"epoch", epoch},        {"step", step},
            {"l_real", loss.l_real}, {"l_dem", loss.l_dem},
            {"var_acc", loss.var_acc}, {"total", loss.total},
            {"grad_norm", grad_norm}, {"eps_norm", eps_norm}};
  return j.dump();
}

std::vector<size_t> EpochOrder(size_t n, uint64_t seed, int epoch) {
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(DeriveSeed(seed, "epoch", static_cast<uint64_t>(epoch)));
  for (size_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[rng.Below(i)]);
  }
  return order;
}

EpochLog TrainEpoch(const ModelSpec& spec, ParamVector& params,
                    std::span<const SampleRecord> train, ImageStore& images,
                    const SamConfig& config, OptimizerState<float>& state,
                    int epoch) {
  if (train.empty()) throw ValidationError("training split is empty");
  config.Validate();
  const auto start = std::chrono::steady_clock::now();
  const std::vector<size_t> order = EpochOrder(train.size(), config.seed, epoch);

  EpochLog log;
  log.epoch = epoch;
  double total = 0.0;
  for (size_t begin = 0; begin < order.size();
       begin += static_cast<size_t>(config.batch_size)) {
    const size_t end =
        std::min(order.size(), begin + static_cast<size_t>(config.batch_size));
    std::vector<SampleRecord> members;
    members.reserve(end - begin);
    for (size_t i = begin; i < end; ++i) members.push_back(train[order[i]]);
    const Batch batch = MakeBatch(members, images);

    StepLog step;
    step.epoch = epoch;
    step.step = state.step_count;
    const StepStats stats = SamStep<float>(
        params, ModelGradFn<float>(spec, batch, config.lambda), config, state);
    step.loss = stats.perturbed;
    step.grad_norm = stats.grad_norm;
    step.eps_norm = stats.eps_norm;
    total += step.loss.total;
    log.steps.push_back(step);
  }
  log.mean_total = total / static_cast<double>(log.steps.size());
  log.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return log;
}

void Train(const ModelSpec& spec, ParamVector& params,
           std::span<const SampleRecord> train, ImageStore& images,
           const SamConfig& config, const EpochCallback& on_epoch) {
  auto state = OptimizerState<float>::ForParams(params);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const EpochLog log =
        TrainEpoch(spec, params, train, images, config, state, epoch);
    if (on_epoch) on_epoch(log, params);
  }
}

#define FFORGE_INSTANTIATE_SAM(T)                                            \
  template BasicParamVector<T> ComputePerturbation<T>(                       \
      const BasicParamVector<T>&, double);                                   \
  template StepStats SamStep<T>(BasicParamVector<T>&, const GradFn<T>&,      \
                                const SamConfig&, OptimizerState<T>&);       \
  template GradFn<T> ModelGradFn<T>(const ModelSpec&, const BasicBatch<T>&,  \
                                    double);

FFORGE_INSTANTIATE_SAM(float)
FFORGE_INSTANTIATE_SAM(double)

#undef FFORGE_INSTANTIATE_SAM

}  // namespace fforge
