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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fforge/errors.h"
#include "fforge/rng.h"

namespace fforge {
namespace {

double Evaluate(const ScalarLossFn& loss, const BasicParamVector<double>& w) {
  const double v = loss(w);
  if (!std::isfinite(v)) {
    throw NumericError("gradient check: loss is not finite");
  }
  return v;
}

}  // namespace

double FiniteDiffGradCheck(const BasicParamVector<double>& params,
                           const ScalarLossFn& loss,
                           const BasicParamVector<double>& analytic,
                           std::span<const size_t> coords, double h) {
  if (!(h > 0.0)) throw ValidationError("gradient check: h must be positive");
  if (!analytic.SameLayout(params)) {
    throw ValidationError("gradient check: analytic gradient layout differs");
  }
  Evaluate(loss, params);
  BasicParamVector<double> probe = params;
  double worst = 0.0;
  for (size_t i : coords) {
    if (i >= params.total_dim()) {
      throw ValidationError("gradient check: coordinate out of range");
    }
    const double w = params.flat()[i];
    probe.flat()[i] = w + h;
    const double up = Evaluate(loss, probe);
    probe.flat()[i] = w - h;
    const double down = Evaluate(loss, probe);
    probe.flat()[i] = w;
    const double central = (up - down) / (2.0 * h);
    const double a = analytic.flat()[i];
    const double denom = std::max({1.0, std::abs(a), std::abs(central)});
    worst = std::max(worst, std::abs(a - central) / denom);
  }
  return worst;
}

std::vector<size_t> SampleCoordinates(size_t total_dim, size_t count,
                                      uint64_t seed) {
  std::vector<size_t> all(total_dim);
  std::iota(all.begin(), all.end(), size_t{0});
  if (count >= total_dim) return all;
  Rng rng(seed);
  // Partial Fisher-Yates.
  for (size_t i = 0; i < count; ++i) {
    const size_t j = i + rng.Below(total_dim - i);
    std::swap(all[i], all[j]);
  }
  all.resize(count);
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace fforge
