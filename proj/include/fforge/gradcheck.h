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

#ifndef FFORGE_GRADCHECK_H_
#define FFORGE_GRADCHECK_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fforge/params.h"

namespace fforge {

using ScalarLossFn = std::function<double(const BasicParamVector<double>&)>;

// Max over coords of |analytic - central| / max(1, |analytic|, |central|),
// where central = (L(w + h e_i) - L(w - h e_i)) / 2h. All arithmetic is in
// double. Throws NumericError if the loss is not finite and ValidationError
// for h <= 0 or out-of-range coordinates.
double FiniteDiffGradCheck(const BasicParamVector<double>& params,
                           const ScalarLossFn& loss,
                           const BasicParamVector<double>& analytic,
                           std::span<const size_t> coords, double h);

// `count` distinct flat indices drawn uniformly from [0, total_dim), sorted.
// Returns every index when count >= total_dim.
std::vector<size_t> SampleCoordinates(size_t total_dim, size_t count,
                                      uint64_t seed);

}  // namespace fforge

#endif  // FFORGE_GRADCHECK_H_
