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

#include "fforge/image.h"

#include <cmath>
#include <string>

#include "fforge/errors.h"

namespace fforge {
namespace {

void CheckShape(int height, int width) {
  if (height < kMinImageSide || width < kMinImageSide) {
    throw ValidationError("image must be at least 8x8, got " +
                          std::to_string(height) + "x" + std::to_string(width));
  }
}

}  // namespace

ImageTensor::ImageTensor(int height, int width)
    : height_(height), width_(width) {
  CheckShape(height, width);
  values_.assign(static_cast<size_t>(height) * width * kChannels, 0.0f);
}

ImageTensor::ImageTensor(int height, int width, std::vector<float> values)
    : height_(height), width_(width), values_(std::move(values)) {
  CheckShape(height, width);
  if (values_.size() != static_cast<size_t>(height) * width * kChannels) {
    throw ValidationError("image buffer size does not match " +
                          std::to_string(height) + "x" + std::to_string(width) +
                          "x3");
  }
  for (float v : values_) {
    if (!std::isfinite(v) || v < 0.0f || v > 1.0f) {
      throw ValidationError("image value outside [0, 1]: " +
                            std::to_string(v));
    }
  }
}

ImageTensor ImageTensor::Filled(int height, int width, float value) {
  return ImageTensor(
      height, width,
      std::vector<float>(static_cast<size_t>(height) * width * kChannels,
                         value));
}

}  // namespace fforge
