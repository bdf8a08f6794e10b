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

#include "fforge/transform.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fforge/errors.h"

namespace fforge {

kernels::AffineMap GeometricInverseMap(const TransformSpec& spec, int height,
                                       int width) {
  const double s =
      spec.Has(TransformKind::kScale) ? spec.scale_factor : 1.0;
  const double deg =
      spec.Has(TransformKind::kRotate) ? spec.rotation_deg : 0.0;
  if (!(s > 0.0) || !std::isfinite(s) || !std::isfinite(deg)) {
    throw ValidationError("transform: scale must be positive and finite");
  }
  const double t = deg * std::numbers::pi / 180.0;
  const double cos_t = std::cos(t);
  const double sin_t = std::sin(t);
  kernels::AffineMap map;
  map.m = {cos_t / s, -sin_t / s, sin_t / s, cos_t / s};
  map.center_row = (height - 1) / 2.0;
  map.center_col = (width - 1) / 2.0;
  return map;
}

ImageTensor ApplyTransform(const ImageTensor& image,
                           const TransformSpec& spec) {
  ImageTensor out = image;
  const bool geometric =
      (spec.Has(TransformKind::kScale) && spec.scale_factor != 1.0) ||
      (spec.Has(TransformKind::kRotate) && spec.rotation_deg != 0.0);
  if (geometric) {
    kernels::AffineResample(
        image, GeometricInverseMap(spec, image.height(), image.width()), out);
  }
  if (spec.Has(TransformKind::kColorAdjust)) {
    const double c = spec.contrast_factor;
    const double b = spec.brightness_delta;
    if (!std::isfinite(c) || !std::isfinite(b)) {
      throw ValidationError("transform: non-finite color parameters");
    }
    if (c != 1.0 || b != 0.0) {
      const double offset = (1.0 - c) * 0.5 + b;
      for (float& v : out.mutable_values()) {
        v = static_cast<float>(std::clamp(c * v + offset, 0.0, 1.0));
      }
    }
  }
  return out;
}

}  // namespace fforge
