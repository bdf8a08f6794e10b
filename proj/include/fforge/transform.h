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

#ifndef FFORGE_TRANSFORM_H_
#define FFORGE_TRANSFORM_H_

#include <cstdint>

#include "fforge/image.h"
#include "fforge/kernels.h"

namespace fforge {

enum class TransformKind : unsigned {
  kScale = 1u << 0,
  kRotate = 1u << 1,
  kColorAdjust = 1u << 2,
};

// Parameters of the self-blend source transform. Enabled kinds are applied in
// the fixed order scale, rotate, color adjust; scale and rotation share one
// bilinear resample.
struct TransformSpec {
  unsigned kinds = static_cast<unsigned>(TransformKind::kScale) |
                   static_cast<unsigned>(TransformKind::kRotate) |
                   static_cast<unsigned>(TransformKind::kColorAdjust);
  double scale_factor = 1.0;
  double rotation_deg = 0.0;
  double brightness_delta = 0.0;
  double contrast_factor = 1.0;
  uint64_t seed = 0;

  bool Has(TransformKind kind) const {
    return (kinds & static_cast<unsigned>(kind)) != 0;
  }
};

// Inverse map for the geometric part of the transform. A destination pixel
// (r, c) samples the source at
//   row = cr + ( cos(t) * (r - cr) - sin(t) * (c - cc)) / s
//   col = cc + ( sin(t) * (r - cr) + cos(t) * (c - cc)) / s
// around the image center (cr, cc) = ((H - 1) / 2, (W - 1) / 2).
kernels::AffineMap GeometricInverseMap(const TransformSpec& spec, int height,
                                       int width);

// Same dimensions as the input; values clamped to [0, 1]. Color adjustment is
//   v' = contrast * v + (1 - contrast) * 0.5 + brightness.
ImageTensor ApplyTransform(const ImageTensor& image, const TransformSpec& spec);

}  // namespace fforge

#endif  // FFORGE_TRANSFORM_H_
