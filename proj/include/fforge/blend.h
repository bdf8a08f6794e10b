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

#ifndef FFORGE_BLEND_H_
#define FFORGE_BLEND_H_

#include <cstdint>

#include "fforge/image.h"

namespace fforge {

// Soft rectangular blend region. Center and half extents are fractions of
// the image size; the feather band is in pixels.
struct BlendSpec {
  double center_row = 0.5;
  double center_col = 0.5;
  double half_height = 0.25;
  double half_width = 0.25;
  double feather_radius = 0.0;
  double blend_ratio = 1.0;
  uint64_t seed = 0;
};

// The core rectangle spans rows [cy - hy, cy + hy] and columns
// [cx - hx, cx + hx], with cy = center_row * (H - 1), hy = half_height * H
// (likewise for columns). A pixel at Euclidean distance d from the rectangle
// gets max(0, 1 - d / feather_radius); with feather_radius == 0 the mask is
// binary.
Mask MakeBlendMask(int height, int width, const BlendSpec& spec);

// Per pixel and channel:
//   out = (1 - ratio * mask) * base + (ratio * mask) * transformed.
// Throws ValidationError on shape mismatch or ratio outside [0, 1].
ImageTensor BlendImages(const ImageTensor& base, const ImageTensor& transformed,
                        const Mask& mask, double ratio);

}  // namespace fforge

#endif  // FFORGE_BLEND_H_
