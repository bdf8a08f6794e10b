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

#include "fforge/blend.h"

#include <algorithm>
#include <cmath>

#include "fforge/errors.h"
#include "fforge/kernels.h"

namespace fforge {

Mask MakeBlendMask(int height, int width, const BlendSpec& spec) {
  if (height <= 0 || width <= 0) {
    throw ValidationError("blend mask: non-positive size");
  }
  if (!(spec.half_height >= 0.0) || !(spec.half_width >= 0.0) ||
      !(spec.feather_radius >= 0.0)) {
    throw ValidationError("blend mask: negative extent or feather radius");
  }
  const double cy = spec.center_row * (height - 1);
  const double cx = spec.center_col * (width - 1);
  const double hy = spec.half_height * height;
  const double hx = spec.half_width * width;
  const double top = cy - hy, bottom = cy + hy;
  const double left = cx - hx, right = cx + hx;

  Mask mask{height, width,
            std::vector<double>(static_cast<size_t>(height) * width)};
  for (int r = 0; r < height; ++r) {
    const double dy = std::clamp<double>(r, top, bottom) - r;
    for (int c = 0; c < width; ++c) {
      const double dx = std::clamp<double>(c, left, right) - c;
      const double d = std::sqrt(dx * dx + dy * dy);
      double m;
      if (d == 0.0) {
        m = 1.0;
      } else if (spec.feather_radius == 0.0) {
        m = 0.0;
      } else {
        m = std::max(0.0, 1.0 - d / spec.feather_radius);
      }
      mask.values[static_cast<size_t>(r) * width + c] = m;
    }
  }
  return mask;
}

ImageTensor BlendImages(const ImageTensor& base, const ImageTensor& transformed,
                        const Mask& mask, double ratio) {
  if (!(ratio >= 0.0 && ratio <= 1.0)) {
    throw ValidationError("blend ratio must lie in [0, 1]");
  }
  ImageTensor out(base.height(), base.width());
  kernels::Blend(base, transformed, mask, ratio, out);
  return out;
}

}  // namespace fforge
