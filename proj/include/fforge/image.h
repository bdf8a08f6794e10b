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

#ifndef FFORGE_IMAGE_H_
#define FFORGE_IMAGE_H_

#include <cstddef>
#include <span>
#include <vector>

namespace fforge {

inline constexpr int kMinImageSide = 8;

// H x W x 3 RGB image, row-major HWC, every value finite and in [0, 1].
class ImageTensor {
 public:
  static constexpr int kChannels = 3;

  // All-zero image. Throws ValidationError if either side is below 8.
  ImageTensor(int height, int width);
  // Validates the shape and every value.
  ImageTensor(int height, int width, std::vector<float> values);
  // Filled with a constant value.
  static ImageTensor Filled(int height, int width, float value);

  int height() const { return height_; }
  int width() const { return width_; }
  size_t size() const { return values_.size(); }

  float at(int row, int col, int channel) const {
    return values_[Offset(row, col, channel)];
  }
  float& at(int row, int col, int channel) {
    return values_[Offset(row, col, channel)];
  }

  std::span<const float> values() const { return values_; }
  // Mutable access; callers writing through this keep values in [0, 1].
  std::span<float> mutable_values() { return values_; }

  bool SameShape(const ImageTensor& other) const {
    return height_ == other.height_ && width_ == other.width_;
  }

  friend bool operator==(const ImageTensor&, const ImageTensor&) = default;

 private:
  size_t Offset(int row, int col, int channel) const {
    return (static_cast<size_t>(row) * width_ + col) * kChannels + channel;
  }

  int height_;
  int width_;
  std::vector<float> values_;
};

// Single-channel H x W field of weights in [0, 1].
struct Mask {
  int height = 0;
  int width = 0;
  std::vector<double> values;

  double at(int row, int col) const {
    return values[static_cast<size_t>(row) * width + col];
  }
};

}  // namespace fforge

#endif  // FFORGE_IMAGE_H_
