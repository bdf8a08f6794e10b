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

#ifndef FFORGE_KERNELS_H_
#define FFORGE_KERNELS_H_

// Data-parallel inner loops used by the model and the synthesis pipeline.
//
// Each kernel exists twice: the OpenMP version in fforge::kernels and a plain
// nested-loop version in fforge::kernels::reference. Both accumulate every
// output element in double, in the same fixed order, so their results are
// bit-identical for any thread count. The reference versions are kept for
// tests and benchmarks only.
//
// Tensor layouts: activations are NHWC; 3x3 convolution weights are
// [ky][kx][in_channel][out_channel]; dense weights are [out][in].

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

#include "fforge/image.h"

namespace fforge::kernels {

struct Shape4 {
  int n = 0;
  int h = 0;
  int w = 0;
  int c = 0;

  size_t size() const {
    return static_cast<size_t>(n) * h * w * c;
  }
  friend bool operator==(const Shape4&, const Shape4&) = default;
};

// 3x3 convolution with zero padding 1.
Shape4 Conv3x3OutputShape(const Shape4& in, int out_channels, int stride);
// 2x2 max pooling, stride 2, trailing odd row/column dropped.
Shape4 MaxPool2x2OutputShape(const Shape4& in);

// Inverse affine map used by image resampling: a destination pixel (r, c)
// samples the source at
//   src = center + m * ((r, c) - center)
// with bilinear interpolation and edge clamping.
struct AffineMap {
  std::array<double, 4> m = {1.0, 0.0, 0.0, 1.0};  // row-major 2x2
  double center_row = 0.0;
  double center_col = 0.0;
};

template <typename T>
void Conv3x3Forward(std::span<const T> input, const Shape4& in_shape,
                    std::span<const T> weight, std::span<const T> bias,
                    int stride, std::span<T> output);

// Accumulates nothing: overwrites grad_weight and grad_bias.
template <typename T>
void Conv3x3BackwardParams(std::span<const T> input, const Shape4& in_shape,
                           std::span<const T> grad_output, int out_channels,
                           int stride, std::span<T> grad_weight,
                           std::span<T> grad_bias);

template <typename T>
void Conv3x3BackwardInput(std::span<const T> grad_output,
                          const Shape4& in_shape, std::span<const T> weight,
                          int out_channels, int stride,
                          std::span<T> grad_input);

// argmax receives the flat input offset of each window maximum (first in
// scan order on ties).
template <typename T>
void MaxPool2x2Forward(std::span<const T> input, const Shape4& in_shape,
                       std::span<T> output, std::span<uint32_t> argmax);

template <typename T>
void MaxPool2x2Backward(std::span<const T> grad_output,
                        std::span<const uint32_t> argmax,
                        std::span<T> grad_input);

void AffineResample(const ImageTensor& src, const AffineMap& map,
                    ImageTensor& dst);

// out = (1 - ratio*mask) * base + (ratio*mask) * overlay, per pixel and
// channel.
void Blend(const ImageTensor& base, const ImageTensor& overlay,
           const Mask& mask, double ratio, ImageTensor& out);

namespace reference {

template <typename T>
void Conv3x3Forward(std::span<const T> input, const Shape4& in_shape,
                    std::span<const T> weight, std::span<const T> bias,
                    int stride, std::span<T> output);

template <typename T>
void Conv3x3BackwardParams(std::span<const T> input, const Shape4& in_shape,
                           std::span<const T> grad_output, int out_channels,
                           int stride, std::span<T> grad_weight,
                           std::span<T> grad_bias);

template <typename T>
void Conv3x3BackwardInput(std::span<const T> grad_output,
                          const Shape4& in_shape, std::span<const T> weight,
                          int out_channels, int stride,
                          std::span<T> grad_input);

template <typename T>
void MaxPool2x2Forward(std::span<const T> input, const Shape4& in_shape,
                       std::span<T> output, std::span<uint32_t> argmax);

void AffineResample(const ImageTensor& src, const AffineMap& map,
                    ImageTensor& dst);

void Blend(const ImageTensor& base, const ImageTensor& overlay,
           const Mask& mask, double ratio, ImageTensor& out);

}  // namespace reference
}  // namespace fforge::kernels

#endif  // FFORGE_KERNELS_H_
