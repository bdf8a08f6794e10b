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

#include "fforge/kernels.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fforge/errors.h"

namespace fforge::kernels {
namespace {

constexpr int kTaps = 9;

inline size_t WeightIndex(int tap, int ic, int oc, int in_c, int out_c) {
  return (static_cast<size_t>(tap) * in_c + ic) * out_c + oc;
}

inline size_t Nhwc(const Shape4& s, int b, int y, int x) {
  return ((static_cast<size_t>(b) * s.h + y) * s.w + x) * s.c;
}

// Output row/col of the tap at input index i, or -1 when no output position
// reads input i through that tap.
inline int SourceOutput(int i, int k, int stride, int out_extent) {
  const int t = i + 1 - k;
  if (t < 0 || t % stride != 0) return -1;
  const int o = t / stride;
  return o < out_extent ? o : -1;
}

void CheckConvSpans(size_t input, const Shape4& in, size_t weight,
                    int out_channels) {
  if (input != in.size() ||
      weight != static_cast<size_t>(kTaps) * in.c * out_channels) {
    throw ValidationError("conv3x3: buffer sizes do not match shapes");
  }
}

inline double Bilinear(const ImageTensor& src, double sr, double sc, int ch) {
  const int h = src.height();
  const int w = src.width();
  sr = std::clamp(sr, 0.0, static_cast<double>(h - 1));
  sc = std::clamp(sc, 0.0, static_cast<double>(w - 1));
  const int r0 = static_cast<int>(std::floor(sr));
  const int c0 = static_cast<int>(std::floor(sc));
  const int r1 = std::min(r0 + 1, h - 1);
  const int c1 = std::min(c0 + 1, w - 1);
  const double fr = sr - r0;
  const double fc = sc - c0;
  const double top = (1.0 - fc) * src.at(r0, c0, ch) + fc * src.at(r0, c1, ch);
  const double bottom =
      (1.0 - fc) * src.at(r1, c0, ch) + fc * src.at(r1, c1, ch);
  return (1.0 - fr) * top + fr * bottom;
}

inline void ResampleRow(const ImageTensor& src, const AffineMap& map, int r,
                        ImageTensor& dst) {
  const double dr = r - map.center_row;
  for (int c = 0; c < dst.width(); ++c) {
    const double dc = c - map.center_col;
    const double sr = map.center_row + map.m[0] * dr + map.m[1] * dc;
    const double sc = map.center_col + map.m[2] * dr + map.m[3] * dc;
    for (int ch = 0; ch < ImageTensor::kChannels; ++ch) {
      dst.at(r, c, ch) = static_cast<float>(
          std::clamp(Bilinear(src, sr, sc, ch), 0.0, 1.0));
    }
  }
}

inline void BlendRow(const ImageTensor& base, const ImageTensor& overlay,
                     const Mask& mask, double ratio, int r, ImageTensor& out) {
  for (int c = 0; c < base.width(); ++c) {
    const double a = ratio * mask.at(r, c);
    for (int ch = 0; ch < ImageTensor::kChannels; ++ch) {
      const double v = (1.0 - a) * base.at(r, c, ch) + a * overlay.at(r, c, ch);
      out.at(r, c, ch) = static_cast<float>(v);
    }
  }
}

void CheckBlendShapes(const ImageTensor& base, const ImageTensor& overlay,
                      const Mask& mask, const ImageTensor& out) {
  if (!base.SameShape(overlay) || !base.SameShape(out) ||
      mask.height != base.height() || mask.width != base.width() ||
      mask.values.size() != static_cast<size_t>(mask.height) * mask.width) {
    throw ValidationError("blend: image and mask shapes differ");
  }
}

}  // namespace

Shape4 Conv3x3OutputShape(const Shape4& in, int out_channels, int stride) {
  if (stride < 1) throw ValidationError("conv3x3: stride must be >= 1");
  return {in.n, (in.h - 1) / stride + 1, (in.w - 1) / stride + 1,
          out_channels};
}

Shape4 MaxPool2x2OutputShape(const Shape4& in) {
  if (in.h < 2 || in.w < 2) {
    throw ValidationError("maxpool2x2: spatial extent below 2");
  }
  return {in.n, in.h / 2, in.w / 2, in.c};
}

template <typename T>
void Conv3x3Forward(std::span<const T> input, const Shape4& in_shape,
                    std::span<const T> weight, std::span<const T> bias,
                    int stride, std::span<T> output) {
  const int out_c = static_cast<int>(bias.size());
  const Shape4 os = Conv3x3OutputShape(in_shape, out_c, stride);
  CheckConvSpans(input.size(), in_shape, weight.size(), out_c);
  if (output.size() != os.size()) {
    throw ValidationError("conv3x3: output buffer size mismatch");
  }
  const int in_c = in_shape.c;
  const int rows = os.n * os.h;

#pragma omp parallel
  {
    std::vector<double> acc(out_c);
#pragma omp for schedule(static)
    for (int task = 0; task < rows; ++task) {
      const int b = task / os.h;
      const int oy = task % os.h;
      for (int ox = 0; ox < os.w; ++ox) {
        for (int oc = 0; oc < out_c; ++oc) acc[oc] = bias[oc];
        for (int ky = 0; ky < 3; ++ky) {
          const int iy = oy * stride + ky - 1;
          if (iy < 0 || iy >= in_shape.h) continue;
          for (int kx = 0; kx < 3; ++kx) {
            const int ix = ox * stride + kx - 1;
            if (ix < 0 || ix >= in_shape.w) continue;
            const T* x = &input[Nhwc(in_shape, b, iy, ix)];
            const T* w = &weight[WeightIndex(ky * 3 + kx, 0, 0, in_c, out_c)];
            for (int ic = 0; ic < in_c; ++ic) {
              const double xv = x[ic];
              const T* wrow = w + static_cast<size_t>(ic) * out_c;
              for (int oc = 0; oc < out_c; ++oc) {
                acc[oc] += xv * static_cast<double>(wrow[oc]);
              }
            }
          }
        }
        T* y = &output[Nhwc(os, b, oy, ox)];
        for (int oc = 0; oc < out_c; ++oc) y[oc] = static_cast<T>(acc[oc]);
      }
    }
  }
}

template <typename T>
void Conv3x3BackwardParams(std::span<const T> input, const Shape4& in_shape,
                           std::span<const T> grad_output, int out_channels,
                           int stride, std::span<T> grad_weight,
                           std::span<T> grad_bias) {
  const Shape4 os = Conv3x3OutputShape(in_shape, out_channels, stride);
  CheckConvSpans(input.size(), in_shape, grad_weight.size(), out_channels);
  if (grad_output.size() != os.size() ||
      grad_bias.size() != static_cast<size_t>(out_channels)) {
    throw ValidationError("conv3x3 backward: buffer size mismatch");
  }
  const int in_c = in_shape.c;
  const int out_c = out_channels;

  // Tasks 0..8 own one tap of the weight gradient each; task 9 owns the bias.
#pragma omp parallel for schedule(dynamic)
  for (int task = 0; task <= kTaps; ++task) {
    if (task == kTaps) {
      std::vector<double> acc(out_c, 0.0);
      for (size_t i = 0; i < os.size(); i += out_c) {
        for (int oc = 0; oc < out_c; ++oc) acc[oc] += grad_output[i + oc];
      }
      for (int oc = 0; oc < out_c; ++oc) grad_bias[oc] = static_cast<T>(acc[oc]);
      continue;
    }
    const int ky = task / 3;
    const int kx = task % 3;
    std::vector<double> acc(static_cast<size_t>(in_c) * out_c, 0.0);
    for (int b = 0; b < os.n; ++b) {
      for (int oy = 0; oy < os.h; ++oy) {
        const int iy = oy * stride + ky - 1;
        if (iy < 0 || iy >= in_shape.h) continue;
        for (int ox = 0; ox < os.w; ++ox) {
          const int ix = ox * stride + kx - 1;
          if (ix < 0 || ix >= in_shape.w) continue;
          const T* x = &input[Nhwc(in_shape, b, iy, ix)];
          const T* dy = &grad_output[Nhwc(os, b, oy, ox)];
          for (int ic = 0; ic < in_c; ++ic) {
            const double xv = x[ic];
            double* a = &acc[static_cast<size_t>(ic) * out_c];
            for (int oc = 0; oc < out_c; ++oc) {
              a[oc] += xv * static_cast<double>(dy[oc]);
            }
          }
        }
      }
    }
    T* gw = &grad_weight[WeightIndex(task, 0, 0, in_c, out_c)];
    for (size_t i = 0; i < acc.size(); ++i) gw[i] = static_cast<T>(acc[i]);
  }
}

template <typename T>
void Conv3x3BackwardInput(std::span<const T> grad_output,
                          const Shape4& in_shape, std::span<const T> weight,
                          int out_channels, int stride,
                          std::span<T> grad_input) {
  const Shape4 os = Conv3x3OutputShape(in_shape, out_channels, stride);
  CheckConvSpans(grad_input.size(), in_shape, weight.size(), out_channels);
  if (grad_output.size() != os.size()) {
    throw ValidationError("conv3x3 backward: grad_output size mismatch");
  }
  const int in_c = in_shape.c;
  const int out_c = out_channels;

  // [tap][oc][ic] copy so the innermost loop runs over contiguous ic.
  std::vector<T> wt(weight.size());
  for (int tap = 0; tap < kTaps; ++tap) {
    for (int ic = 0; ic < in_c; ++ic) {
      for (int oc = 0; oc < out_c; ++oc) {
        wt[(static_cast<size_t>(tap) * out_c + oc) * in_c + ic] =
            weight[WeightIndex(tap, ic, oc, in_c, out_c)];
      }
    }
  }

  const int rows = in_shape.n * in_shape.h;
#pragma omp parallel
  {
    std::vector<double> acc(in_c);
#pragma omp for schedule(static)
    for (int task = 0; task < rows; ++task) {
      const int b = task / in_shape.h;
      const int iy = task % in_shape.h;
      for (int ix = 0; ix < in_shape.w; ++ix) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (int ky = 0; ky < 3; ++ky) {
          const int oy = SourceOutput(iy, ky, stride, os.h);
          if (oy < 0) continue;
          for (int kx = 0; kx < 3; ++kx) {
            const int ox = SourceOutput(ix, kx, stride, os.w);
            if (ox < 0) continue;
            const T* dy = &grad_output[Nhwc(os, b, oy, ox)];
            const T* w = &wt[static_cast<size_t>(ky * 3 + kx) * out_c * in_c];
            for (int oc = 0; oc < out_c; ++oc) {
              const double g = dy[oc];
              const T* wrow = w + static_cast<size_t>(oc) * in_c;
              for (int ic = 0; ic < in_c; ++ic) {
                acc[ic] += static_cast<double>(wrow[ic]) * g;
              }
            }
          }
        }
        T* dx = &grad_input[Nhwc(in_shape, b, iy, ix)];
        for (int ic = 0; ic < in_c; ++ic) dx[ic] = static_cast<T>(acc[ic]);
      }
    }
  }
}

template <typename T>
void MaxPool2x2Forward(std::span<const T> input, const Shape4& in_shape,
                       std::span<T> output, std::span<uint32_t> argmax) {
  const Shape4 os = MaxPool2x2OutputShape(in_shape);
  if (input.size() != in_shape.size() || output.size() != os.size() ||
      argmax.size() != os.size()) {
    throw ValidationError("maxpool2x2: buffer size mismatch");
  }
  const int rows = os.n * os.h;
#pragma omp parallel for schedule(static)
  for (int task = 0; task < rows; ++task) {
    const int b = task / os.h;
    const int oy = task % os.h;
    for (int ox = 0; ox < os.w; ++ox) {
      for (int c = 0; c < os.c; ++c) {
        size_t best = Nhwc(in_shape, b, 2 * oy, 2 * ox) + c;
        for (int dy = 0; dy < 2; ++dy) {
          for (int dx = 0; dx < 2; ++dx) {
            const size_t idx = Nhwc(in_shape, b, 2 * oy + dy, 2 * ox + dx) + c;
            if (input[idx] > input[best]) best = idx;
          }
        }
        const size_t o = Nhwc(os, b, oy, ox) + c;
        output[o] = input[best];
        argmax[o] = static_cast<uint32_t>(best);
      }
    }
  }
}

template <typename T>
void MaxPool2x2Backward(std::span<const T> grad_output,
                        std::span<const uint32_t> argmax,
                        std::span<T> grad_input) {
  if (grad_output.size() != argmax.size()) {
    throw ValidationError("maxpool2x2 backward: buffer size mismatch");
  }
  const auto n_in = static_cast<std::ptrdiff_t>(grad_input.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n_in; ++i) grad_input[i] = T(0);
  // Windows do not overlap, so every input receives at most one write.
  const auto n_out = static_cast<std::ptrdiff_t>(grad_output.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n_out; ++i) {
    grad_input[argmax[i]] = grad_output[i];
  }
}

void AffineResample(const ImageTensor& src, const AffineMap& map,
                    ImageTensor& dst) {
  if (!src.SameShape(dst)) {
    throw ValidationError("resample: source and destination shapes differ");
  }
#pragma omp parallel for schedule(static)
  for (int r = 0; r < dst.height(); ++r) ResampleRow(src, map, r, dst);
}

void Blend(const ImageTensor& base, const ImageTensor& overlay,
           const Mask& mask, double ratio, ImageTensor& out) {
  CheckBlendShapes(base, overlay, mask, out);
#pragma omp parallel for schedule(static)
  for (int r = 0; r < base.height(); ++r) {
    BlendRow(base, overlay, mask, ratio, r, out);
  }
}

namespace reference {

template <typename T>
void Conv3x3Forward(std::span<const T> input, const Shape4& in_shape,
                    std::span<const T> weight, std::span<const T> bias,
                    int stride, std::span<T> output) {
  const int out_c = static_cast<int>(bias.size());
  const Shape4 os = Conv3x3OutputShape(in_shape, out_c, stride);
  CheckConvSpans(input.size(), in_shape, weight.size(), out_c);
  const int in_c = in_shape.c;
  for (int b = 0; b < os.n; ++b)
    for (int oy = 0; oy < os.h; ++oy)
      for (int ox = 0; ox < os.w; ++ox)
        for (int oc = 0; oc < out_c; ++oc) {
          double acc = bias[oc];
          for (int ky = 0; ky < 3; ++ky)
            for (int kx = 0; kx < 3; ++kx) {
              const int iy = oy * stride + ky - 1;
              const int ix = ox * stride + kx - 1;
              if (iy < 0 || iy >= in_shape.h || ix < 0 || ix >= in_shape.w)
                continue;
              for (int ic = 0; ic < in_c; ++ic) {
                acc += static_cast<double>(
                           input[Nhwc(in_shape, b, iy, ix) + ic]) *
                       static_cast<double>(
                           weight[WeightIndex(ky * 3 + kx, ic, oc, in_c,
                                              out_c)]);
              }
            }
          output[Nhwc(os, b, oy, ox) + oc] = static_cast<T>(acc);
        }
}

template <typename T>
void Conv3x3BackwardParams(std::span<const T> input, const Shape4& in_shape,
                           std::span<const T> grad_output, int out_channels,
                           int stride, std::span<T> grad_weight,
                           std::span<T> grad_bias) {
  const Shape4 os = Conv3x3OutputShape(in_shape, out_channels, stride);
  const int in_c = in_shape.c;
  const int out_c = out_channels;
  for (int oc = 0; oc < out_c; ++oc) {
    double acc = 0.0;
    for (int b = 0; b < os.n; ++b)
      for (int oy = 0; oy < os.h; ++oy)
        for (int ox = 0; ox < os.w; ++ox)
          acc += grad_output[Nhwc(os, b, oy, ox) + oc];
    grad_bias[oc] = static_cast<T>(acc);
  }
  for (int ky = 0; ky < 3; ++ky)
    for (int kx = 0; kx < 3; ++kx)
      for (int ic = 0; ic < in_c; ++ic)
        for (int oc = 0; oc < out_c; ++oc) {
          double acc = 0.0;
          for (int b = 0; b < os.n; ++b)
            for (int oy = 0; oy < os.h; ++oy)
              for (int ox = 0; ox < os.w; ++ox) {
                const int iy = oy * stride + ky - 1;
                const int ix = ox * stride + kx - 1;
                if (iy < 0 || iy >= in_shape.h || ix < 0 || ix >= in_shape.w)
                  continue;
                acc += static_cast<double>(
                           input[Nhwc(in_shape, b, iy, ix) + ic]) *
                       static_cast<double>(
                           grad_output[Nhwc(os, b, oy, ox) + oc]);
              }
          grad_weight[WeightIndex(ky * 3 + kx, ic, oc, in_c, out_c)] =
              static_cast<T>(acc);
        }
}

template <typename T>
void Conv3x3BackwardInput(std::span<const T> grad_output,
                          const Shape4& in_shape, std::span<const T> weight,
                          int out_channels, int stride,
                          std::span<T> grad_input) {
  const Shape4 os = Conv3x3OutputShape(in_shape, out_channels, stride);
  const int in_c = in_shape.c;
  const int out_c = out_channels;
  for (int b = 0; b < in_shape.n; ++b)
    for (int iy = 0; iy < in_shape.h; ++iy)
      for (int ix = 0; ix < in_shape.w; ++ix)
        for (int ic = 0; ic < in_c; ++ic) {
          double acc = 0.0;
          for (int ky = 0; ky < 3; ++ky)
            for (int kx = 0; kx < 3; ++kx) {
              const int oy = SourceOutput(iy, ky, stride, os.h);
              const int ox = SourceOutput(ix, kx, stride, os.w);
              if (oy < 0 || ox < 0) continue;
              for (int oc = 0; oc < out_c; ++oc) {
                acc += static_cast<double>(
                           weight[WeightIndex(ky * 3 + kx, ic, oc, in_c,
                                              out_c)]) *
                       static_cast<double>(
                           grad_output[Nhwc(os, b, oy, ox) + oc]);
              }
            }
          grad_input[Nhwc(in_shape, b, iy, ix) + ic] = static_cast<T>(acc);
        }
}

template <typename T>
void MaxPool2x2Forward(std::span<const T> input, const Shape4& in_shape,
                       std::span<T> output, std::span<uint32_t> argmax) {
  const Shape4 os = MaxPool2x2OutputShape(in_shape);
  for (int b = 0; b < os.n; ++b)
    for (int oy = 0; oy < os.h; ++oy)
      for (int ox = 0; ox < os.w; ++ox)
        for (int c = 0; c < os.c; ++c) {
          size_t best = Nhwc(in_shape, b, 2 * oy, 2 * ox) + c;
          for (int dy = 0; dy < 2; ++dy)
            for (int dx = 0; dx < 2; ++dx) {
              const size_t idx =
                  Nhwc(in_shape, b, 2 * oy + dy, 2 * ox + dx) + c;
              if (input[idx] > input[best]) best = idx;
            }
          output[Nhwc(os, b, oy, ox) + c] = input[best];
          argmax[Nhwc(os, b, oy, ox) + c] = static_cast<uint32_t>(best);
        }
}

void AffineResample(const ImageTensor& src, const AffineMap& map,
                    ImageTensor& dst) {
  if (!src.SameShape(dst)) {
    throw ValidationError("resample: source and destination shapes differ");
  }
  for (int r = 0; r < dst.height(); ++r) ResampleRow(src, map, r, dst);
}

void Blend(const ImageTensor& base, const ImageTensor& overlay,
           const Mask& mask, double ratio, ImageTensor& out) {
  CheckBlendShapes(base, overlay, mask, out);
  for (int r = 0; r < base.height(); ++r) {
    BlendRow(base, overlay, mask, ratio, r, out);
  }
}

}  // namespace reference

#define FFORGE_INSTANTIATE_KERNELS(T)                                         \
  template void Conv3x3Forward<T>(std::span<const T>, const Shape4&,          \
                                  std::span<const T>, std::span<const T>,     \
                                  int, std::span<T>);                         \
  template void Conv3x3BackwardParams<T>(std::span<const T>, const Shape4&,   \
                                         std::span<const T>, int, int,        \
                                         std::span<T>, std::span<T>);         \
  template void Conv3x3BackwardInput<T>(std::span<const T>, const Shape4&,    \
                                        std::span<const T>, int, int,         \
                                        std::span<T>);                        \
  template void MaxPool2x2Forward<T>(std::span<const T>, const Shape4&,       \
                                     std::span<T>, std::span<uint32_t>);      \
  template void MaxPool2x2Backward<T>(std::span<const T>,                     \
                                      std::span<const uint32_t>,              \
                                      std::span<T>);                          \
  template void reference::Conv3x3Forward<T>(                                 \
      std::span<const T>, const Shape4&, std::span<const T>,                  \
      std::span<const T>, int, std::span<T>);                                 \
  template void reference::Conv3x3BackwardParams<T>(                          \
      std::span<const T>, const Shape4&, std::span<const T>, int, int,        \
      std::span<T>, std::span<T>);                                            \
  template void reference::Conv3x3BackwardInput<T>(                           \
      std::span<const T>, const Shape4&, std::span<const T>, int, int,        \
      std::span<T>);                                                          \
  template void reference::MaxPool2x2Forward<T>(                              \
      std::span<const T>, const Shape4&, std::span<T>, std::span<uint32_t>);

FFORGE_INSTANTIATE_KERNELS(float)
FFORGE_INSTANTIATE_KERNELS(double)

#undef FFORGE_INSTANTIATE_KERNELS

}  // namespace fforge::kernels
