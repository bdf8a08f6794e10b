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

// OpenMP kernels against their serial references. Run with OMP_NUM_THREADS
// set to compare thread counts; results are bit-identical either way.

#include <vector>

#include <benchmark/benchmark.h>

#include "fforge/kernels.h"
#include "fforge/rng.h"

namespace fforge::kernels {
namespace {

struct ConvCase {
  Shape4 in;
  int out_c;
  std::vector<float> input, weight, bias, output, grad_output, grad_weight,
      grad_bias, grad_input;
};

ConvCase MakeConvCase(const benchmark::State& state) {
  ConvCase c;
  const int side = static_cast<int>(state.range(0));
  const int channels = static_cast<int>(state.range(1));
  c.in = {16, side, side, channels};
  c.out_c = channels * 2;
  Rng rng(1);
  auto fill = [&](std::vector<float>& v, size_t n) {
    v.resize(n);
    for (float& x : v) x = static_cast<float>(rng.Uniform(-1, 1));
  };
  const Shape4 os = Conv3x3OutputShape(c.in, c.out_c, 1);
  fill(c.input, c.in.size());
  fill(c.weight, 9 * static_cast<size_t>(channels) * c.out_c);
  fill(c.bias, c.out_c);
  fill(c.grad_output, os.size());
  c.output.resize(os.size());
  c.grad_weight.resize(c.weight.size());
  c.grad_bias.resize(c.bias.size());
  c.grad_input.resize(c.input.size());
  return c;
}

template <bool kParallel>
void BM_ConvForward(benchmark::State& state) {
  ConvCase c = MakeConvCase(state);
  for (auto _ : state) {
    if (kParallel) {
      Conv3x3Forward<float>(c.input, c.in, c.weight, c.bias, 1, c.output);
    } else {
      reference::Conv3x3Forward<float>(c.input, c.in, c.weight, c.bias, 1,
                                       c.output);
    }
    benchmark::DoNotOptimize(c.output.data());
  }
  state.SetItemsProcessed(state.iterations() * c.in.n);
}

template <bool kParallel>
void BM_ConvBackward(benchmark::State& state) {
  ConvCase c = MakeConvCase(state);
  for (auto _ : state) {
    if (kParallel) {
      Conv3x3BackwardParams<float>(c.input, c.in, c.grad_output, c.out_c, 1,
                                   c.grad_weight, c.grad_bias);
      Conv3x3BackwardInput<float>(c.grad_output, c.in, c.weight, c.out_c, 1,
                                  c.grad_input);
    } else {
      reference::Conv3x3BackwardParams<float>(c.input, c.in, c.grad_output,
                                              c.out_c, 1, c.grad_weight,
                                              c.grad_bias);
      reference::Conv3x3BackwardInput<float>(c.grad_output, c.in, c.weight,
                                             c.out_c, 1, c.grad_input);
    }
    benchmark::DoNotOptimize(c.grad_input.data());
  }
  state.SetItemsProcessed(state.iterations() * c.in.n);
}

ImageTensor NoiseImage(int side, uint64_t seed) {
  Rng rng(seed);
  ImageTensor img(side, side);
  for (int r = 0; r < side; ++r) {
    for (int col = 0; col < side; ++col) {
      for (int ch = 0; ch < ImageTensor::kChannels; ++ch) {
        img.at(r, col, ch) = static_cast<float>(rng.Uniform());
      }
    }
  }
  return img;
}

template <bool kParallel>
void BM_AffineResample(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const ImageTensor src = NoiseImage(side, 2);
  ImageTensor dst(side, side);
  AffineMap map;
  map.m = {0.98, -0.17, 0.17, 0.98};
  map.center_row = map.center_col = (side - 1) / 2.0;
  for (auto _ : state) {
    if (kParallel) {
      AffineResample(src, map, dst);
    } else {
      reference::AffineResample(src, map, dst);
    }
    benchmark::DoNotOptimize(dst);
  }
}

template <bool kParallel>
void BM_Blend(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const ImageTensor a = NoiseImage(side, 3), b = NoiseImage(side, 4);
  Mask mask{side, side, std::vector<double>(static_cast<size_t>(side) * side)};
  Rng rng(5);
  for (double& v : mask.values) v = rng.Uniform();
  ImageTensor out(side, side);
  for (auto _ : state) {
    if (kParallel) {
      Blend(a, b, mask, 0.7, out);
    } else {
      reference::Blend(a, b, mask, 0.7, out);
    }
    benchmark::DoNotOptimize(out);
  }
}

BENCHMARK(BM_ConvForward<false>)->Args({64, 3})->Args({32, 16});
BENCHMARK(BM_ConvForward<true>)->Args({64, 3})->Args({32, 16});
BENCHMARK(BM_ConvBackward<false>)->Args({64, 3})->Args({32, 16});
BENCHMARK(BM_ConvBackward<true>)->Args({64, 3})->Args({32, 16});
BENCHMARK(BM_AffineResample<false>)->Arg(64)->Arg(256);
BENCHMARK(BM_AffineResample<true>)->Arg(64)->Arg(256);
BENCHMARK(BM_Blend<false>)->Arg(64)->Arg(256);
BENCHMARK(BM_Blend<true>)->Arg(64)->Arg(256);

}  // namespace
}  // namespace fforge::kernels

BENCHMARK_MAIN();
