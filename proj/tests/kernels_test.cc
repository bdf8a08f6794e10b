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

#include <omp.h>

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "fforge/errors.h"
#include "fforge/rng.h"
#include "test_support.h"

namespace fforge::kernels {
namespace {

class KernelsTest : public ::testing::Test {
 protected:
  void SetUp() override {
    saved_ = omp_get_max_threads();
    omp_set_num_threads(4);
  }
  void TearDown() override { omp_set_num_threads(saved_); }

 private:
  int saved_ = 1;
};

template <typename T>
std::vector<T> RandomVec(Rng& rng, size_t n) {
  std::vector<T> v(n);
  for (auto& x : v) x = static_cast<T>(rng.Uniform(-1.0, 1.0));
  return v;
}

// Direct evaluation of the convolution sum.
std::vector<double> ConvOracle(const std::vector<double>& in, const Shape4& s,
                               const std::vector<double>& w,
                               const std::vector<double>& b, int out_c,
                               int stride) {
  const Shape4 os = Conv3x3OutputShape(s, out_c, stride);
  std::vector<double> out(os.size());
  for (int n = 0; n < s.n; ++n)
    for (int oy = 0; oy < os.h; ++oy)
      for (int ox = 0; ox < os.w; ++ox)
        for (int o = 0; o < out_c; ++o) {
          double acc = b[o];
          for (int ky = 0; ky < 3; ++ky)
            for (int kx = 0; kx < 3; ++kx) {
              const int iy = oy * stride + ky - 1, ix = ox * stride + kx - 1;
              if (iy < 0 || iy >= s.h || ix < 0 || ix >= s.w) continue;
              for (int c = 0; c < s.c; ++c) {
                acc += in[((n * s.h + iy) * s.w + ix) * s.c + c] *
                       w[((ky * 3 + kx) * s.c + c) * out_c + o];
              }
            }
          out[((n * os.h + oy) * os.w + ox) * out_c + o] = acc;
        }
  return out;
}

TEST_F(KernelsTest, OutputShapes) {
  EXPECT_EQ(Conv3x3OutputShape({2, 7, 6, 3}, 4, 1), (Shape4{2, 7, 6, 4}));
  EXPECT_EQ(Conv3x3OutputShape({2, 7, 6, 3}, 4, 2), (Shape4{2, 4, 3, 4}));
  EXPECT_EQ(MaxPool2x2OutputShape({1, 5, 4, 2}), (Shape4{1, 2, 2, 2}));
  EXPECT_THROW(MaxPool2x2OutputShape({1, 1, 4, 2}), ValidationError);
}

TEST_F(KernelsTest, ConvForwardMatchesOracle) {
  Rng rng(1);
  for (int stride : {1, 2}) {
    const Shape4 s{2, 7, 6, 3};
    const int oc = 4;
    auto in = RandomVec<double>(rng, s.size());
    auto w = RandomVec<double>(rng, 9 * s.c * oc);
    auto b = RandomVec<double>(rng, oc);
    std::vector<double> out(Conv3x3OutputShape(s, oc, stride).size());
    Conv3x3Forward<double>(in, s, w, b, stride, out);
    const auto expected = ConvOracle(in, s, w, b, oc, stride);
    for (size_t i = 0; i < out.size(); ++i) {
      EXPECT_NEAR(out[i], expected[i], 1e-12);
    }
  }
}

// The conv is linear in its input, so <dy, conv(x)> = <conv^T(dy), x> and
// the parameter gradient follows from the same identity in the weights.
TEST_F(KernelsTest, ConvBackwardIsTheAdjoint) {
  Rng rng(2);
  for (int stride : {1, 2}) {
    const Shape4 s{2, 6, 5, 3};
    const int oc = 2;
    const Shape4 os = Conv3x3OutputShape(s, oc, stride);
    auto x = RandomVec<double>(rng, s.size());
    auto w = RandomVec<double>(rng, 9 * s.c * oc);
    const std::vector<double> zero_b(oc, 0.0);
    auto dy = RandomVec<double>(rng, os.size());
    std::vector<double> y(os.size());
    Conv3x3Forward<double>(x, s, w, zero_b, stride, y);
    double lhs = 0.0;
    for (size_t i = 0; i < y.size(); ++i) lhs += dy[i] * y[i];

    std::vector<double> dx(s.size());
    Conv3x3BackwardInput<double>(dy, s, w, oc, stride, dx);
    double rhs_x = 0.0;
    for (size_t i = 0; i < x.size(); ++i) rhs_x += dx[i] * x[i];
    EXPECT_NEAR(lhs, rhs_x, 1e-10);

    std::vector<double> dw(w.size()), db(oc);
    Conv3x3BackwardParams<double>(x, s, dy, oc, stride, dw, db);
    double rhs_w = 0.0;
    for (size_t i = 0; i < w.size(); ++i) rhs_w += dw[i] * w[i];
    EXPECT_NEAR(lhs, rhs_w, 1e-10);
    for (int o = 0; o < oc; ++o) {
      double sum = 0.0;
      for (size_t i = o; i < dy.size(); i += oc) sum += dy[i];
      EXPECT_NEAR(db[o], sum, 1e-12);
    }
  }
}

TEST_F(KernelsTest, MaxPoolForwardAndBackward) {
  const Shape4 s{1, 3, 4, 1};
  // Odd trailing row is dropped; ties pick the first element in scan order.
  const std::vector<float> in = {1, 5, 2, 2,  //
                                 3, 4, 2, 1,  //
                                 9, 9, 9, 9};
  std::vector<float> out(2);
  std::vector<uint32_t> argmax(2);
  MaxPool2x2Forward<float>(in, s, out, argmax);
  EXPECT_EQ(out, (std::vector<float>{5, 2}));
  EXPECT_EQ(argmax, (std::vector<uint32_t>{1, 2}));
  std::vector<float> grad(in.size(), 7.0f);
  MaxPool2x2Backward<float>(std::vector<float>{0.5f, -1.0f}, argmax, grad);
  std::vector<float> expected(in.size(), 0.0f);
  expected[1] = 0.5f;
  expected[2] = -1.0f;
  EXPECT_EQ(grad, expected);
}

// Parallel kernels against the serial reference: identical bits for any
// thread count.
TEST_F(KernelsTest, ConvMatchesReferenceBitForBit) {
  Rng rng(3);
  for (int threads : {1, 2, 4}) {
    omp_set_num_threads(threads);
    for (int stride : {1, 2}) {
      const Shape4 s{3, 9, 8, 5};
      const int oc = 6;
      const Shape4 os = Conv3x3OutputShape(s, oc, stride);
      auto x = RandomVec<float>(rng, s.size());
      auto w = RandomVec<float>(rng, 9 * s.c * oc);
      auto b = RandomVec<float>(rng, oc);
      auto dy = RandomVec<float>(rng, os.size());
      std::vector<float> y1(os.size()), y2(os.size());
      Conv3x3Forward<float>(x, s, w, b, stride, y1);
      reference::Conv3x3Forward<float>(x, s, w, b, stride, y2);
      ASSERT_EQ(y1, y2);
      std::vector<float> dw1(w.size()), db1(oc), dw2(w.size()), db2(oc);
      Conv3x3BackwardParams<float>(x, s, dy, oc, stride, dw1, db1);
      reference::Conv3x3BackwardParams<float>(x, s, dy, oc, stride, dw2, db2);
      ASSERT_EQ(dw1, dw2);
      ASSERT_EQ(db1, db2);
      std::vector<float> dx1(s.size()), dx2(s.size());
      Conv3x3BackwardInput<float>(dy, s, w, oc, stride, dx1);
      reference::Conv3x3BackwardInput<float>(dy, s, w, oc, stride, dx2);
      ASSERT_EQ(dx1, dx2);
    }
  }
}

TEST_F(KernelsTest, PoolResampleBlendMatchReferenceBitForBit) {
  Rng rng(4);
  const Shape4 s{2, 7, 9, 3};
  auto x = RandomVec<float>(rng, s.size());
  const Shape4 ps = MaxPool2x2OutputShape(s);
  std::vector<float> p1(ps.size()), p2(ps.size());
  std::vector<uint32_t> a1(ps.size()), a2(ps.size());
  MaxPool2x2Forward<float>(x, s, p1, a1);
  reference::MaxPool2x2Forward<float>(x, s, p2, a2);
  EXPECT_EQ(p1, p2);
  EXPECT_EQ(a1, a2);

  const ImageTensor src = testing::RandomImage(rng, 20, 17);
  const ImageTensor other = testing::RandomImage(rng, 20, 17);
  AffineMap map;
  map.m = {0.9, -0.2, 0.25, 1.1};
  map.center_row = 9.5;
  map.center_col = 8.0;
  ImageTensor r1(20, 17), r2(20, 17);
  AffineResample(src, map, r1);
  reference::AffineResample(src, map, r2);
  EXPECT_EQ(r1, r2);

  Mask mask{20, 17, std::vector<double>(20 * 17)};
  for (auto& m : mask.values) m = rng.Uniform();
  ImageTensor b1(20, 17), b2(20, 17);
  Blend(src, other, mask, 0.7, b1);
  reference::Blend(src, other, mask, 0.7, b2);
  EXPECT_EQ(b1, b2);
}

TEST_F(KernelsTest, IdentityResampleCopies) {
  Rng rng(5);
  const ImageTensor src = testing::RandomImage(rng, 11, 13);
  AffineMap map;
  map.center_row = 5.0;
  map.center_col = 6.0;
  ImageTensor dst(11, 13);
  AffineResample(src, map, dst);
  EXPECT_EQ(dst, src);
}

}  // namespace
}  // namespace fforge::kernels
