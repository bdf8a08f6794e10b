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

#ifndef FFORGE_MODEL_H_
#define FFORGE_MODEL_H_

// Small two-headed classifier: a convolutional backbone (3x3 conv + ReLU,
// optional 2x2 max pool per block), global average pooling, a dense ReLU
// embedding, and two MLP heads producing one real/fake logit and eight
// demographic logits. Sigmoid and softmax live in the loss.
//
// Everything is templated on the scalar type: float for training and
// inference, double for gradient checking. Reductions accumulate in double in
// a fixed order, so forward and backward are bit-reproducible.

#include <cstdint>
#include <span>
#include <vector>

#include "fforge/image_store.h"
#include "fforge/kernels.h"
#include "fforge/manifest.h"
#include "fforge/params.h"
#include "json.hpp"

namespace fforge {

inline constexpr int kDemographicClasses = 8;

struct ConvBlockSpec {
  int out_channels = 16;
  int stride = 1;
  bool pool = true;

  friend bool operator==(const ConvBlockSpec&, const ConvBlockSpec&) = default;
};

struct ModelSpec {
  int input_height = 64;
  int input_width = 64;
  std::vector<ConvBlockSpec> conv_blocks = {{16, 1, true},
                                            {32, 1, true},
                                            {64, 1, true}};
  int embedding_dim = 128;
  // Layer widths of each head; the last entry is the output size.
  std::vector<int> head_real = {64, 1};
  std::vector<int> head_dem = {64, kDemographicClasses};

  // Throws ValidationError: bad dims, heads not ending in 1 / 8, or spatial
  // extent collapsing below what pooling needs.
  void Validate() const;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

nlohmann::json ModelSpecToJson(const ModelSpec& spec);
// Starts from `base` and overrides the keys present; unknown keys throw.
ModelSpec ModelSpecFromJson(const nlohmann::json& j, ModelSpec base = {});

// A batch of B images, NHWC with 3 channels. The demographic target of each
// sample is its group id, so labels_dem() aliases group_ids.
template <typename T>
struct BasicBatch {
  int size = 0;
  int height = 0;
  int width = 0;
  std::vector<T> images;
  std::vector<int> labels_real;
  std::vector<int> group_ids;

  const std::vector<int>& labels_dem() const { return group_ids; }
  void Validate() const;
};

using Batch = BasicBatch<float>;

Batch MakeBatch(std::span<const SampleRecord> records, ImageStore& images);

template <typename T>
struct ForwardCache {
  struct ConvStage {
    kernels::Shape4 in_shape;
    kernels::Shape4 out_shape;  // after ReLU, before pooling
    std::vector<T> input;
    std::vector<T> activated;
    std::vector<uint32_t> argmax;  // empty when the block does not pool
  };
  struct DenseStage {
    int in_dim = 0;
    int out_dim = 0;
    bool relu = true;
    std::vector<T> input;   // B x in_dim
    std::vector<T> output;  // B x out_dim, after ReLU when relu is set
  };

  uint64_t param_fingerprint = 0;
  int batch_size = 0;
  std::vector<ConvStage> conv;
  kernels::Shape4 gap_in_shape;
  DenseStage embed;
  std::vector<DenseStage> head_real;
  std::vector<DenseStage> head_dem;
};

template <typename T>
struct ForwardResult {
  std::vector<T> fake_logits;  // B
  std::vector<T> dem_logits;   // B x 8, row-major
  ForwardCache<T> cache;
};

// Loss gradients with respect to the two logit sets.
struct LogitGrads {
  std::vector<double> fake;  // B
  std::vector<double> dem;   // B x 8
};

// Uniform(-a, a) weights with a = sqrt(6 / (fan_in + fan_out)), zero biases.
// Values are drawn in double and cast, so float and double parameter sets
// from the same seed agree up to rounding.
template <typename T>
BasicParamVector<T> InitParams(const ModelSpec& spec, uint64_t seed);

template <typename T>
ForwardResult<T> Forward(const ModelSpec& spec,
                         const BasicParamVector<T>& params,
                         const BasicBatch<T>& batch);

// Throws ValidationError if the cache came from different parameters or a
// batch of different size.
template <typename T>
BasicParamVector<T> Backward(const ModelSpec& spec,
                             const BasicParamVector<T>& params,
                             const BasicBatch<T>& batch,
                             const LogitGrads& upstream,
                             const ForwardCache<T>& cache);

// FNV-1a over the raw parameter bytes.
template <typename T>
uint64_t ParamFingerprint(const BasicParamVector<T>& params);

}  // namespace fforge

#endif  // FFORGE_MODEL_H_
