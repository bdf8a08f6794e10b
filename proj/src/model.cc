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

#include "fforge/model.h"

#include <cmath>
#include <string>
#include <string_view>

#include "fforge/errors.h"
#include "fforge/rng.h"

namespace fforge {
namespace {

using nlohmann::json;
using kernels::Shape4;

std::string ConvName(size_t i, const char* what) {
  return "conv" + std::to_string(i) + "." + what;
}

std::string HeadName(const char* head, size_t j, const char* what) {
  return std::string(head) + "." + std::to_string(j) + "." + what;
}

// y[b, o] = bias[o] + sum_i w[o, i] * x[b, i]
template <typename T>
void DenseForward(std::span<const T> x, int batch, int in_dim,
                  std::span<const T> w, std::span<const T> bias, int out_dim,
                  bool relu, std::vector<T>& y) {
  y.assign(static_cast<size_t>(batch) * out_dim, T(0));
  for (int b = 0; b < batch; ++b) {
    const T* xb = &x[static_cast<size_t>(b) * in_dim];
    for (int o = 0; o < out_dim; ++o) {
      const T* wo = &w[static_cast<size_t>(o) * in_dim];
      double acc = bias[o];
      for (int i = 0; i < in_dim; ++i) {
        acc += static_cast<double>(wo[i]) * static_cast<double>(xb[i]);
      }
      T v = static_cast<T>(acc);
      if (relu && v < T(0)) v = T(0);
      y[static_cast<size_t>(b) * out_dim + o] = v;
    }
  }
}

// grad_out is the gradient w.r.t. the stage output; on return it holds the
// gradient w.r.t. the stage input.
template <typename T>
void DenseBackward(const typename ForwardCache<T>::DenseStage& st, int batch,
                   std::span<const T> w, std::span<T> grad_w,
                   std::span<T> grad_b, std::vector<T>& grad) {
  if (st.relu) {
    for (size_t i = 0; i < grad.size(); ++i) {
      if (!(st.output[i] > T(0))) grad[i] = T(0);
    }
  }
  for (int o = 0; o < st.out_dim; ++o) {
    double acc_b = 0.0;
    for (int b = 0; b < batch; ++b) {
      acc_b += grad[static_cast<size_t>(b) * st.out_dim + o];
    }
    grad_b[o] = static_cast<T>(acc_b);
    for (int i = 0; i < st.in_dim; ++i) {
      double acc = 0.0;
      for (int b = 0; b < batch; ++b) {
        acc += static_cast<double>(grad[static_cast<size_t>(b) * st.out_dim +
                                        o]) *
               static_cast<double>(
                   st.input[static_cast<size_t>(b) * st.in_dim + i]);
      }
      grad_w[static_cast<size_t>(o) * st.in_dim + i] = static_cast<T>(acc);
    }
  }
  std::vector<T> grad_in(static_cast<size_t>(batch) * st.in_dim);
  for (int b = 0; b < batch; ++b) {
    for (int i = 0; i < st.in_dim; ++i) {
      double acc = 0.0;
      for (int o = 0; o < st.out_dim; ++o) {
        acc += static_cast<double>(w[static_cast<size_t>(o) * st.in_dim + i]) *
               static_cast<double>(grad[static_cast<size_t>(b) * st.out_dim +
                                        o]);
      }
      grad_in[static_cast<size_t>(b) * st.in_dim + i] = static_cast<T>(acc);
    }
  }
  grad = std::move(grad_in);
}

template <typename T>
void RunHead(const char* name, const std::vector<int>& dims,
             const BasicParamVector<T>& params, std::span<const T> input,
             int batch, int in_dim,
             std::vector<typename ForwardCache<T>::DenseStage>& stages,
             std::vector<T>& out) {
  std::vector<T> cur(input.begin(), input.end());
  int cur_dim = in_dim;
  for (size_t j = 0; j < dims.size(); ++j) {
    typename ForwardCache<T>::DenseStage st;
    st.in_dim = cur_dim;
    st.out_dim = dims[j];
    st.relu = j + 1 < dims.size();
    st.input = cur;
    DenseForward<T>(cur, batch, cur_dim, params.tensor(HeadName(name, j, "weight")),
                    params.tensor(HeadName(name, j, "bias")), dims[j], st.relu,
                    st.output);
    cur = st.output;
    cur_dim = dims[j];
    stages.push_back(std::move(st));
  }
  out = std::move(cur);
}

// Accumulates the head's input gradient into grad_in.
template <typename T>
void BackHead(const char* name,
              const std::vector<typename ForwardCache<T>::DenseStage>& stages,
              const BasicParamVector<T>& params, BasicParamVector<T>& grads,
              int batch, std::vector<T> grad, std::vector<double>& grad_in) {
  for (size_t k = stages.size(); k-- > 0;) {
    DenseBackward<T>(stages[k], batch,
                     params.tensor(HeadName(name, k, "weight")),
                     grads.tensor(HeadName(name, k, "weight")),
                     grads.tensor(HeadName(name, k, "bias")), grad);
  }
  for (size_t i = 0; i < grad.size(); ++i) grad_in[i] += grad[i];
}

void CheckDims(const std::vector<int>& dims, const char* name, int last) {
  if (dims.empty() || dims.back() != last) {
    throw ValidationError(std::string("model: ") + name +
                          " must end in " + std::to_string(last) +
                          " output(s)");
  }
  for (int d : dims) {
    if (d < 1) {
      throw ValidationError(std::string("model: ") + name +
                            " has a non-positive width");
    }
  }
}

std::vector<int> IntList(const json& j, const char* key) {
  if (!j.is_array()) {
    throw ValidationError(std::string("model.") + key + " must be an array");
  }
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) {
      throw ValidationError(std::string("model.") + key +
                            " must contain integers");
    }
    out.push_back(v.get<int>());
  }
  return out;
}

int IntField(const json& j, const char* key) {
  if (!j.is_number_integer()) {
    throw ValidationError(std::string("model.") + key + " must be an integer");
  }
  return j.get<int>();
}

}  // namespace

void ModelSpec::Validate() const {
  if (input_height < kMinImageSide || input_width < kMinImageSide) {
    throw ValidationError("model: input must be at least 8x8");
  }
  if (conv_blocks.empty()) throw ValidationError("model: no conv blocks");
  Shape4 s{1, input_height, input_width, 3};
  for (size_t i = 0; i < conv_blocks.size(); ++i) {
    const auto& blk = conv_blocks[i];
    if (blk.out_channels < 1 || blk.stride < 1) {
      throw ValidationError("model: conv block " + std::to_string(i) +
                            " needs out_channels >= 1 and stride >= 1");
    }
    s = kernels::Conv3x3OutputShape(s, blk.out_channels, blk.stride);
    if (blk.pool) {
      if (s.h < 2 || s.w < 2) {
        throw ValidationError("model: conv block " + std::to_string(i) +
                              " pools a map smaller than 2x2");
      }
      s = kernels::MaxPool2x2OutputShape(s);
    }
  }
  if (embedding_dim < 1) throw ValidationError("model: embedding_dim < 1");
  CheckDims(head_real, "head_real", 1);
  CheckDims(head_dem, "head_dem", kDemographicClasses);
}

json ModelSpecToJson(const ModelSpec& spec) {
  json blocks = json::array();
  for (const auto& b : spec.conv_blocks) {
    blocks.push_back(
        {{"out_channels", b.out_channels}, {"stride", b.stride}, {"pool", b.pool}});
  }
  return {{"input_height", spec.input_height},
          {"input_width", spec.input_width},
          {"conv_blocks", blocks},
          {"embedding_dim", spec.embedding_dim},
          {"head_real", spec.head_real},
          {"head_dem", spec.head_dem}};
}

ModelSpec ModelSpecFromJson(const json& j, ModelSpec base) {
  if (!j.is_object()) throw ValidationError("model must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "input_height") {
      base.input_height = IntField(value, "input_height");
    } else if (key == "input_width") {
      base.input_width = IntField(value, "input_width");
    } else if (key == "embedding_dim") {
      base.embedding_dim = IntField(value, "embedding_dim");
    } else if (key == "head_real") {
      base.head_real = IntList(value, "head_real");
    } else if (key == "head_dem") {
      base.head_dem = IntList(value, "head_dem");
    } else if (key == "conv_blocks") {
      if (!value.is_array()) {
        throw ValidationError("model.conv_blocks must be an array");
      }
      base.conv_blocks.clear();
      for (const auto& b : value) {
        if (!b.is_object()) {
          throw ValidationError("model.conv_blocks entries must be objects");
        }
        ConvBlockSpec blk;
        for (const auto& [k, v] : b.items()) {
          if (k == "out_channels") {
            blk.out_channels = IntField(v, "conv_blocks.out_channels");
          } else if (k == "stride") {
            blk.stride = IntField(v, "conv_blocks.stride");
          } else if (k == "pool") {
            if (!v.is_boolean()) {
              throw ValidationError("model.conv_blocks.pool must be a boolean");
            }
            blk.pool = v.get<bool>();
          } else {
            throw ValidationError("unknown key model.conv_blocks[]." + k);
          }
        }
        base.conv_blocks.push_back(blk);
      }
    } else {
      throw ValidationError("unknown key model." + key);
    }
  }
  base.Validate();
  return base;
}

template <typename T>
void BasicBatch<T>::Validate() const {
  if (size < 1) throw ValidationError("batch must hold at least one sample");
  if (images.size() != static_cast<size_t>(size) * height * width * 3 ||
      labels_real.size() != static_cast<size_t>(size) ||
      group_ids.size() != static_cast<size_t>(size)) {
    throw ValidationError("batch buffers do not match its size");
  }
  for (int i = 0; i < size; ++i) {
    if (labels_real[i] != 0 && labels_real[i] != 1) {
      throw ValidationError("batch real/fake label must be 0 or 1");
    }
    if (group_ids[i] < 0 || group_ids[i] >= kNumGroups) {
      throw ValidationError("batch group id out of range");
    }
  }
}

Batch MakeBatch(std::span<const SampleRecord> records, ImageStore& images) {
  Batch batch;
  batch.size = static_cast<int>(records.size());
  for (const auto& r : records) {
    const ImageTensor& img = images.Get(r);
    if (batch.height == 0) {
      batch.height = img.height();
      batch.width = img.width();
    } else if (img.height() != batch.height || img.width() != batch.width) {
      throw ValidationError("image of sample \"" + r.id +
                            "\" differs in size from the rest of the batch");
    }
    batch.images.insert(batch.images.end(), img.values().begin(),
                        img.values().end());
    batch.labels_real.push_back(static_cast<int>(r.label));
    batch.group_ids.push_back(r.group.index());
  }
  batch.Validate();
  return batch;
}

template <typename T>
uint64_t ParamFingerprint(const BasicParamVector<T>& params) {
  const auto flat = params.flat();
  return Fnv1a64(std::string_view(reinterpret_cast<const char*>(flat.data()),
                                  flat.size() * sizeof(T)));
}

template <typename T>
BasicParamVector<T> InitParams(const ModelSpec& spec, uint64_t seed) {
  spec.Validate();
  Rng rng(seed);
  BasicParamVector<T> params;
  auto fill = [&rng](std::span<T> w, double fan_in, double fan_out) {
    const double a = std::sqrt(6.0 / (fan_in + fan_out));
    for (T& v : w) v = static_cast<T>(rng.Uniform(-a, a));
  };

  size_t in_c = 3;
  for (size_t i = 0; i < spec.conv_blocks.size(); ++i) {
    const size_t out_c = spec.conv_blocks[i].out_channels;
    fill(params.Add(ConvName(i, "weight"), {3, 3, in_c, out_c}), 9.0 * in_c,
         9.0 * out_c);
    params.Add(ConvName(i, "bias"), {out_c});
    in_c = out_c;
  }
  const size_t emb = spec.embedding_dim;
  fill(params.Add("embed.weight", {emb, in_c}), in_c, emb);
  params.Add("embed.bias", {emb});

  for (const auto* head : {"head_real", "head_dem"}) {
    const auto& dims =
        std::string_view(head) == "head_real" ? spec.head_real : spec.head_dem;
    size_t prev = emb;
    for (size_t j = 0; j < dims.size(); ++j) {
      const size_t out = dims[j];
      fill(params.Add(HeadName(head, j, "weight"), {out, prev}), prev, out);
      params.Add(HeadName(head, j, "bias"), {out});
      prev = out;
    }
  }
  return params;
}

template <typename T>
ForwardResult<T> Forward(const ModelSpec& spec,
                         const BasicParamVector<T>& params,
                         const BasicBatch<T>& batch) {
  batch.Validate();
  if (batch.height != spec.input_height || batch.width != spec.input_width) {
    throw ValidationError(
        "batch images are " + std::to_string(batch.height) + "x" +
        std::to_string(batch.width) + ", model expects " +
        std::to_string(spec.input_height) + "x" +
        std::to_string(spec.input_width));
  }
  const int n = batch.size;
  ForwardResult<T> result;
  ForwardCache<T>& cache = result.cache;
  cache.param_fingerprint = ParamFingerprint(params);
  cache.batch_size = n;

  // Pixels enter the backbone centered on zero, in [-1, 1].
  std::vector<T> cur(batch.images.size());
  for (size_t i = 0; i < cur.size(); ++i) {
    cur[i] = T(2) * batch.images[i] - T(1);
  }
  Shape4 shape{n, batch.height, batch.width, 3};
  for (size_t i = 0; i < spec.conv_blocks.size(); ++i) {
    const auto& blk = spec.conv_blocks[i];
    typename ForwardCache<T>::ConvStage st;
    st.in_shape = shape;
    st.out_shape = kernels::Conv3x3OutputShape(shape, blk.out_channels, blk.stride);
    st.activated.resize(st.out_shape.size());
    kernels::Conv3x3Forward<T>(cur, shape, params.tensor(ConvName(i, "weight")),
                               params.tensor(ConvName(i, "bias")), blk.stride,
                               st.activated);
    for (T& v : st.activated) {
      if (v < T(0)) v = T(0);
    }
    st.input = std::move(cur);
    shape = st.out_shape;
    if (blk.pool) {
      const Shape4 ps = kernels::MaxPool2x2OutputShape(shape);
      cur.assign(ps.size(), T(0));
      st.argmax.resize(ps.size());
      kernels::MaxPool2x2Forward<T>(st.activated, shape, cur, st.argmax);
      shape = ps;
    } else {
      cur = st.activated;
    }
    cache.conv.push_back(std::move(st));
  }

  // Global average pool, summing rows then columns.
  cache.gap_in_shape = shape;
  const int channels = shape.c;
  std::vector<T> pooled(static_cast<size_t>(n) * channels);
  const double inv_area = 1.0 / (static_cast<double>(shape.h) * shape.w);
  for (int b = 0; b < n; ++b) {
    for (int c = 0; c < channels; ++c) {
      double acc = 0.0;
      for (int y = 0; y < shape.h; ++y) {
        for (int x = 0; x < shape.w; ++x) {
          acc += cur[((static_cast<size_t>(b) * shape.h + y) * shape.w + x) *
                         channels +
                     c];
        }
      }
      pooled[static_cast<size_t>(b) * channels + c] =
          static_cast<T>(acc * inv_area);
    }
  }

  auto& embed = cache.embed;
  embed.in_dim = channels;
  embed.out_dim = spec.embedding_dim;
  embed.relu = true;
  embed.input = std::move(pooled);
  DenseForward<T>(embed.input, n, channels, params.tensor("embed.weight"),
                  params.tensor("embed.bias"), spec.embedding_dim, true,
                  embed.output);

  RunHead<T>("head_real", spec.head_real, params, embed.output, n,
             spec.embedding_dim, cache.head_real, result.fake_logits);
  RunHead<T>("head_dem", spec.head_dem, params, embed.output, n,
             spec.embedding_dim, cache.head_dem, result.dem_logits);
  return result;
}

template <typename T>
BasicParamVector<T> Backward(const ModelSpec& spec,
                             const BasicParamVector<T>& params,
                             const BasicBatch<T>& batch,
                             const LogitGrads& upstream,
                             const ForwardCache<T>& cache) {
  const int n = batch.size;
  if (cache.batch_size != n || cache.param_fingerprint != ParamFingerprint(params)) {
    throw ValidationError("stale forward cache: parameters or batch changed");
  }
  if (upstream.fake.size() != static_cast<size_t>(n) ||
      upstream.dem.size() != static_cast<size_t>(n) * kDemographicClasses) {
    throw ValidationError("upstream gradient shape does not match the batch");
  }

  BasicParamVector<T> grads = params.ZerosLike();
  const int emb = spec.embedding_dim;
  std::vector<double> grad_embed(static_cast<size_t>(n) * emb, 0.0);
  BackHead<T>("head_real", cache.head_real, params, grads, n,
              std::vector<T>(upstream.fake.begin(), upstream.fake.end()),
              grad_embed);
  BackHead<T>("head_dem", cache.head_dem, params, grads, n,
              std::vector<T>(upstream.dem.begin(), upstream.dem.end()),
              grad_embed);

  std::vector<T> grad(grad_embed.begin(), grad_embed.end());
  DenseBackward<T>(cache.embed, n, params.tensor("embed.weight"),
                   grads.tensor("embed.weight"), grads.tensor("embed.bias"),
                   grad);

  // Undo the global average pool.
  const Shape4 gs = cache.gap_in_shape;
  const double inv_area = 1.0 / (static_cast<double>(gs.h) * gs.w);
  std::vector<T> spatial(gs.size());
  for (int b = 0; b < n; ++b) {
    for (int y = 0; y < gs.h; ++y) {
      for (int x = 0; x < gs.w; ++x) {
        for (int c = 0; c < gs.c; ++c) {
          spatial[((static_cast<size_t>(b) * gs.h + y) * gs.w + x) * gs.c + c] =
              static_cast<T>(grad[static_cast<size_t>(b) * gs.c + c] * inv_area);
        }
      }
    }
  }
  grad = std::move(spatial);

  for (size_t i = cache.conv.size(); i-- > 0;) {
    const auto& st = cache.conv[i];
    const auto& blk = spec.conv_blocks[i];
    if (blk.pool) {
      std::vector<T> unpooled(st.out_shape.size());
      kernels::MaxPool2x2Backward<T>(grad, st.argmax, unpooled);
      grad = std::move(unpooled);
    }
    for (size_t k = 0; k < grad.size(); ++k) {
      if (!(st.activated[k] > T(0))) grad[k] = T(0);
    }
    kernels::Conv3x3BackwardParams<T>(st.input, st.in_shape, grad,
                                      blk.out_channels, blk.stride,
                                      grads.tensor(ConvName(i, "weight")),
                                      grads.tensor(ConvName(i, "bias")));
    if (i > 0) {
      std::vector<T> grad_in(st.in_shape.size());
      kernels::Conv3x3BackwardInput<T>(grad, st.in_shape,
                                       params.tensor(ConvName(i, "weight")),
                                       blk.out_channels, blk.stride, grad_in);
      grad = std::move(grad_in);
    }
  }
  return grads;
}

template struct BasicBatch<float>;
template struct BasicBatch<double>;

#define FFORGE_INSTANTIATE_MODEL(T)                                          \
  template uint64_t ParamFingerprint<T>(const BasicParamVector<T>&);         \
  template BasicParamVector<T> InitParams<T>(const ModelSpec&, uint64_t);    \
  template ForwardResult<T> Forward<T>(const ModelSpec&,                     \
                                       const BasicParamVector<T>&,           \
                                       const BasicBatch<T>&);                \
  template BasicParamVector<T> Backward<T>(                                  \
      const ModelSpec&, const BasicParamVector<T>&, const BasicBatch<T>&,    \
      const LogitGrads&, const ForwardCache<T>&);

FFORGE_INSTANTIATE_MODEL(float)
FFORGE_INSTANTIATE_MODEL(double)

#undef FFORGE_INSTANTIATE_MODEL

}  // namespace fforge
