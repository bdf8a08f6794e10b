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

#include "fforge/params.h"

#include <cmath>
#include <functional>
#include <numeric>

#include "fforge/errors.h"

namespace fforge {

template <typename T>
std::span<T> BasicParamVector<T>::Add(const std::string& name,
                                      std::vector<size_t> shape) {
  if (Contains(name)) {
    throw ValidationError("duplicate parameter name \"" + name + "\"");
  }
  const size_t size = std::accumulate(shape.begin(), shape.end(), size_t{1},
                                      std::multiplies<>());
  entries_.push_back({name, std::move(shape), data_.size(), size});
  data_.resize(data_.size() + size, T(0));
  return tensor(entries_.size() - 1);
}

template <typename T>
const typename BasicParamVector<T>::Entry& BasicParamVector<T>::entry(
    const std::string& name) const {
  for (const auto& e : entries_) {
    if (e.name == name) return e;
  }
  throw ValidationError("unknown parameter \"" + name + "\"");
}

template <typename T>
bool BasicParamVector<T>::Contains(const std::string& name) const {
  for (const auto& e : entries_) {
    if (e.name == name) return true;
  }
  return false;
}

template <typename T>
std::span<T> BasicParamVector<T>::tensor(const std::string& name) {
  const Entry& e = entry(name);
  return std::span<T>(data_).subspan(e.offset, e.size);
}

template <typename T>
std::span<const T> BasicParamVector<T>::tensor(const std::string& name) const {
  const Entry& e = entry(name);
  return std::span<const T>(data_).subspan(e.offset, e.size);
}

template <typename T>
std::span<T> BasicParamVector<T>::tensor(size_t index) {
  const Entry& e = entries_.at(index);
  return std::span<T>(data_).subspan(e.offset, e.size);
}

template <typename T>
std::span<const T> BasicParamVector<T>::tensor(size_t index) const {
  const Entry& e = entries_.at(index);
  return std::span<const T>(data_).subspan(e.offset, e.size);
}

template <typename T>
BasicParamVector<T> BasicParamVector<T>::Unflatten(
    const BasicParamVector& layout, std::span<const T> flat) {
  if (flat.size() != layout.total_dim()) {
    throw ValidationError("unflatten: expected " +
                          std::to_string(layout.total_dim()) +
                          " values, got " + std::to_string(flat.size()));
  }
  BasicParamVector out = layout;
  std::copy(flat.begin(), flat.end(), out.data_.begin());
  return out;
}

template <typename T>
BasicParamVector<T> BasicParamVector<T>::ZerosLike() const {
  BasicParamVector out = *this;
  std::fill(out.data_.begin(), out.data_.end(), T(0));
  return out;
}

template <typename T>
double BasicParamVector<T>::Norm() const {
  double sum = 0.0;
  for (T v : data_) sum += static_cast<double>(v) * static_cast<double>(v);
  return std::sqrt(sum);
}

template <typename T>
bool BasicParamVector<T>::AllFinite() const {
  for (T v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

template class BasicParamVector<float>;
template class BasicParamVector<double>;

}  // namespace fforge
