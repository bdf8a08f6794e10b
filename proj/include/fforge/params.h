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

#ifndef FFORGE_PARAMS_H_
#define FFORGE_PARAMS_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fforge {

// Ordered collection of named tensors backed by one flat buffer. Flattening
// is the identity on the buffer, so flatten/unflatten preserve order by
// construction.
template <typename T>
class BasicParamVector {
 public:
  struct Entry {
    std::string name;
    std::vector<size_t> shape;
    size_t offset = 0;
    size_t size = 0;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  BasicParamVector() = default;

  // Appends a zero-filled tensor. Throws ValidationError on duplicate names.
  // The returned span is invalidated by the next Add.
  std::span<T> Add(const std::string& name, std::vector<size_t> shape);

  const std::vector<Entry>& entries() const { return entries_; }
  const Entry& entry(const std::string& name) const;
  bool Contains(const std::string& name) const;

  std::span<T> tensor(const std::string& name);
  std::span<const T> tensor(const std::string& name) const;
  std::span<T> tensor(size_t index);
  std::span<const T> tensor(size_t index) const;

  std::span<T> flat() { return data_; }
  std::span<const T> flat() const { return data_; }
  size_t total_dim() const { return data_.size(); }

  // Same names and shapes as `layout`, values taken from `flat`.
  static BasicParamVector Unflatten(const BasicParamVector& layout,
                                    std::span<const T> flat);

  // Same layout, all zeros.
  BasicParamVector ZerosLike() const;
  bool SameLayout(const BasicParamVector& other) const {
    return entries_ == other.entries_;
  }

  template <typename U>
  BasicParamVector<U> Cast() const {
    BasicParamVector<U> out;
    for (size_t i = 0; i < entries_.size(); ++i) {
      auto dst = out.Add(entries_[i].name, entries_[i].shape);
      auto src = tensor(i);
      for (size_t j = 0; j < src.size(); ++j) dst[j] = static_cast<U>(src[j]);
    }
    return out;
  }

  // Euclidean norm accumulated in double, left to right.
  double Norm() const;
  bool AllFinite() const;

  friend bool operator==(const BasicParamVector&,
                         const BasicParamVector&) = default;

 private:
  std::vector<Entry> entries_;
  std::vector<T> data_;
};

using ParamVector = BasicParamVector<float>;

}  // namespace fforge

#endif  // FFORGE_PARAMS_H_
