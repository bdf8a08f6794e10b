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

#ifndef FFORGE_IMAGE_STORE_H_
#define FFORGE_IMAGE_STORE_H_

#include <filesystem>
#include <string>
#include <unordered_map>

#include "fforge/image.h"
#include "fforge/manifest.h"

namespace fforge {

// Images keyed by sample id. Misses are loaded from disk, resolving the
// record's image_path against root. Not thread-safe; fetch on one thread and
// hand out const references.
class ImageStore {
 public:
  ImageStore() = default;
  explicit ImageStore(std::filesystem::path root) : root_(std::move(root)) {}

  const ImageTensor& Get(const SampleRecord& record);
  void Put(const std::string& id, ImageTensor image);
  bool Contains(const std::string& id) const { return images_.contains(id); }
  size_t size() const { return images_.size(); }
  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path root_;
  std::unordered_map<std::string, ImageTensor> images_;
};

}  // namespace fforge

#endif  // FFORGE_IMAGE_STORE_H_
