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

#include "fforge/image_store.h"

#include "fforge/errors.h"
#include "fforge/image_io.h"

namespace fforge {

const ImageTensor& ImageStore::Get(const SampleRecord& record) {
  if (auto it = images_.find(record.id); it != images_.end()) {
    return it->second;
  }
  const std::filesystem::path path = root_ / record.image_path;
  if (!std::filesystem::exists(path)) {
    throw IoError("missing image file for sample \"" + record.id +
                  "\": " + path.string());
  }
  return images_.emplace(record.id, ReadPng(path)).first->second;
}

void ImageStore::Put(const std::string& id, ImageTensor image) {
  images_.insert_or_assign(id, std::move(image));
}

}  // namespace fforge
