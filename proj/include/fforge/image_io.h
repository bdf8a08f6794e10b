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

#ifndef FFORGE_IMAGE_IO_H_
#define FFORGE_IMAGE_IO_H_

#include <filesystem>

#include "fforge/image.h"

namespace fforge {

// Reads an 8-bit PNG (gray, RGB or with alpha; alpha is dropped) and maps
// values to [0, 1] by dividing by 255. Throws IoError.
ImageTensor ReadPng(const std::filesystem::path& path);

// Writes an 8-bit RGB PNG, rounding value*255 to nearest. Output bytes depend
// only on the pixel values (no timestamps or text chunks).
void WritePng(const ImageTensor& image, const std::filesystem::path& path);

}  // namespace fforge

#endif  // FFORGE_IMAGE_IO_H_
