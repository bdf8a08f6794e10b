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

#include "fforge/checkpoint.h"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "fforge/errors.h"

namespace fforge {
namespace {

using nlohmann::json;

constexpr size_t kMagicLen = sizeof(kCheckpointMagic) - 1;

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

void AppendU32(std::string& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

uint32_t ReadU32(const std::string& in, size_t pos) {
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<uint32_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  }
  return v;
}

}  // namespace

std::string SerializeCheckpoint(const Checkpoint& checkpoint) {
  json tensors = json::array();
  for (const auto& e : checkpoint.params.entries()) {
    tensors.push_back({{"name", e.name}, {"shape", e.shape}});
  }
  const json header = {{"model", ModelSpecToJson(checkpoint.spec)},
                       {"tensors", tensors},
                       {"effective_config", checkpoint.effective_config}};
  const std::string header_text = header.dump();

  std::string out(kCheckpointMagic, kMagicLen);
  AppendU32(out, static_cast<uint32_t>(header_text.size()));
  out += header_text;
  const auto flat = checkpoint.params.flat();
  out.append(reinterpret_cast<const char*>(flat.data()),
             flat.size() * sizeof(float));
  return out;
}

Checkpoint DeserializeCheckpoint(const std::string& bytes) {
  if (bytes.size() < kMagicLen + 4 ||
      bytes.compare(0, kMagicLen, kCheckpointMagic) != 0) {
    throw ValidationError("not a checkpoint: bad magic");
  }
  const uint32_t header_len = ReadU32(bytes, kMagicLen);
  const size_t data_pos = kMagicLen + 4 + static_cast<size_t>(header_len);
  if (data_pos > bytes.size()) {
    throw ValidationError("checkpoint header is truncated");
  }
  json header;
  try {
    header = json::parse(bytes.substr(kMagicLen + 4, header_len));
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("checkpoint header: ") + e.what());
  }
  if (!header.is_object() || !header.contains("model") ||
      !header.contains("tensors") || !header["tensors"].is_array()) {
    throw ValidationError("checkpoint header lacks model or tensors");
  }

  Checkpoint ckpt;
  ckpt.spec = ModelSpecFromJson(header["model"]);
  ckpt.effective_config = header.value("effective_config", json());
  // The spec fixes names and shapes; the file must agree with it exactly.
  ckpt.params = InitParams<float>(ckpt.spec, 0);
  const auto& entries = ckpt.params.entries();
  const json& tensors = header["tensors"];
  if (tensors.size() != entries.size()) {
    throw ValidationError("checkpoint tensor count does not match the model");
  }
  for (size_t i = 0; i < entries.size(); ++i) {
    const json& t = tensors[i];
    bool ok = false;
    try {
      ok = t.is_object() && t.value("name", "") == entries[i].name &&
           t.contains("shape") &&
           t["shape"].get<std::vector<size_t>>() == entries[i].shape;
    } catch (const json::exception&) {
      ok = false;
    }
    if (!ok) {
      throw ValidationError("checkpoint tensor " + std::to_string(i) +
                            " does not match \"" + entries[i].name + "\"");
    }
  }
  const size_t expected = ckpt.params.total_dim() * sizeof(float);
  if (bytes.size() - data_pos != expected) {
    throw ValidationError("checkpoint payload is " +
                          std::to_string(bytes.size() - data_pos) +
                          " bytes, expected " + std::to_string(expected));
  }
  auto flat = ckpt.params.flat();
  std::memcpy(flat.data(), bytes.data() + data_pos, expected);
  if (!ckpt.params.AllFinite()) {
    throw ValidationError("checkpoint contains non-finite parameters");
  }
  return ckpt;
}

void SaveCheckpoint(const Checkpoint& checkpoint,
                    const std::filesystem::path& path) {
  const std::string bytes = SerializeCheckpoint(checkpoint);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open checkpoint " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  try {
    return DeserializeCheckpoint(bytes);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace fforge
