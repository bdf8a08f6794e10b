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

#ifndef FFORGE_SYNTH_H_
#define FFORGE_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>

#include "fforge/blend.h"
#include "fforge/image.h"
#include "fforge/image_store.h"
#include "fforge/manifest.h"
#include "fforge/transform.h"

namespace fforge {

struct Range {
  double lo = 0.0;
  double hi = 0.0;

  bool Contains(double v) const { return v >= lo && v <= hi; }
};

// Sampling ranges for self-blend parameters. Defaults keep faces plausible
// and guarantee a visible blend (ratio >= 0.3).
struct SynthRanges {
  Range scale{0.9, 1.1};
  Range rotation_deg{-10.0, 10.0};
  Range brightness{-0.1, 0.1};
  Range contrast{0.8, 1.2};
  Range mask_center{0.2, 0.8};
  Range mask_half_extent{0.1, 0.4};
  Range feather_px{2.0, 8.0};
  Range blend_ratio{0.3, 1.0};

  // Throws ValidationError for inverted or out-of-domain ranges.
  void Validate() const;
};

// Both specs are drawn from one generator seeded with `seed`.
struct SelfBlendParams {
  TransformSpec transform;
  BlendSpec blend;
};
SelfBlendParams SampleSelfBlendParams(const SynthRanges& ranges, uint64_t seed);

struct SynthSample {
  SampleRecord record;
  ImageTensor image;
};

// "{source_id}#sbi{seed as 16 hex digits}".
std::string SyntheticId(const std::string& source_id, uint64_t seed);

// Relative path a sample's image is written to: "images/<stem>.png", where
// the stem is the id with characters outside [A-Za-z0-9._-] replaced and a
// hash suffix appended when anything was replaced.
std::string CanonicalImagePath(const std::string& id);

// Self-blended fake for a real sample: transform, soft mask, blend. The new
// record keeps the group and split of the source. Pure function of
// (sample, image, seed, ranges). Throws ValidationError for fake input.
SynthSample GenerateSelfBlended(const SampleRecord& sample,
                                const ImageTensor& image, uint64_t seed,
                                const SynthRanges& ranges = {});

struct BalancePolicy {
  enum class Target { kMaxGroup, kExplicitCount };
  Target target = Target::kMaxGroup;
  size_t explicit_count = 0;
};

// One synthetic fake per real record (seeds DeriveSeed(seed, id, 0)). Output
// holds every input record followed by the fakes in input order. Synthetic
// images are added to `images`.
DatasetManifest SynthesizePairs(const DatasetManifest& manifest,
                                ImageStore& images, uint64_t seed,
                                const SynthRanges& ranges = {});

// Balances the eight groups. With N = max real count per group (or the
// explicit count), a group holding n reals keeps all of them and receives
// 2N - n synthetic fakes: one per real, then extra rounds over the same reals
// with fresh seeds. Every group ends with 2N records. Output order: input
// records, then fakes grouped by group index. Synthetic images are added to
// `images`; generation runs in parallel with per-sample seeds, so the result
// does not depend on scheduling.
//
// Throws ValidationError if any record is fake, any group has no real
// sample, or the explicit count is below the largest group.
DatasetManifest BalanceDataset(const DatasetManifest& manifest,
                               ImageStore& images, const BalancePolicy& policy,
                               uint64_t seed, const SynthRanges& ranges = {});

// Writes every image as PNG under out_dir/images and the manifest as
// out_dir/manifest.jsonl, with image paths rewritten to CanonicalImagePath.
// Returns the manifest as written.
DatasetManifest WriteDataset(const DatasetManifest& manifest,
                             ImageStore& images,
                             const std::filesystem::path& out_dir);

}  // namespace fforge

#endif  // FFORGE_SYNTH_H_
