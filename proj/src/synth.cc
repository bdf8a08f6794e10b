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

#include "fforge/synth.h"

#include <cinttypes>
#include <cstdio>
#include <exception>
#include <optional>
#include <unordered_set>
#include <vector>

#include "fforge/errors.h"
#include "fforge/image_io.h"
#include "fforge/rng.h"

namespace fforge {
namespace {

std::string Hex(uint64_t v, int digits) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%0*" PRIx64, digits, v);
  return buf;
}

void CheckRange(const Range& r, const char* name, double lo_bound,
                double hi_bound) {
  if (!(r.lo <= r.hi) || r.lo < lo_bound || r.hi > hi_bound) {
    throw ValidationError(std::string("synth range \"") + name +
                          "\" is inverted or outside its domain");
  }
}

struct Job {
  size_t source;  // index into the input records
  uint64_t seed;
};

// Runs the jobs in parallel; results are indexed like `jobs`.
std::vector<SynthSample> RunJobs(const std::vector<SampleRecord>& records,
                                 const std::vector<const ImageTensor*>& sources,
                                 const std::vector<Job>& jobs,
                                 const SynthRanges& ranges) {
  std::vector<std::optional<SynthSample>> slots(jobs.size());
  std::exception_ptr error;
  const auto n = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      const Job& job = jobs[i];
      slots[i] = GenerateSelfBlended(records[job.source], *sources[job.source],
                                     job.seed, ranges);
    } catch (...) {
#pragma omp critical(fforge_synth_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  std::vector<SynthSample> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<const ImageTensor*> FetchSources(
    const std::vector<SampleRecord>& records, ImageStore& images) {
  std::vector<const ImageTensor*> sources;
  sources.reserve(records.size());
  for (const auto& r : records) sources.push_back(&images.Get(r));
  return sources;
}

DatasetManifest Assemble(const DatasetManifest& input,
                         std::vector<SynthSample> fakes, ImageStore& images) {
  std::vector<SampleRecord> records = input.records();
  records.reserve(records.size() + fakes.size());
  for (auto& f : fakes) {
    records.push_back(f.record);
    images.Put(f.record.id, std::move(f.image));
  }
  return DatasetManifest(input.source_name(), std::move(records));
}

}  // namespace

void SynthRanges::Validate() const {
  CheckRange(scale, "scale", 1e-3, 1e3);
  CheckRange(rotation_deg, "rotation_deg", -180.0, 180.0);
  CheckRange(brightness, "brightness", -1.0, 1.0);
  CheckRange(contrast, "contrast", 0.0, 10.0);
  CheckRange(mask_center, "mask_center", 0.0, 1.0);
  CheckRange(mask_half_extent, "mask_half_extent", 0.0, 1.0);
  CheckRange(feather_px, "feather_px", 0.0, 1e4);
  CheckRange(blend_ratio, "blend_ratio", 0.0, 1.0);
}

SelfBlendParams SampleSelfBlendParams(const SynthRanges& ranges,
                                      uint64_t seed) {
  Rng rng(seed);
  SelfBlendParams p;
  p.transform.scale_factor = rng.Uniform(ranges.scale.lo, ranges.scale.hi);
  p.transform.rotation_deg =
      rng.Uniform(ranges.rotation_deg.lo, ranges.rotation_deg.hi);
  p.transform.brightness_delta =
      rng.Uniform(ranges.brightness.lo, ranges.brightness.hi);
  p.transform.contrast_factor =
      rng.Uniform(ranges.contrast.lo, ranges.contrast.hi);
  p.transform.seed = seed;

  p.blend.center_row = rng.Uniform(ranges.mask_center.lo, ranges.mask_center.hi);
  p.blend.center_col = rng.Uniform(ranges.mask_center.lo, ranges.mask_center.hi);
  p.blend.half_height =
      rng.Uniform(ranges.mask_half_extent.lo, ranges.mask_half_extent.hi);
  p.blend.half_width =
      rng.Uniform(ranges.mask_half_extent.lo, ranges.mask_half_extent.hi);
  p.blend.feather_radius =
      rng.Uniform(ranges.feather_px.lo, ranges.feather_px.hi);
  p.blend.blend_ratio =
      rng.Uniform(ranges.blend_ratio.lo, ranges.blend_ratio.hi);
  p.blend.seed = seed;
  return p;
}

std::string SyntheticId(const std::string& source_id, uint64_t seed) {
  return source_id + "#sbi" + Hex(seed, 16);
}

std::string CanonicalImagePath(const std::string& id) {
  std::string stem = id;
  bool replaced = false;
  for (char& c : stem) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
    if (!ok) {
      c = '_';
      replaced = true;
    }
  }
  if (replaced || stem.empty() || stem.front() == '.') {
    stem += "-" + Hex(Fnv1a64(id) & 0xffffffffULL, 8);
  }
  return "images/" + stem + ".png";
}

SynthSample GenerateSelfBlended(const SampleRecord& sample,
                                const ImageTensor& image, uint64_t seed,
                                const SynthRanges& ranges) {
  if (sample.label != Label::kReal) {
    throw ValidationError("cannot self-blend sample \"" + sample.id +
                          "\": it is already fake");
  }
  const SelfBlendParams params = SampleSelfBlendParams(ranges, seed);
  const ImageTensor transformed = ApplyTransform(image, params.transform);
  const Mask mask = MakeBlendMask(image.height(), image.width(), params.blend);
  ImageTensor blended =
      BlendImages(image, transformed, mask, params.blend.blend_ratio);

  SampleRecord record;
  record.id = SyntheticId(sample.id, seed);
  record.image_path = CanonicalImagePath(record.id);
  record.label = Label::kFake;
  record.group = sample.group;
  record.provenance = Provenance::kSynthetic;
  record.split = sample.split;
  return {std::move(record), std::move(blended)};
}

DatasetManifest SynthesizePairs(const DatasetManifest& manifest,
                                ImageStore& images, uint64_t seed,
                                const SynthRanges& ranges) {
  ranges.Validate();
  const auto& records = manifest.records();
  std::vector<Job> jobs;
  for (size_t i = 0; i < records.size(); ++i) {
    if (records[i].label != Label::kReal) {
      throw ValidationError("synth input must contain only real samples; \"" +
                            records[i].id + "\" is fake");
    }
    jobs.push_back({i, DeriveSeed(seed, records[i].id, 0)});
  }
  const auto sources = FetchSources(records, images);
  return Assemble(manifest, RunJobs(records, sources, jobs, ranges), images);
}

DatasetManifest BalanceDataset(const DatasetManifest& manifest,
                               ImageStore& images, const BalancePolicy& policy,
                               uint64_t seed, const SynthRanges& ranges) {
  ranges.Validate();
  const auto& records = manifest.records();
  std::array<std::vector<size_t>, kNumGroups> reals;
  for (size_t i = 0; i < records.size(); ++i) {
    if (records[i].label != Label::kReal) {
      throw ValidationError("balance input must contain only real samples; \"" +
                            records[i].id + "\" is fake");
    }
    reals[records[i].group.index()].push_back(i);
  }

  size_t largest = 0;
  for (const auto& g : AllGroups()) {
    if (reals[g.index()].empty()) {
      throw ValidationError("group " + g.code() +
                            " has no real samples; cannot synthesize for it");
    }
    largest = std::max(largest, reals[g.index()].size());
  }
  size_t target = largest;
  if (policy.target == BalancePolicy::Target::kExplicitCount) {
    if (policy.explicit_count < largest) {
      throw ValidationError(
          "explicit_count " + std::to_string(policy.explicit_count) +
          " is below the largest group's real count " +
          std::to_string(largest));
    }
    target = policy.explicit_count;
  }

  std::vector<Job> jobs;
  for (const auto& g : AllGroups()) {
    const auto& members = reals[g.index()];
    const size_t n = members.size();
    const size_t fakes = 2 * target - n;
    for (size_t j = 0; j < fakes; ++j) {
      const size_t source = members[j % n];
      jobs.push_back({source, DeriveSeed(seed, records[source].id, j / n)});
    }
  }

  const auto sources = FetchSources(records, images);
  auto fakes = RunJobs(records, sources, jobs, ranges);
  std::unordered_set<std::string> ids;
  for (const auto& r : records) ids.insert(r.id);
  for (const auto& f : fakes) {
    if (!ids.insert(f.record.id).second) {
      throw ValidationError("synthetic id collides with an existing id: " +
                            f.record.id);
    }
  }
  return Assemble(manifest, std::move(fakes), images);
}

DatasetManifest WriteDataset(const DatasetManifest& manifest,
                             ImageStore& images,
                             const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir / "images", ec);
  if (ec) {
    throw IoError("cannot create " + (out_dir / "images").string() + ": " +
                  ec.message());
  }
  std::vector<SampleRecord> written;
  written.reserve(manifest.size());
  std::unordered_set<std::string> paths;
  for (const auto& r : manifest.records()) {
    SampleRecord out = r;
    out.image_path = CanonicalImagePath(r.id);
    if (!paths.insert(out.image_path).second) {
      throw ValidationError("two sample ids map to image file " +
                            out.image_path);
    }
    WritePng(images.Get(r), out_dir / out.image_path);
    written.push_back(std::move(out));
  }
  DatasetManifest result(manifest.source_name(), std::move(written));
  WriteManifest(result, out_dir / "manifest.jsonl");
  return result;
}

}  // namespace fforge
