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

#ifndef FFORGE_PREDICT_H_
#define FFORGE_PREDICT_H_

#include <filesystem>
#include <iosfwd>
#include <span>

#include "fforge/image_store.h"
#include "fforge/manifest.h"
#include "fforge/metrics.h"
#include "fforge/model.h"

namespace fforge {

// score = sigmoid(fake logit) for each record, in record order. Inference
// runs in chunks of `chunk` images.
PredictionSet PredictRecords(const ModelSpec& spec, const ParamVector& params,
                             std::span<const SampleRecord> records,
                             ImageStore& images, int chunk = 64);

// Scores the manifest's test split. Throws ValidationError when it is empty.
PredictionSet Predict(const ModelSpec& spec, const ParamVector& params,
                      const DatasetManifest& manifest, ImageStore& images);

// CSV with header "sample_id,score,true_label,gender,race"; scores are
// written with 17 significant digits so they read back exactly. Ids must not
// contain commas, quotes or line breaks.
void WritePredictionsCsv(const PredictionSet& preds, std::ostream& out);
void WritePredictionsCsv(const PredictionSet& preds,
                         const std::filesystem::path& path);
PredictionSet ReadPredictionsCsv(std::istream& in);
PredictionSet ReadPredictionsCsv(const std::filesystem::path& path);

}  // namespace fforge

#endif  // FFORGE_PREDICT_H_
