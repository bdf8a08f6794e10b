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

#include "fforge/config.h"

#include <cmath>
#include <fstream>
#include <utility>
#include <vector>

#include "fforge/errors.h"

namespace fforge {
namespace {

using nlohmann::json;

void RequireObject(const json& j, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + " must be a JSON object");
}

std::string StringField(const json& v, const std::string& key) {
  if (!v.is_string()) throw ValidationError(key + " must be a string");
  return v.get<std::string>();
}

double NumberField(const json& v, const std::string& key) {
  if (!v.is_number()) throw ValidationError(key + " must be a number");
  return v.get<double>();
}

Range RangeField(const json& v, const std::string& key) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
      !v[1].is_number()) {
    throw ValidationError(key + " must be a [lo, hi] pair of numbers");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

std::vector<std::pair<std::string, Range SynthRanges::*>> RangeKeys() {
  return {{"scale", &SynthRanges::scale},
          {"rotation_deg", &SynthRanges::rotation_deg},
          {"brightness", &SynthRanges::brightness},
          {"contrast", &SynthRanges::contrast},
          {"mask_center", &SynthRanges::mask_center},
          {"mask_half_extent", &SynthRanges::mask_half_extent},
          {"feather_px", &SynthRanges::feather_px},
          {"blend_ratio", &SynthRanges::blend_ratio}};
}

std::vector<std::pair<std::string, std::string PathConfig::*>> PathKeys() {
  return {{"real_manifest", &PathConfig::real_manifest},
          {"dataset_manifest", &PathConfig::dataset_manifest},
          {"checkpoint", &PathConfig::checkpoint},
          {"predictions", &PathConfig::predictions},
          {"out_dir", &PathConfig::out_dir}};
}

PathConfig PathsFromJson(const json& j) {
  RequireObject(j, "paths");
  PathConfig p;
  const auto keys = PathKeys();
  for (const auto& [key, v] : j.items()) {
    bool found = false;
    for (const auto& [name, member] : keys) {
      if (key == name) {
        p.*member = StringField(v, "paths." + key);
        found = true;
      }
    }
    if (!found) throw ValidationError("unknown key paths." + key);
  }
  return p;
}

SynthRanges SynthFromJson(const json& j) {
  RequireObject(j, "synth");
  SynthRanges r;
  const auto keys = RangeKeys();
  for (const auto& [key, v] : j.items()) {
    bool found = false;
    for (const auto& [name, member] : keys) {
      if (key == name) {
        r.*member = RangeField(v, "synth." + key);
        found = true;
      }
    }
    if (!found) throw ValidationError("unknown key synth." + key);
  }
  r.Validate();
  return r;
}

BalancePolicy BalanceFromJson(const json& j) {
  RequireObject(j, "balance");
  BalancePolicy b;
  for (const auto& [key, v] : j.items()) {
    if (key == "target") {
      const std::string t = StringField(v, "balance.target");
      if (t == "max_group") {
        b.target = BalancePolicy::Target::kMaxGroup;
      } else if (t == "explicit_count") {
        b.target = BalancePolicy::Target::kExplicitCount;
      } else {
        throw ValidationError("unknown balance.target \"" + t +
                              "\" (expected max_group or explicit_count)");
      }
    } else if (key == "explicit_count") {
      if (!v.is_number_integer() || v.get<int64_t>() < 0) {
        throw ValidationError(
            "balance.explicit_count must be a non-negative integer");
      }
      b.explicit_count = v.get<size_t>();
    } else {
      throw ValidationError("unknown key balance." + key);
    }
  }
  return b;
}

EvalConfig EvalFromJson(const json& j) {
  RequireObject(j, "eval");
  EvalConfig e;
  for (const auto& [key, v] : j.items()) {
    if (key == "threshold") {
      e.threshold = NumberField(v, "eval.threshold");
    } else if (key == "dataset_name") {
      e.dataset_name = StringField(v, "eval.dataset_name");
    } else {
      throw ValidationError("unknown key eval." + key);
    }
  }
  return e;
}

}  // namespace

void RunConfig::Validate() const {
  model.Validate();
  train.Validate();
  synth.Validate();
  if (balance.target == BalancePolicy::Target::kExplicitCount &&
      balance.explicit_count == 0) {
    throw ValidationError(
        "balance.explicit_count must be >= 1 when target is explicit_count");
  }
  if (!(eval.threshold >= 0.0 && eval.threshold <= 1.0)) {
    throw ValidationError("eval.threshold must lie in [0, 1]");
  }
}

RunConfig RunConfigFromJson(const json& j) {
  RequireObject(j, "config");
  RunConfig c;
  for (const auto& [key, v] : j.items()) {
    if (key == "seed") {
      if (!v.is_number_unsigned() &&
          !(v.is_number_integer() && v.get<int64_t>() >= 0)) {
        throw ValidationError("seed must be a non-negative integer");
      }
      c.seed = v.get<uint64_t>();
    } else if (key == "paths") {
      c.paths = PathsFromJson(v);
    } else if (key == "model") {
      c.model = ModelSpecFromJson(v);
    } else if (key == "train") {
      c.train = SamConfigFromJson(v);
    } else if (key == "synth") {
      c.synth = SynthFromJson(v);
    } else if (key == "balance") {
      c.balance = BalanceFromJson(v);
    } else if (key == "eval") {
      c.eval = EvalFromJson(v);
    } else {
      throw ValidationError("unknown config key " + key);
    }
  }
  c.train.seed = c.seed;
  c.Validate();
  return c;
}

json RunConfigToJson(const RunConfig& c) {
  json paths = json::object();
  for (const auto& [name, member] : PathKeys()) paths[name] = c.paths.*member;
  json synth = json::object();
  for (const auto& [name, member] : RangeKeys()) {
    synth[name] = {(c.synth.*member).lo, (c.synth.*member).hi};
  }
  const bool explicit_target =
      c.balance.target == BalancePolicy::Target::kExplicitCount;
  return {{"seed", c.seed},
          {"paths", paths},
          {"model", ModelSpecToJson(c.model)},
          {"train", SamConfigToJson(c.train)},
          {"synth", synth},
          {"balance",
           {{"target", explicit_target ? "explicit_count" : "max_group"},
            {"explicit_count", c.balance.explicit_count}}},
          {"eval",
           {{"threshold", c.eval.threshold},
            {"dataset_name", c.eval.dataset_name}}}};
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError("config " + path.string() + " is not valid JSON: " +
                          e.what());
  }
  try {
    return RunConfigFromJson(j);
  } catch (const ValidationError& e) {
    throw ValidationError("config " + path.string() + ": " + e.what());
  }
}

}  // namespace fforge
