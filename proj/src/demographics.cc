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

#include "fforge/demographics.h"

#include "fforge/errors.h"

namespace fforge {

DemographicGroup DemographicGroup::FromIndex(int index) {
  if (index < 0 || index >= kNumGroups) {
    throw ValidationError("demographic group index out of range: " +
                          std::to_string(index));
  }
  return {static_cast<Gender>(index % kNumGenders),
          static_cast<Race>(index / kNumGenders)};
}

std::string DemographicGroup::code() const {
  static constexpr char kRace[] = {'B', 'W', 'A', 'O'};
  static constexpr char kGender[] = {'M', 'F'};
  return {kRace[static_cast<int>(race)], '-',
          kGender[static_cast<int>(gender)]};
}

const std::array<DemographicGroup, kNumGroups>& AllGroups() {
  static const auto groups = [] {
    std::array<DemographicGroup, kNumGroups> all;
    for (int k = 0; k < kNumGroups; ++k) all[k] = DemographicGroup::FromIndex(k);
    return all;
  }();
  return groups;
}

std::string_view GenderToken(Gender g) {
  return g == Gender::kMale ? "M" : "F";
}

std::string_view RaceToken(Race r) {
  switch (r) {
    case Race::kBlack:
      return "Black";
    case Race::kWhite:
      return "White";
    case Race::kAsian:
      return "Asian";
    case Race::kOthers:
      return "Others";
  }
  return "?";
}

Gender ParseGender(std::string_view token) {
  if (token == "M") return Gender::kMale;
  if (token == "F") return Gender::kFemale;
  throw ValidationError("unknown gender token \"" + std::string(token) + "\"");
}

Race ParseRace(std::string_view token) {
  for (Race r : {Race::kBlack, Race::kWhite, Race::kAsian, Race::kOthers}) {
    if (token == RaceToken(r)) return r;
  }
  throw ValidationError("unknown race token \"" + std::string(token) + "\"");
}

}  // namespace fforge
