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

#ifndef FFORGE_DEMOGRAPHICS_H_
#define FFORGE_DEMOGRAPHICS_H_

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

namespace fforge {

enum class Gender { kMale = 0, kFemale = 1 };
enum class Race { kBlack = 0, kWhite = 1, kAsian = 2, kOthers = 3 };

inline constexpr int kNumGenders = 2;
inline constexpr int kNumRaces = 4;
inline constexpr int kNumGroups = kNumGenders * kNumRaces;

// One of the eight gender x race intersections. Indexed race-major, in the
// order B-M, B-F, W-M, W-F, A-M, A-F, O-M, O-F.
struct DemographicGroup {
  Gender gender = Gender::kMale;
  Race race = Race::kBlack;

  int index() const {
    return static_cast<int>(race) * kNumGenders + static_cast<int>(gender);
  }
  static DemographicGroup FromIndex(int index);

  // Fused report code, e.g. "B-M".
  std::string code() const;

  friend bool operator==(const DemographicGroup&,
                         const DemographicGroup&) = default;
};

// All eight groups in index order.
const std::array<DemographicGroup, kNumGroups>& AllGroups();

// Manifest / CSV tokens: "M" | "F" and "Black" | "White" | "Asian" | "Others".
std::string_view GenderToken(Gender g);
std::string_view RaceToken(Race r);
// Throw ValidationError on unknown tokens.
Gender ParseGender(std::string_view token);
Race ParseRace(std::string_view token);

}  // namespace fforge

#endif  // FFORGE_DEMOGRAPHICS_H_
