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

#ifndef FFORGE_RNG_H_
#define FFORGE_RNG_H_

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace fforge {

// SplitMix64 finalizer. A bijection on 64-bit integers.
uint64_t Mix64(uint64_t x);

// 64-bit FNV-1a hash of a byte string.
uint64_t Fnv1a64(std::string_view bytes);

// Per-item seed: seed ^ hash(id), mixed with a round counter. Distinct rounds
// of the same (seed, id) never collide.
uint64_t DeriveSeed(uint64_t seed, std::string_view id, uint64_t round = 0);

// Small deterministic generator (xoshiro256**). All sampling helpers are
// implemented here rather than through <random> distributions so that streams
// are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t Next();
  // Uniform in [0, 1) with 53 bits of resolution.
  double Uniform();
  // Uniform in [lo, hi]; returns lo when lo == hi.
  double Uniform(double lo, double hi);
  // Uniform integer in [0, n). n must be positive.
  uint64_t Below(uint64_t n);
  // Standard normal via Box-Muller.
  double Normal();

 private:
  uint64_t s_[4];
};

}  // namespace fforge

#endif  // FFORGE_RNG_H_
