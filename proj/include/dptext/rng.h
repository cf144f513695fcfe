// Copyright 2026 The dptext Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPTEXT_RNG_H_
#define DPTEXT_RNG_H_

#include <cstdint>
#include <random>

namespace dptext {

// Seeded random stream with a fully specified algorithm so draws replay
// bit-for-bit on any conforming platform:
//
//   engine      std::mt19937_64 seeded with the 64-bit seed
//   Uniform01   ((x >> 11) + 0.5) * 2^-53, strictly inside (0, 1)
//   Child(a, b) seed' = SplitMix64(SplitMix64(SplitMix64(seed) ^ a) ^ b)
//
// The standard library distributions are not used because their output is
// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t NextU64() { return engine_(); }
  double Uniform01();

  // Independent stream keyed by (a, b), e.g. (document index, token index).
  // Does not advance this stream.
  Rng Child(std::uint64_t a, std::uint64_t b = 0) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t SplitMix64(std::uint64_t x);

}  // namespace dptext

#endif  // DPTEXT_RNG_H_
