// Copyright 2026 The pptlocc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PPTLOCC_RNG_HPP
#define PPTLOCC_RNG_HPP

#include <cstdint>
#include <random>

namespace pptlocc {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of an independent substream, keyed by (master, purpose, a, b). Results
/// do not depend on the order in which substreams are consumed.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t purpose,
                                    std::uint64_t a = 0, std::uint64_t b = 0) noexcept {
  return mix64(mix64(mix64(mix64(master) ^ purpose) ^ a) ^ b);
}

/// Substream purposes.
enum SeedPurpose : std::uint64_t {
  kSeedShots = 0x5107,
  kSeedBootstrap = 0xB007,
  kSeedTrial = 0x7E57,
};

}  // namespace pptlocc

#endif  // PPTLOCC_RNG_HPP
