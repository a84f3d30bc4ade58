// Copyright 2026 The pairrank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Stable hashing and seeded random helpers. Everything here produces the same
// values on every platform, unlike std::hash and the std distributions.

#ifndef PAIRRANK_HASHING_H_
#define PAIRRANK_HASHING_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>
#include <utility>

namespace pairrank {

std::uint64_t Fnv1a64(std::string_view bytes,
                      std::uint64_t basis = 0xcbf29ce484222325ULL);

std::uint64_t SplitMix64(std::uint64_t x);

// Hashes a seed with a sequence of string fields. Fields are length-prefixed
// so ("ab", "c") and ("a", "bc") differ.
std::uint64_t KeyedHash(std::uint64_t seed,
                        std::initializer_list<std::string_view> fields);

// Maps a 64-bit hash to [0, 1) using its top 53 bits.
double ToUnitInterval(std::uint64_t h);

// Uniform integer in [0, bound) by rejection; bound must be positive.
std::size_t UniformIndex(std::mt19937_64& rng, std::size_t bound);

// Fair coin.
bool CoinFlip(std::mt19937_64& rng);

template <typename It>
void StableShuffle(It first, It last, std::mt19937_64& rng) {
  const auto n = static_cast<std::size_t>(last - first);
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = UniformIndex(rng, i);
    std::swap(first[i - 1], first[j]);
  }
}

}  // namespace pairrank

#endif  // PAIRRANK_HASHING_H_
