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

#include "pairrank/hashing.h"

#include <limits>

namespace pairrank {

std::uint64_t Fnv1a64(std::string_view bytes, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t KeyedHash(std::uint64_t seed,
                        std::initializer_list<std::string_view> fields) {
  std::uint64_t h = SplitMix64(seed);
  for (std::string_view field : fields) {
    const std::uint64_t len = field.size();
    char len_bytes[8];
    for (int b = 0; b < 8; ++b) {
      len_bytes[b] = static_cast<char>((len >> (8 * b)) & 0xff);
    }
    h = Fnv1a64(std::string_view(len_bytes, 8), h);
    h = Fnv1a64(field, h);
  }
  return SplitMix64(h);
}

double ToUnitInterval(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

std::size_t UniformIndex(std::mt19937_64& rng, std::size_t bound) {
  const std::uint64_t range = bound;
  // Largest multiple of `range` representable; draws above it are rejected.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return static_cast<std::size_t>(draw % range);
}

bool CoinFlip(std::mt19937_64& rng) { return (rng() >> 63) != 0; }

}  // namespace pairrank
