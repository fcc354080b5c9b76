// Copyright 2026 The unollm Authors
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

#ifndef UNOLLM_UTIL_RNG_H_
#define UNOLLM_UTIL_RNG_H_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace unollm {

// All randomness flows through mt19937_64, whose output sequence is fixed by
// the standard. std::uniform_int_distribution and std::shuffle are not, so the
// helpers below are used instead to keep runs identical across toolchains.
using Rng = std::mt19937_64;

// SplitMix64 finalizer.
inline constexpr std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for a child stream, e.g. game g of an experiment or seat s of a game.
inline constexpr std::uint64_t DeriveSeed(std::uint64_t parent,
                                          std::uint64_t index) {
  return Mix64(Mix64(parent) ^ Mix64(index + 0x632be59bd9b4e019ULL));
}

// Uniform integer in [0, n). Rejection sampling, no modulo bias.
inline std::uint64_t UniformIndex(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

template <typename T>
void Shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(UniformIndex(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace unollm

#endif  // UNOLLM_UTIL_RNG_H_
