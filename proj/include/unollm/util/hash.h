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

#ifndef UNOLLM_UTIL_HASH_H_
#define UNOLLM_UTIL_HASH_H_

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

namespace unollm {

// 64-bit FNV-1a. Stable across platforms; used for prompt and template
// fingerprints and for state digests.
class Fnv1a {
 public:
  Fnv1a& Update(std::string_view bytes) {
    for (unsigned char c : bytes) {
      state_ ^= c;
      state_ *= 0x100000001b3ULL;
    }
    return *this;
  }
  Fnv1a& Update(std::int64_t value) {
    for (int i = 0; i < 8; ++i) {
      state_ ^= static_cast<std::uint64_t>(value >> (8 * i)) & 0xffULL;
      state_ *= 0x100000001b3ULL;
    }
    return *this;
  }
  std::uint64_t Digest() const { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

inline std::uint64_t StableHash(std::string_view bytes) {
  return Fnv1a().Update(bytes).Digest();
}

inline std::string HexDigest(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace unollm

#endif  // UNOLLM_UTIL_HASH_H_
