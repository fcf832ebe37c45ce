// Copyright 2026 The Warden Authors.
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

#pragma once

#include <cstdint>
#include <string_view>

namespace warden {

// FNV-1a, used for canonical state digests. Not cryptographic; collisions
// would only weaken a test, never the kernel.
class Fnv1a {
 public:
  static constexpr uint64_t kOffset = 1469598103934665603ULL;
  static constexpr uint64_t kPrime = 1099511628211ULL;

  void mix_byte(uint8_t b) {
    state_ ^= b;
    state_ *= kPrime;
  }

  void mix_u64(uint64_t v) {
    for (int i = 0; i < 8; ++i) mix_byte(static_cast<uint8_t>(v >> (i * 8)));
  }

  void mix_bytes(std::string_view s) {
    for (char c : s) mix_byte(static_cast<uint8_t>(c));
  }

  void mix_string(std::string_view s) {
    mix_u64(s.size());
    mix_bytes(s);
  }

  uint64_t value() const { return state_; }

  // For rolling a digest chain back to an earlier recorded state.
  void restore(uint64_t v) { state_ = v; }

 private:
  uint64_t state_ = kOffset;
};

}  // namespace warden
