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
//
// Assembles the textual WebAssembly subset used by guest fixtures into
// binary images: flat (unfolded) instruction bodies, i32/i64 only, with
// imports, one memory, data segments, globals, and exports. Enough to
// write guests by hand without an external toolchain.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace warden {

struct WatError : std::runtime_error {
  WatError(uint32_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line(line) {}
  uint32_t line;
};

std::vector<uint8_t> compile_wat(std::string_view source);

}  // namespace warden
