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
// Minimal WebAssembly engine for guest images: a binary decoder and a
// bytecode interpreter over the integer subset (i32/i64, no floats, no
// tables). Guests reach the host only through imported functions; every
// fault is contained in a typed exception and never crashes the process.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace warden::wasm {

// Malformed or out-of-subset image.
struct DecodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Import that the host does not provide or provides at another type.
struct LinkError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Contained runtime fault: unreachable, bounds, division, depth, fuel.
struct Trap : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr uint8_t kI32 = 0x7F;
inline constexpr uint8_t kI64 = 0x7E;

inline constexpr uint64_t kPageSize = 65536;
inline constexpr uint32_t kMaxMemoryPages = 1024;
inline constexpr uint32_t kMaxCallDepth = 256;
inline constexpr uint64_t kDefaultFuel = 100'000'000;

struct FuncType {
  std::vector<uint8_t> params;
  std::vector<uint8_t> results;  // at most one
  bool operator==(const FuncType&) const = default;
};

struct Import {
  std::string module;
  std::string name;
  uint32_t type_index = 0;
};

struct Export {
  std::string name;
  uint8_t kind = 0;  // 0 func, 2 memory
  uint32_t index = 0;
};

struct FuncBody {
  uint32_t type_index = 0;
  std::vector<uint8_t> locals;  // expanded, one value type per local
  std::vector<uint8_t> code;    // ends with the closing 0x0B
  // Offsets of structured ends, keyed by the opening opcode's offset.
  struct Structure {
    size_t else_at = SIZE_MAX;
    size_t end_at = 0;
  };
  std::unordered_map<size_t, Structure> structure;
};

struct Global {
  uint8_t type = kI32;
  bool is_mutable = false;
  uint64_t init = 0;
};

struct DataSegment {
  uint32_t offset = 0;
  std::vector<uint8_t> bytes;
};

struct Module {
  std::vector<FuncType> types;
  std::vector<Import> imports;     // function imports only
  std::vector<FuncBody> functions;
  bool has_memory = false;
  uint32_t memory_min_pages = 0;
  uint32_t memory_max_pages = kMaxMemoryPages;
  std::vector<Global> globals;
  std::vector<Export> exports;
  std::optional<uint32_t> start;
  std::vector<DataSegment> data;

  // Function index space: imports first, then local functions.
  const FuncType& function_type(uint32_t func_index) const;
};

Module decode(std::span<const uint8_t> bytes);

// What an imported function sees of the guest: its linear memory. The
// span stays valid for the duration of the call only.
struct GuestView {
  uint8_t* data = nullptr;
  size_t size = 0;
};

// Params arrive as raw 64-bit values (i32 zero-extended); the return
// value feeds the single result slot when the type declares one.
using HostFunc = std::function<uint64_t(GuestView, std::span<const uint64_t>)>;

// Returns the binding for an import, or nullopt for an unknown one (the
// instance turns that into a LinkError). May throw LinkError directly to
// report a type mismatch with a better message.
using HostResolver = std::function<std::optional<HostFunc>(
    std::string_view module, std::string_view name, const FuncType& type)>;

class Instance {
 public:
  // Binds imports, builds linear memory, places data segments, and runs
  // the start function when there is one.
  Instance(Module module, const HostResolver& resolve);

  // Calls an exported function that takes no parameters. Empty result for
  // a void function. Throws Trap on contained faults and LinkError when
  // the export is missing or has parameters.
  std::optional<uint64_t> call_nullary(std::string_view export_name);

  std::vector<uint8_t>& memory() { return memory_; }
  uint64_t fuel_remaining() const { return fuel_; }
  void set_fuel(uint64_t fuel) { fuel_ = fuel; }

 private:
  std::optional<uint64_t> invoke(uint32_t func_index,
                                 std::span<const uint64_t> args);
  std::optional<uint64_t> execute(const FuncBody& body,
                                  std::vector<uint64_t> locals,
                                  size_t result_count);

  Module module_;
  std::vector<HostFunc> bound_;  // parallel to module_.imports
  std::vector<uint8_t> memory_;
  std::vector<uint64_t> globals_;
  uint64_t fuel_ = kDefaultFuel;
  uint32_t depth_ = 0;
};

}  // namespace warden::wasm
