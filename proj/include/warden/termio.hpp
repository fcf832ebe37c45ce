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
// Host-side term and type text. Parsing allocates through the same syscall
// dispatch a guest would use; printing reads the arenas directly.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "warden/abi.hpp"
#include "warden/kernel.hpp"
#include "warden/sexpr.hpp"

namespace warden {

struct TraceEntry {
  uint32_t number = 0;
  std::vector<uint64_t> args;
  Status status = Status::Success;
};

// Drives dispatch from the host with a private scratch memory, recording
// every call. The script harness and the term parser share one so that a
// script run is one linear syscall history.
class SyscallClient {
 public:
  explicit SyscallClient(Kernel& kernel, size_t memory_bytes = 1 << 20);

  // Appends to the trace and returns the status. Addresses in args refer
  // to this client's scratch memory.
  Status call(uint32_t number, std::span<const uint64_t> args);
  Status call(uint32_t number, std::initializer_list<uint64_t> args) {
    return call(number, std::span<const uint64_t>(args.begin(), args.size()));
  }

  // Bump-allocated scratch, reclaimed by reset(). Alignment is 8.
  uint64_t stash(std::string_view bytes);
  uint64_t stash(std::span<const uint64_t> words);
  uint64_t reserve(uint64_t bytes);
  void reset();

  uint64_t read_u64(uint64_t addr) const;
  std::string read_bytes(uint64_t addr, uint64_t len) const;

  Kernel& kernel() { return kernel_; }
  const std::vector<TraceEntry>& trace() const { return trace_; }

 private:
  Kernel& kernel_;
  std::vector<uint8_t> memory_;
  uint64_t bump_ = 16;
  std::vector<TraceEntry> trace_;
};

// Failures carry the offending line when one is known.
struct TermSyntaxError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// type ::= (tyvar NAME) | (ty NAME type*)
// term ::= (var NAME type) | (const HANDLE-OR-NAME (inst NAME type)*)
//        | (app term term) | (lam NAME type term) | (nat INT)
Handle parse_type(SyscallClient& client, const Sexpr& e);
Handle parse_term(SyscallClient& client, const Sexpr& e);

// Parses a source containing exactly one term.
Handle parse_term_text(SyscallClient& client, std::string_view text);

std::string print_type(const HeapSet& heaps, Handle type);
std::string print_term(const HeapSet& heaps, Handle term);

// Fails (TermSyntaxError) when a syscall issued by the parser fails; the
// status is folded into the message.
void require_success(Status status, const Sexpr& at, const char* what);

}  // namespace warden
