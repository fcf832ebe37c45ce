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
// Runs untrusted guest images against one kernel. Every syscall the guest
// makes goes through dispatch and lands in the trace; traps and link
// failures are reported, never fatal to the host process.

#pragma once

#include <memory>

#include "warden/termio.hpp"
#include "warden/wasm.hpp"

namespace warden {

struct ObligationOutcome {
  uint64_t id = 0;
  std::string challenge_text;
  bool discharged = false;
};

struct GuestRunReport {
  // "ok", "exit N", "trap: ...", "link failure: ...", "invalid module: ..."
  std::string status;
  std::vector<TraceEntry> trace;
  std::vector<ObligationOutcome> obligations;

  bool ok() const { return status == "ok"; }
  std::string to_json() const;
};

// The engine seam: everything the host needs from a WebAssembly runtime.
class GuestEngine {
 public:
  virtual ~GuestEngine() = default;
  // Decodes, links through the resolver, and calls the exported nullary
  // entry. Throws wasm::DecodeError, wasm::LinkError, or wasm::Trap.
  virtual std::optional<uint64_t> run(std::span<const uint8_t> image,
                                      const wasm::HostResolver& resolve,
                                      const std::string& entry) = 0;
};

std::unique_ptr<GuestEngine> make_interpreter_engine();

// Binds the full syscall surface under the "supervisionary" namespace and
// runs the image's "main". The kernel keeps whatever state the guest
// built, so callers can inspect or digest it afterwards.
GuestRunReport run_guest(Kernel& kernel, std::span<const uint8_t> image);

}  // namespace warden
