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
// The privilege boundary. Guests reach the kernel only through dispatch;
// every argument is validated before any kernel state changes.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "warden/kernel.hpp"
#include "warden/status.hpp"

namespace warden {

// Syscall numbers. Addresses passed in args are u32 widened into u64 slots.
enum SyscallNumber : uint32_t {
  kSysTypeFormerRegister = 0x010,
  kSysTypeFormerResolve = 0x011,
  kSysTypeAllocateVariable = 0x020,
  kSysTypeAllocateApplication = 0x021,
  kSysTypeAllocateFunction = 0x022,
  kSysConstantRegister = 0x030,
  kSysTermAllocateVariable = 0x040,
  kSysTermAllocateConstant = 0x041,
  kSysTermAllocateApplication = 0x042,
  kSysTermAllocateLambda = 0x043,
  kSysTermIsApplication = 0x044,
  kSysTermSplitApplication = 0x045,
  kSysTermTypeOf = 0x046,
  kSysTermAlphaEq = 0x047,
  kSysTermSubstitute = 0x048,
  kSysTermTypeSubstitute = 0x049,
  kSysTermBetaNormalize = 0x04A,
  kSysTermFreeVariables = 0x04B,
  kSysTheoremAllocateSym = 0x060,
  kSysTheoremAllocateReflexivity = 0x061,
  kSysTheoremAllocateTransitivity = 0x062,
  kSysTheoremAllocateCongruenceApp = 0x063,
  kSysTheoremAllocateCongruenceLambda = 0x064,
  kSysTheoremAllocateBeta = 0x065,
  kSysTheoremAllocateEta = 0x066,
  kSysTheoremAllocateAssume = 0x067,
  kSysTheoremAllocateEqualityMp = 0x068,
  kSysTheoremAllocateDeductAntisym = 0x069,
  kSysTheoremAllocateInstTerm = 0x06A,
  kSysTheoremAllocateInstType = 0x06B,
  kSysTheoremAllocateTruthIntro = 0x06C,
  kSysTheoremAllocateFalsityElim = 0x06D,
  kSysTheoremAllocateImpIntro = 0x06E,
  kSysTheoremAllocateImpElim = 0x06F,
  kSysTheoremAllocateForallIntro = 0x070,
  kSysTheoremAllocateForallElim = 0x071,
  kSysTheoremSplit = 0x072,
  kSysPolicyCurrent = 0x080,
  kSysPolicyInstall = 0x081,
  kSysObligationDischarge = 0x082,
  kSysFsOpen = 0x090,
  kSysFsRead = 0x091,
  kSysFsWrite = 0x092,
  kSysFsClose = 0x093,
};

// Bounds-checked view of guest linear memory. Every kernel access to guest
// bytes goes through here; a failed check throws InvalidAddress.
class GuestMemory {
 public:
  GuestMemory(uint8_t* data, size_t size) : data_(data), size_(size) {}

  void check_range(uint64_t addr, uint64_t len) const;
  uint64_t read_u64(uint64_t addr) const;
  void write_u64(uint64_t addr, uint64_t value);
  std::string read_bytes(uint64_t addr, uint64_t len) const;
  void write_bytes(uint64_t addr, const uint8_t* src, uint64_t len);
  size_t size() const { return size_; }

 private:
  uint8_t* data_;
  size_t size_;
};

struct SyscallFrame {
  uint32_t number = 0;
  uint64_t args[8] = {};
};

// Total: never throws, never aborts; every outcome is a Status. Failed
// syscalls roll kernel heaps back to their pre-call state; obligation and
// history records persist by design.
Status dispatch(Kernel& kernel, const SyscallFrame& frame, GuestMemory& mem);

// Table metadata shared by the guest linker, the script harness, and the
// reports.
const char* syscall_name(uint32_t number);
const char* syscall_import_name(uint32_t number);
std::optional<uint32_t> syscall_by_import(std::string_view import_name);
std::optional<uint32_t> syscall_arg_count(uint32_t number);

}  // namespace warden
