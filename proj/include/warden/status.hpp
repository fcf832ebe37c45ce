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
#include <exception>
#include <string>
#include <string_view>

namespace warden {

// Every failure anywhere in the kernel maps to exactly one of these codes.
// The numeric values are part of the system interface and must not change.
enum class Status : uint32_t {
  Success = 0,
  UnknownSyscall = 1,
  InvalidAddress = 2,
  DanglingHandle = 3,
  KindMismatch = 4,
  NameCollision = 5,
  ArityMismatch = 6,
  TypeMismatch = 7,
  NotAnApplication = 8,
  NotAnEquality = 9,
  NotAProposition = 10,
  ShapeMismatch = 11,
  SideConditionViolated = 12,
  ObligationPending = 13,
  ObligationUnknown = 14,
  ObligationMismatch = 15,
  ProofRejected = 16,
  RefinementRejected = 17,
  FsNotFound = 18,
  FsBadDescriptor = 19,
  FsBadFlags = 20,
  ArenaExhausted = 21,
};

std::string_view status_name(Status s);

// Internal signalling for defensive checks. Thrown by kernel operations and
// converted to a plain Status at the dispatch boundary; never escapes to a
// guest.
class KernelFault : public std::exception {
 public:
  explicit KernelFault(Status code, std::string detail = "")
      : code_(code), detail_(std::move(detail)) {
    message_ = std::string(status_name(code_));
    if (!detail_.empty()) {
      message_ += ": ";
      message_ += detail_;
    }
  }

  Status code() const { return code_; }
  const std::string& detail() const { return detail_; }
  const char* what() const noexcept override { return message_.c_str(); }

 private:
  Status code_;
  std::string detail_;
  std::string message_;
};

}  // namespace warden
