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
// Deterministic script harness: the same syscall surface a guest sees,
// driven from line-oriented s-expressions. Commands:
//
//   (let NAME expr)             bind the result
//   (call SYSCALL arg*)         run and discard the result
//   (assert-status INT)         last syscall's status
//   (assert-alpha-eq NAME NAME) bound term handles
//   (assert-true NAME)          bound value is nonzero
//   (discharge NAME NAME)       obligation id, theorem handle
//
// expr is (SYSCALL arg*) or an inline type/term form ((const true),
// (lam x (ty prop) ...)) which allocates through the ordinary syscalls.
// args are integers, bound names, strings, or inline forms. Syscalls go
// by short mnemonic (term-const, thm-truth, fs-open) or full import name.
//
// Result conventions: multi-output syscalls bind NAME-2, NAME-3; split
// hypotheses bind NAME-hyp-0..; free variables bind NAME-0..; fs data
// binds NAME-data; a Pending gate binds NAME to the obligation id and
// NAME-challenge to the challenge handle.

#pragma once

#include <string>
#include <string_view>

#include "warden/termio.hpp"

namespace warden {

struct ScriptResult {
  bool ok = true;
  std::string error;
  std::string transcript;
};

ScriptResult run_script(SyscallClient& client, std::string_view source);

// Mnemonic or import name to syscall number.
std::optional<uint32_t> syscall_by_mnemonic(std::string_view name);

}  // namespace warden
