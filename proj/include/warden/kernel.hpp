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
#include <string>
#include <vector>

#include "warden/arena.hpp"
#include "warden/vfs.hpp"
#include "warden/wellknown.hpp"

namespace warden {

// Identity of one gated request, as reflected into the object language.
struct SyscallMeta {
  uint64_t number = 0;
  uint64_t arg1 = 0;
  uint64_t arg2 = 0;

  bool operator==(const SyscallMeta&) const = default;
};

inline constexpr uint64_t kMetaFsOpen = 0x90;
inline constexpr uint64_t kMetaFsRead = 0x91;
inline constexpr uint64_t kMetaFsWrite = 0x92;

struct ObligationRecord {
  uint64_t id = 0;
  SyscallMeta meta;
  Handle count;
  Handle history;
  Handle request;
  Handle challenge;
  bool discharged = false;
  bool consumed = false;
};

struct GateOutcome {
  bool allowed = false;
  // Set when a fresh obligation was minted instead.
  uint64_t obligation_id = 0;
  Handle challenge;
};

// One kernel instance: private heaps plus the supervisory state that the
// syscall layer gates against. Construction performs the boot sequence,
// ending with the permit-everything policy installed.
class Kernel {
 public:
  Kernel();

  HeapSet& heaps() { return heaps_; }
  const HeapSet& heaps() const { return heaps_; }
  Vfs& vfs() { return vfs_; }
  const Vfs& vfs() const { return vfs_; }

  Handle current_policy() const { return policy_; }
  Handle policy_type() const { return policy_type_; }

  // Unary numeral over zero/suc; results are shared and cached.
  Handle numeral(uint64_t n);

  // Object-language image of the pending request against the current
  // state: object count, history chain (most recent outermost), and the
  // request triple.
  struct Reified {
    Handle count;
    Handle history;
    Handle request;
  };
  Reified reify(const SyscallMeta& meta);

  // (policy count history request) beta-normalized.
  Handle build_challenge(Handle policy, const Reified& r);

  // obligation_id zero asks for a fresh obligation; nonzero claims a
  // previously discharged one. Throws for unknown, mismatched, or still
  // pending claims.
  GateOutcome gate(const SyscallMeta& meta, uint64_t obligation_id);

  // Accepts closed proofs of the recorded challenge.
  void discharge(uint64_t obligation_id, Handle proof);

  // Swaps in new_policy when refinement proves it at least as strict as
  // the current one.
  void install_policy(Handle new_policy, Handle refinement);

  void record_event(const SyscallMeta& meta) { history_.push_back(meta); }
  const std::vector<SyscallMeta>& history() const { return history_; }
  const std::vector<ObligationRecord>& obligations() const {
    return obligations_;
  }
  const ObligationRecord* find_obligation(uint64_t id) const;

  uint64_t intern_path(const std::string& normalized);
  const std::vector<std::string>& interned_paths() const { return interned_; }

  // Covers heaps, policy, obligations, history, interner, and the
  // filesystem image.
  uint64_t state_digest() const;

 private:
  void boot();
  Handle suc_of(Handle n);
  Handle meta_triple(const SyscallMeta& meta);
  Handle history_term();

  HeapSet heaps_;
  Vfs vfs_;

  Handle policy_;
  Handle policy_type_;

  // Constant terms shared by every reification.
  Handle zero_term_;
  Handle suc_term_;
  Handle mk_meta_term_;
  Handle hist_nil_term_;
  Handle hist_cons_term_;

  std::vector<Handle> numerals_;
  std::vector<ObligationRecord> obligations_;
  uint64_t next_obligation_ = 1;
  std::vector<SyscallMeta> history_;
  std::vector<std::string> interned_;
};

}  // namespace warden
