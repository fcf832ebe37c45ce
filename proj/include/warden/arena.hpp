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
// Append-only tables housing the kernel objects of each kind. Handles never
// dangle once issued: entries are never removed or overwritten, so the object
// graph stays inductive by construction.

#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "warden/digest.hpp"
#include "warden/objects.hpp"
#include "warden/status.hpp"

namespace warden {

template <typename Payload>
class Arena {
 public:
  bool contains(Handle h) const { return entries_.count(h.value) != 0; }

  const Payload& get(Handle h) const {
    auto it = entries_.find(h.value);
    if (it == entries_.end())
      throw KernelFault(Status::DanglingHandle, "arena lookup");
    return it->second;
  }

  void insert(Handle h, Payload payload) {
    // Append-only: an existing entry is a kernel bug, not a guest error.
    if (contains(h)) throw KernelFault(Status::ArenaExhausted, "reused handle");
    entries_.emplace(h.value, std::move(payload));
    order_.push_back(h.value);
  }

  size_t size() const { return order_.size(); }

  // Handles in allocation order, for heap walks and canonical dumps.
  const std::vector<uint64_t>& order() const { return order_; }

  // Discards entries past the first keep, newest first. Sound only while the
  // discarded entries are unreferenced, which HeapSet::rollback guarantees.
  void truncate(size_t keep, std::vector<uint64_t>* removed) {
    while (order_.size() > keep) {
      const uint64_t value = order_.back();
      order_.pop_back();
      entries_.erase(value);
      if (removed) removed->push_back(value);
    }
  }

 private:
  std::unordered_map<uint64_t, Payload> entries_;
  std::vector<uint64_t> order_;
};

// The five kernel heaps plus the shared handle counter. All kinds draw fresh
// values from one counter, so a handle value identifies at most one object
// globally and a cross-kind lookup is reported as KindMismatch instead of
// dangling.
class HeapSet {
 public:
  // Values below this are reserved for the preallocated objects that make up
  // the documented handle table.
  static constexpr uint64_t kFirstDynamicHandle = 64;

  HeapSet() : next_(kFirstDynamicHandle) {}

  Handle allocate_former(FormerInfo payload);
  Handle allocate_type(TypePayload payload);
  Handle allocate_constant(ConstantInfo payload);
  Handle allocate_term(TermEntry payload);
  Handle allocate_theorem(TheoremEntry payload);

  // Boot-time insertion at a reserved handle value (< kFirstDynamicHandle).
  void place_former(Handle h, FormerInfo payload);
  void place_type(Handle h, TypePayload payload);
  void place_constant(Handle h, ConstantInfo payload);
  void place_theorem(Handle h, TheoremEntry payload);

  std::optional<Kind> kind_of(Handle h) const {
    auto it = owner_.find(h.value);
    if (it == owner_.end()) return std::nullopt;
    return it->second;
  }

  bool is_live(Kind kind, Handle h) const {
    auto k = kind_of(h);
    return k && *k == kind;
  }

  // Checked accessors. A handle live in another kind's arena reports
  // KindMismatch; a handle never issued reports DanglingHandle.
  const FormerInfo& former(Handle h) const;
  const TypePayload& type(Handle h) const;
  const ConstantInfo& constant(Handle h) const;
  const TermEntry& term(Handle h) const;
  const TheoremEntry& theorem(Handle h) const;

  const Arena<FormerInfo>& formers() const { return formers_; }
  const Arena<TypePayload>& types() const { return types_; }
  const Arena<ConstantInfo>& constants() const { return constants_; }
  const Arena<TermEntry>& terms() const { return terms_; }
  const Arena<TheoremEntry>& theorems() const { return theorems_; }

  uint64_t object_count() const { return owner_.size(); }

  // Running hash over every record ever inserted, in insertion order. Since
  // heaps are append-only this is a canonical digest of their contents and a
  // failed syscall that allocated nothing leaves it bit-identical.
  uint64_t heap_digest() const { return chain_.value(); }

  uint64_t next_handle_value() const { return next_; }

  // Snapshot of the append positions, cheap enough to take per syscall.
  struct Checkpoint {
    uint64_t next = 0;
    uint64_t chain = 0;
    size_t sizes[kKindCount] = {};
  };

  Checkpoint checkpoint() const;

  // Unwinds every allocation made since the checkpoint. Objects born after a
  // checkpoint can only be referenced by other such objects, so dropping the
  // whole suffix preserves inductivity.
  void rollback(const Checkpoint& cp);

 private:
  Handle fresh();
  void check_kind(Kind want, Handle h) const;
  void register_owner(Handle h, Kind kind);
  void mix_record(Kind kind, Handle h, const FormerInfo& p);
  void mix_record(Kind kind, Handle h, const TypePayload& p);
  void mix_record(Kind kind, Handle h, const ConstantInfo& p);
  void mix_record(Kind kind, Handle h, const TermEntry& p);
  void mix_record(Kind kind, Handle h, const TheoremEntry& p);

  Arena<FormerInfo> formers_;
  Arena<TypePayload> types_;
  Arena<ConstantInfo> constants_;
  Arena<TermEntry> terms_;
  Arena<TheoremEntry> theorems_;
  std::unordered_map<uint64_t, Kind> owner_;
  uint64_t next_;
  Fnv1a chain_;
};

}  // namespace warden
