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

#include "warden/arena.hpp"

namespace warden {

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Success: return "Success";
    case Status::UnknownSyscall: return "UnknownSyscall";
    case Status::InvalidAddress: return "InvalidAddress";
    case Status::DanglingHandle: return "DanglingHandle";
    case Status::KindMismatch: return "KindMismatch";
    case Status::NameCollision: return "NameCollision";
    case Status::ArityMismatch: return "ArityMismatch";
    case Status::TypeMismatch: return "TypeMismatch";
    case Status::NotAnApplication: return "NotAnApplication";
    case Status::NotAnEquality: return "NotAnEquality";
    case Status::NotAProposition: return "NotAProposition";
    case Status::ShapeMismatch: return "ShapeMismatch";
    case Status::SideConditionViolated: return "SideConditionViolated";
    case Status::ObligationPending: return "ObligationPending";
    case Status::ObligationUnknown: return "ObligationUnknown";
    case Status::ObligationMismatch: return "ObligationMismatch";
    case Status::ProofRejected: return "ProofRejected";
    case Status::RefinementRejected: return "RefinementRejected";
    case Status::FsNotFound: return "FsNotFound";
    case Status::FsBadDescriptor: return "FsBadDescriptor";
    case Status::FsBadFlags: return "FsBadFlags";
    case Status::ArenaExhausted: return "ArenaExhausted";
  }
  return "Unknown";
}

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::TypeFormer: return "type-former";
    case Kind::Type: return "type";
    case Kind::Constant: return "constant";
    case Kind::Term: return "term";
    case Kind::Theorem: return "theorem";
  }
  return "unknown";
}

Handle HeapSet::fresh() {
  if (next_ == UINT64_MAX)
    throw KernelFault(Status::ArenaExhausted, "handle counter wrapped");
  return Handle{next_++};
}

void HeapSet::register_owner(Handle h, Kind kind) {
  owner_.emplace(h.value, kind);
}

void HeapSet::check_kind(Kind want, Handle h) const {
  auto it = owner_.find(h.value);
  if (it == owner_.end()) throw KernelFault(Status::DanglingHandle);
  if (it->second != want)
    throw KernelFault(Status::KindMismatch,
                      std::string(kind_name(it->second)) + " handle where " +
                          std::string(kind_name(want)) + " expected");
}

// --- digest plumbing -------------------------------------------------------

namespace {

void mix_handle(Fnv1a& f, Handle h) { f.mix_u64(h.value); }

void mix_type_payload(Fnv1a& f, const TypePayload& p) {
  if (const auto* v = std::get_if<TypeVariable>(&p)) {
    f.mix_byte(0);
    f.mix_string(v->name);
  } else {
    const auto& a = std::get<TypeApplication>(p);
    f.mix_byte(1);
    mix_handle(f, a.former);
    f.mix_u64(a.args.size());
    for (Handle arg : a.args) mix_handle(f, arg);
  }
}

void mix_term_payload(Fnv1a& f, const TermPayload& p) {
  if (const auto* v = std::get_if<TermVariable>(&p)) {
    f.mix_byte(0);
    f.mix_string(v->name);
    mix_handle(f, v->type);
  } else if (const auto* c = std::get_if<TermConstant>(&p)) {
    f.mix_byte(1);
    mix_handle(f, c->constant);
    f.mix_u64(c->instantiation.size());
    for (const auto& [name, ty] : c->instantiation) {
      f.mix_string(name);
      mix_handle(f, ty);
    }
  } else if (const auto* a = std::get_if<TermApplication>(&p)) {
    f.mix_byte(2);
    mix_handle(f, a->left);
    mix_handle(f, a->right);
  } else {
    const auto& l = std::get<TermLambda>(p);
    f.mix_byte(3);
    f.mix_string(l.bound_name);
    mix_handle(f, l.bound_type);
    mix_handle(f, l.body);
  }
}

}  // namespace

void HeapSet::mix_record(Kind kind, Handle h, const FormerInfo& p) {
  chain_.mix_byte(static_cast<uint8_t>(kind));
  chain_.mix_u64(h.value);
  chain_.mix_string(p.name);
  chain_.mix_u64(p.arity);
}

void HeapSet::mix_record(Kind kind, Handle h, const TypePayload& p) {
  chain_.mix_byte(static_cast<uint8_t>(kind));
  chain_.mix_u64(h.value);
  mix_type_payload(chain_, p);
}

void HeapSet::mix_record(Kind kind, Handle h, const ConstantInfo& p) {
  chain_.mix_byte(static_cast<uint8_t>(kind));
  chain_.mix_u64(h.value);
  chain_.mix_string(p.name);
  chain_.mix_u64(p.declared_type.value);
}

void HeapSet::mix_record(Kind kind, Handle h, const TermEntry& p) {
  chain_.mix_byte(static_cast<uint8_t>(kind));
  chain_.mix_u64(h.value);
  mix_term_payload(chain_, p.payload);
  chain_.mix_u64(p.type.value);
}

void HeapSet::mix_record(Kind kind, Handle h, const TheoremEntry& p) {
  chain_.mix_byte(static_cast<uint8_t>(kind));
  chain_.mix_u64(h.value);
  chain_.mix_u64(p.hypotheses.size());
  for (Handle hyp : p.hypotheses) chain_.mix_u64(hyp.value);
  chain_.mix_u64(p.conclusion.value);
  chain_.mix_byte(p.axiom ? 1 : 0);
}

// --- allocation ------------------------------------------------------------

Handle HeapSet::allocate_former(FormerInfo payload) {
  Handle h = fresh();
  mix_record(Kind::TypeFormer, h, payload);
  formers_.insert(h, std::move(payload));
  register_owner(h, Kind::TypeFormer);
  return h;
}

Handle HeapSet::allocate_type(TypePayload payload) {
  Handle h = fresh();
  mix_record(Kind::Type, h, payload);
  types_.insert(h, std::move(payload));
  register_owner(h, Kind::Type);
  return h;
}

Handle HeapSet::allocate_constant(ConstantInfo payload) {
  Handle h = fresh();
  mix_record(Kind::Constant, h, payload);
  constants_.insert(h, std::move(payload));
  register_owner(h, Kind::Constant);
  return h;
}

Handle HeapSet::allocate_term(TermEntry payload) {
  Handle h = fresh();
  mix_record(Kind::Term, h, payload);
  terms_.insert(h, std::move(payload));
  register_owner(h, Kind::Term);
  return h;
}

Handle HeapSet::allocate_theorem(TheoremEntry payload) {
  Handle h = fresh();
  mix_record(Kind::Theorem, h, payload);
  theorems_.insert(h, std::move(payload));
  register_owner(h, Kind::Theorem);
  return h;
}

namespace {

void require_reserved(Handle h) {
  if (h.value >= HeapSet::kFirstDynamicHandle)
    throw KernelFault(Status::ArenaExhausted, "placement outside boot range");
}

}  // namespace

void HeapSet::place_former(Handle h, FormerInfo payload) {
  require_reserved(h);
  mix_record(Kind::TypeFormer, h, payload);
  formers_.insert(h, std::move(payload));
  register_owner(h, Kind::TypeFormer);
}

void HeapSet::place_type(Handle h, TypePayload payload) {
  require_reserved(h);
  mix_record(Kind::Type, h, payload);
  types_.insert(h, std::move(payload));
  register_owner(h, Kind::Type);
}

void HeapSet::place_constant(Handle h, ConstantInfo payload) {
  require_reserved(h);
  mix_record(Kind::Constant, h, payload);
  constants_.insert(h, std::move(payload));
  register_owner(h, Kind::Constant);
}

void HeapSet::place_theorem(Handle h, TheoremEntry payload) {
  require_reserved(h);
  mix_record(Kind::Theorem, h, payload);
  theorems_.insert(h, std::move(payload));
  register_owner(h, Kind::Theorem);
}

const FormerInfo& HeapSet::former(Handle h) const {
  check_kind(Kind::TypeFormer, h);
  return formers_.get(h);
}

const TypePayload& HeapSet::type(Handle h) const {
  check_kind(Kind::Type, h);
  return types_.get(h);
}

const ConstantInfo& HeapSet::constant(Handle h) const {
  check_kind(Kind::Constant, h);
  return constants_.get(h);
}

const TermEntry& HeapSet::term(Handle h) const {
  check_kind(Kind::Term, h);
  return terms_.get(h);
}

const TheoremEntry& HeapSet::theorem(Handle h) const {
  check_kind(Kind::Theorem, h);
  return theorems_.get(h);
}

HeapSet::Checkpoint HeapSet::checkpoint() const {
  Checkpoint cp;
  cp.next = next_;
  cp.chain = chain_.value();
  cp.sizes[size_t(Kind::TypeFormer)] = formers_.size();
  cp.sizes[size_t(Kind::Type)] = types_.size();
  cp.sizes[size_t(Kind::Constant)] = constants_.size();
  cp.sizes[size_t(Kind::Term)] = terms_.size();
  cp.sizes[size_t(Kind::Theorem)] = theorems_.size();
  return cp;
}

void HeapSet::rollback(const Checkpoint& cp) {
  std::vector<uint64_t> removed;
  formers_.truncate(cp.sizes[size_t(Kind::TypeFormer)], &removed);
  types_.truncate(cp.sizes[size_t(Kind::Type)], &removed);
  constants_.truncate(cp.sizes[size_t(Kind::Constant)], &removed);
  terms_.truncate(cp.sizes[size_t(Kind::Term)], &removed);
  theorems_.truncate(cp.sizes[size_t(Kind::Theorem)], &removed);
  for (uint64_t value : removed) owner_.erase(value);
  next_ = cp.next;
  chain_.restore(cp.chain);
}

}  // namespace warden
