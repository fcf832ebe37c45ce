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

#include <string>

#include "warden/inference.hpp"
#include "warden/kernel.hpp"
#include "warden/syntax.hpp"

namespace warden {

GateOutcome Kernel::gate(const SyscallMeta& meta, uint64_t obligation_id) {
  if (obligation_id == 0) {
    const Reified r = reify(meta);
    const Handle challenge = build_challenge(policy_, r);
    GateOutcome out;
    ObligationRecord rec;
    rec.id = next_obligation_++;
    rec.meta = meta;
    rec.count = r.count;
    rec.history = r.history;
    rec.request = r.request;
    rec.challenge = challenge;
    obligations_.push_back(rec);
    out.obligation_id = rec.id;
    out.challenge = challenge;
    return out;
  }

  ObligationRecord* rec = nullptr;
  for (ObligationRecord& candidate : obligations_) {
    if (candidate.id == obligation_id) {
      rec = &candidate;
      break;
    }
  }
  if (rec == nullptr || rec->consumed) {
    throw KernelFault(Status::ObligationUnknown,
                      "obligation " + std::to_string(obligation_id));
  }
  if (!(rec->meta == meta)) {
    throw KernelFault(Status::ObligationMismatch,
                      "obligation " + std::to_string(obligation_id) +
                          " pins a different request");
  }
  if (!rec->discharged) {
    throw KernelFault(Status::ObligationPending,
                      "obligation " + std::to_string(obligation_id));
  }
  rec->consumed = true;
  GateOutcome out;
  out.allowed = true;
  return out;
}

void Kernel::discharge(uint64_t obligation_id, Handle proof) {
  ObligationRecord* rec = nullptr;
  for (ObligationRecord& candidate : obligations_) {
    if (candidate.id == obligation_id) {
      rec = &candidate;
      break;
    }
  }
  if (rec == nullptr || rec->consumed) {
    throw KernelFault(Status::ObligationUnknown,
                      "obligation " + std::to_string(obligation_id));
  }
  const TheoremEntry& thm = heaps_.theorem(proof);
  if (!thm.hypotheses.empty()) {
    throw KernelFault(Status::ProofRejected, "hypotheses remain");
  }
  const Handle conclusion = thm.conclusion;
  const Handle challenge = rec->challenge;
  const Handle normal = syntax::beta_normalize(heaps_, conclusion);
  if (!syntax::alpha_equal(heaps_, normal, challenge)) {
    throw KernelFault(Status::ProofRejected,
                      "conclusion does not match the challenge");
  }
  rec->discharged = true;
}

void Kernel::install_policy(Handle new_policy, Handle refinement) {
  const TermEntry& entry = heaps_.term(new_policy);
  if (!syntax::type_equal(heaps_, entry.type, policy_type_)) {
    throw KernelFault(Status::TypeMismatch,
                      "policy must map count, history, request to prop");
  }
  if (!syntax::free_variables(heaps_, new_policy).empty()) {
    throw KernelFault(Status::TypeMismatch, "policy must be closed");
  }
  const TheoremEntry& thm = heaps_.theorem(refinement);
  if (!thm.hypotheses.empty()) {
    throw KernelFault(Status::RefinementRejected, "hypotheses remain");
  }
  const Handle conclusion = thm.conclusion;

  // forall k u s. new k u s ==> old k u s, compared after normalization.
  auto& h = heaps_;
  const Handle k = syntax::allocate_variable(h, "k", wellknown::kTypeNat);
  const Handle u = syntax::allocate_variable(h, "u", wellknown::kTypeHistory);
  const Handle s = syntax::allocate_variable(h, "s", wellknown::kTypeMeta);
  auto applied = [&](Handle policy) {
    Handle t = syntax::allocate_application(h, policy, k);
    t = syntax::allocate_application(h, t, u);
    return syntax::allocate_application(h, t, s);
  };
  Handle target = syntax::make_implication(h, applied(new_policy),
                                           applied(policy_));
  target = syntax::make_forall(h, "s", wellknown::kTypeMeta, target);
  target = syntax::make_forall(h, "u", wellknown::kTypeHistory, target);
  target = syntax::make_forall(h, "k", wellknown::kTypeNat, target);
  target = syntax::beta_normalize(h, target);

  const Handle normal = syntax::beta_normalize(h, conclusion);
  if (!syntax::alpha_equal(h, normal, target)) {
    throw KernelFault(Status::RefinementRejected,
                      "conclusion does not refine the current policy");
  }
  policy_ = new_policy;
}

}  // namespace warden
