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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <functional>

#include "doctest.h"
#include "warden/inference.hpp"
#include "warden/kernel.hpp"
#include "warden/syntax.hpp"

using namespace warden;
namespace inf = warden::inference;

namespace {

Status code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const KernelFault& fault) {
    return fault.code();
  }
  return Status::Success;
}

// \k:nat. \u:history. \s:meta. body
Handle policy_lambda(HeapSet& heaps, Handle body) {
  const Handle s = syntax::allocate_lambda(heaps, "s", wellknown::kTypeMeta,
                                           body);
  const Handle u = syntax::allocate_lambda(heaps, "u", wellknown::kTypeHistory,
                                           s);
  return syntax::allocate_lambda(heaps, "k", wellknown::kTypeNat, u);
}

// {} |- forall k u s. false ==> true, the refinement that jails a kernel
// down to the deny-everything policy.
Handle bottom_refinement(HeapSet& heaps) {
  const Handle truth = inf::rule_truth_intro(heaps);
  const Handle imp = inf::rule_imp_intro(heaps, truth,
                                         syntax::make_false(heaps));
  Handle th = imp;
  th = inf::rule_forall_intro(heaps, th, "s", wellknown::kTypeMeta);
  th = inf::rule_forall_intro(heaps, th, "u", wellknown::kTypeHistory);
  th = inf::rule_forall_intro(heaps, th, "k", wellknown::kTypeNat);
  return th;
}

}  // namespace

TEST_CASE("boot installs the permit-everything policy") {
  Kernel kernel;
  HeapSet& heaps = kernel.heaps();
  CHECK(syntax::type_equal(heaps,
                           syntax::type_of(heaps, kernel.current_policy()),
                           kernel.policy_type()));
  const auto reified = kernel.reify({kMetaFsOpen, 1, 0});
  const Handle challenge =
      kernel.build_challenge(kernel.current_policy(), reified);
  CHECK(syntax::is_true_const(heaps, challenge));
}

TEST_CASE("numerals are unary and shared") {
  Kernel kernel;
  HeapSet& heaps = kernel.heaps();
  CHECK(kernel.numeral(3) == kernel.numeral(3));
  const Handle three = kernel.numeral(3);
  // suc (suc (suc zero))
  Handle walk = three;
  for (int i = 0; i < 3; ++i) {
    const auto* app = std::get_if<TermApplication>(&heaps.term(walk).payload);
    REQUIRE(app != nullptr);
    walk = app->right;
  }
  const auto* zero = std::get_if<TermConstant>(&heaps.term(walk).payload);
  REQUIRE(zero != nullptr);
  CHECK(zero->constant == wellknown::kConstZero);
}

TEST_CASE("reified state counts objects and stacks history") {
  Kernel kernel;
  HeapSet& heaps = kernel.heaps();
  const auto r1 = kernel.reify({kMetaFsRead, 3, 0});
  // The count snapshot predates the reification's own allocations.
  uint64_t n1 = 0;
  Handle walk = r1.count;
  while (true) {
    const auto* app = std::get_if<TermApplication>(&heaps.term(walk).payload);
    if (app == nullptr) break;
    ++n1;
    walk = app->right;
  }
  CHECK(n1 > 0);

  // Empty history reifies to the nil chain.
  const auto* nil = std::get_if<TermConstant>(&heaps.term(r1.history).payload);
  REQUIRE(nil != nullptr);
  CHECK(nil->constant == wellknown::kConstHistNil);

  kernel.record_event({kMetaFsOpen, 7, 0});
  kernel.record_event({kMetaFsRead, 3, 0});
  const auto r2 = kernel.reify({kMetaFsWrite, 4, 0});
  // Most recent event is the outermost cons cell.
  const auto* outer =
      std::get_if<TermApplication>(&heaps.term(r2.history).payload);
  REQUIRE(outer != nullptr);
  const auto* cell = std::get_if<TermApplication>(&heaps.term(outer->left).payload);
  REQUIRE(cell != nullptr);
  // cell->right is mkMeta 0x91 3 0; check the first numeral.
  const auto* triple =
      std::get_if<TermApplication>(&heaps.term(cell->right).payload);
  REQUIRE(triple != nullptr);
  CHECK(syntax::alpha_equal(heaps, triple->right, kernel.numeral(0)));
}

TEST_CASE("gating mints an obligation and discharge unlocks it") {
  Kernel kernel;
  HeapSet& heaps = kernel.heaps();
  const SyscallMeta meta{kMetaFsOpen, 1, 0};

  const GateOutcome first = kernel.gate(meta, 0);
  CHECK_FALSE(first.allowed);
  CHECK(first.obligation_id != 0);
  CHECK(syntax::is_true_const(heaps, first.challenge));

  // Claiming before discharge is Pending.
  CHECK(code_of([&] { kernel.gate(meta, first.obligation_id); }) ==
        Status::ObligationPending);

  kernel.discharge(first.obligation_id, inf::rule_truth_intro(heaps));
  const GateOutcome second = kernel.gate(meta, first.obligation_id);
  CHECK(second.allowed);

  // The obligation is consumed: a second claim is unknown.
  CHECK(code_of([&] { kernel.gate(meta, first.obligation_id); }) ==
        Status::ObligationUnknown);
  CHECK(code_of([&] {
          kernel.discharge(first.obligation_id, inf::rule_truth_intro(heaps));
        }) == Status::ObligationUnknown);
}

TEST_CASE("claims must match the recorded request") {
  Kernel kernel;
  HeapSet& heaps = kernel.heaps();
  const SyscallMeta meta{kMetaFsRead, 3, 0};
  const GateOutcome minted = kernel.gate(meta, 0);
  kernel.discharge(minted.obligation_id, inf::rule_truth_intro(heaps));

  CHECK(code_of([&] { kernel.gate({kMetaFsRead, 4, 0}, minted.obligation_id); }) ==
        Status::ObligationMismatch);
  CHECK(code_of([&] { kernel.gate({kMetaFsWrite, 3, 0}, minted.obligation_id); }) ==
        Status::ObligationMismatch);
  CHECK(code_of([&] { kernel.gate(meta, 999); }) == Status::ObligationUnknown);

  // A mismatch does not burn the obligation.
  CHECK(kernel.gate(meta, minted.obligation_id).allowed);
}

TEST_CASE("discharge screens the proof") {
  Kernel kernel;
  HeapSet& heaps = kernel.heaps();
  const GateOutcome minted = kernel.gate({kMetaFsOpen, 1, 0}, 0);

  // Hypotheses are rejected outright.
  const Handle assumed = inf::rule_assume(heaps, syntax::make_true(heaps));
  CHECK(code_of([&] { kernel.discharge(minted.obligation_id, assumed); }) ==
        Status::ProofRejected);

  // Wrong conclusion.
  const Handle x = syntax::allocate_variable(heaps, "x", wellknown::kTypeBool);
  const Handle refl = inf::rule_reflexivity(heaps, x);
  CHECK(code_of([&] { kernel.discharge(minted.obligation_id, refl); }) ==
        Status::ProofRejected);

  // A conclusion that merely beta-reduces to the challenge is accepted:
  // {} |- (\x:bool. x) T via equality modus ponens on a beta step.
  const Handle id = syntax::allocate_lambda(heaps, "x", wellknown::kTypeBool,
                                            x);
  const Handle redex =
      syntax::allocate_application(heaps, id, syntax::make_true(heaps));
  const Handle beta = inf::rule_beta(heaps, redex);
  const Handle flipped = inf::theorem_symmetry(heaps, beta);
  const Handle proof =
      inf::rule_equality_mp(heaps, flipped, inf::rule_truth_intro(heaps));
  kernel.discharge(minted.obligation_id, proof);
  CHECK(kernel.gate({kMetaFsOpen, 1, 0}, minted.obligation_id).allowed);
}

TEST_CASE("distinct requests yield distinct obligations") {
  Kernel kernel;
  const GateOutcome a = kernel.gate({kMetaFsOpen, 1, 0}, 0);
  const GateOutcome b = kernel.gate({kMetaFsOpen, 1, 0}, 0);
  CHECK(a.obligation_id != b.obligation_id);
  CHECK(kernel.find_obligation(a.obligation_id) != nullptr);
  CHECK(kernel.find_obligation(999) == nullptr);
}

TEST_CASE("policy installation demands a closed well-typed policy") {
  Kernel kernel;
  HeapSet& heaps = kernel.heaps();
  const Handle refinement = bottom_refinement(heaps);

  CHECK(code_of([&] {
          kernel.install_policy(syntax::make_true(heaps), refinement);
        }) == Status::TypeMismatch);

  const Handle open_body =
      syntax::allocate_variable(heaps, "leak", wellknown::kTypeBool);
  CHECK(code_of([&] {
          kernel.install_policy(policy_lambda(heaps, open_body), refinement);
        }) == Status::TypeMismatch);
}

TEST_CASE("jailing to the bottom policy and staying there") {
  Kernel kernel;
  HeapSet& heaps = kernel.heaps();
  const Handle bottom =
      policy_lambda(heaps, syntax::make_false(heaps));
  kernel.install_policy(bottom, bottom_refinement(heaps));
  CHECK(kernel.current_policy() == bottom);

  // Challenges now demand falsity.
  const GateOutcome minted = kernel.gate({kMetaFsOpen, 1, 0}, 0);
  CHECK(syntax::is_false_const(heaps, minted.challenge));
  CHECK(code_of([&] {
          kernel.discharge(minted.obligation_id, inf::rule_truth_intro(heaps));
        }) == Status::ProofRejected);

  // Re-widening to the permissive policy needs T ==> F, which is not
  // forthcoming; the old refinement proves the wrong direction.
  const Handle top = policy_lambda(heaps, syntax::make_true(heaps));
  CHECK(code_of([&] {
          kernel.install_policy(top, bottom_refinement(heaps));
        }) == Status::RefinementRejected);

  // Hypotheses sink a refinement before its conclusion is examined.
  const Handle hyp = inf::rule_assume(heaps, syntax::make_true(heaps));
  CHECK(code_of([&] { kernel.install_policy(bottom, hyp); }) ==
        Status::RefinementRejected);
}

TEST_CASE("installing the current policy over itself succeeds") {
  Kernel kernel;
  HeapSet& heaps = kernel.heaps();
  // forall k u s. T ==> T by discharging the assumption itself.
  const Handle t = syntax::make_true(heaps);
  const Handle at = inf::rule_assume(heaps, t);
  Handle th = inf::rule_imp_intro(heaps, at, t);
  th = inf::rule_forall_intro(heaps, th, "s", wellknown::kTypeMeta);
  th = inf::rule_forall_intro(heaps, th, "u", wellknown::kTypeHistory);
  th = inf::rule_forall_intro(heaps, th, "k", wellknown::kTypeNat);
  const Handle top = policy_lambda(heaps, syntax::make_true(heaps));
  kernel.install_policy(top, th);
  CHECK(kernel.current_policy() == top);
}

TEST_CASE("state digest moves with supervisory state") {
  Kernel kernel;
  const uint64_t d0 = kernel.state_digest();
  const GateOutcome minted = kernel.gate({kMetaFsOpen, 1, 0}, 0);
  const uint64_t d1 = kernel.state_digest();
  CHECK(d0 != d1);
  kernel.discharge(minted.obligation_id, inf::rule_truth_intro(kernel.heaps()));
  const uint64_t d2 = kernel.state_digest();
  CHECK(d1 != d2);
  kernel.record_event({kMetaFsOpen, 1, 0});
  CHECK(kernel.state_digest() != d2);
}

TEST_CASE("interned paths are stable and deterministic") {
  Kernel a;
  Kernel b;
  CHECK(a.intern_path("/etc/motd") == b.intern_path("/etc/motd"));
  const uint64_t first = a.intern_path("/etc/motd");
  const uint64_t second = a.intern_path("/var/log");
  CHECK(first != second);
  CHECK(a.intern_path("/etc/motd") == first);
}
