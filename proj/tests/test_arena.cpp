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
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "warden/arena.hpp"
#include "warden/kernel.hpp"
#include "warden/syntax.hpp"

using namespace warden;

namespace {

Handle some_bool_var(HeapSet& heaps, const std::string& name) {
  return syntax::allocate_variable(heaps, name, wellknown::kTypeBool);
}

// Walks every payload of every live object and checks that each referenced
// handle is live in the arena of its expected kind.
void check_inductivity(const HeapSet& heaps) {
  for (uint64_t v : heaps.types().order()) {
    const TypePayload& p = heaps.types().get(Handle{v});
    if (const auto* app = std::get_if<TypeApplication>(&p)) {
      REQUIRE(heaps.is_live(Kind::TypeFormer, app->former));
      for (Handle arg : app->args) REQUIRE(heaps.is_live(Kind::Type, arg));
    }
  }
  for (uint64_t v : heaps.constants().order()) {
    const ConstantInfo& c = heaps.constants().get(Handle{v});
    REQUIRE(heaps.is_live(Kind::Type, c.declared_type));
  }
  for (uint64_t v : heaps.terms().order()) {
    const TermEntry& e = heaps.terms().get(Handle{v});
    REQUIRE(heaps.is_live(Kind::Type, e.type));
    if (const auto* var = std::get_if<TermVariable>(&e.payload)) {
      REQUIRE(heaps.is_live(Kind::Type, var->type));
    } else if (const auto* c = std::get_if<TermConstant>(&e.payload)) {
      REQUIRE(heaps.is_live(Kind::Constant, c->constant));
      for (const auto& [name, ty] : c->instantiation) {
        REQUIRE(heaps.is_live(Kind::Type, ty));
      }
    } else if (const auto* app = std::get_if<TermApplication>(&e.payload)) {
      REQUIRE(heaps.is_live(Kind::Term, app->left));
      REQUIRE(heaps.is_live(Kind::Term, app->right));
    } else if (const auto* lam = std::get_if<TermLambda>(&e.payload)) {
      REQUIRE(heaps.is_live(Kind::Type, lam->bound_type));
      REQUIRE(heaps.is_live(Kind::Term, lam->body));
    }
  }
  for (uint64_t v : heaps.theorems().order()) {
    const TheoremEntry& t = heaps.theorems().get(Handle{v});
    REQUIRE(heaps.is_live(Kind::Term, t.conclusion));
    for (Handle h : t.hypotheses) REQUIRE(heaps.is_live(Kind::Term, h));
  }
}

}  // namespace

TEST_CASE("allocate then resolve round trips the payload") {
  Kernel kernel;
  HeapSet& heaps = kernel.heaps();
  const Handle h = some_bool_var(heaps, "x");
  const TermEntry& entry = heaps.term(h);
  const auto* var = std::get_if<TermVariable>(&entry.payload);
  REQUIRE(var != nullptr);
  CHECK(var->name == "x");
  CHECK(var->type == wellknown::kTypeBool);
}

TEST_CASE("consecutive allocations return distinct handles") {
  Kernel kernel;
  HeapSet& heaps = kernel.heaps();
  const Handle a = some_bool_var(heaps, "x");
  const Handle b = some_bool_var(heaps, "x");
  CHECK(a != b);
  // Same payload, distinct objects: alpha-equivalence is term equality, not
  // handle identity.
  CHECK(syntax::alpha_equal(heaps, a, b));
}

TEST_CASE("never-issued handle reports DanglingHandle") {
  Kernel kernel;
  const Handle bogus{0xFFFF0000};
  CHECK_THROWS_AS((void)kernel.heaps().term(bogus), KernelFault);
  try {
    (void)kernel.heaps().term(bogus);
    FAIL("expected a fault");
  } catch (const KernelFault& fault) {
    CHECK(fault.code() == Status::DanglingHandle);
  }
}

TEST_CASE("live handle of another kind reports KindMismatch") {
  Kernel kernel;
  HeapSet& heaps = kernel.heaps();
  const Handle term = some_bool_var(heaps, "x");
  try {
    (void)heaps.theorem(term);
    FAIL("expected a fault");
  } catch (const KernelFault& fault) {
    CHECK(fault.code() == Status::KindMismatch);
  }
  // And the documented preallocations hold their kinds.
  CHECK(heaps.is_live(Kind::Constant, wellknown::kConstEq));
  CHECK(heaps.is_live(Kind::Type, wellknown::kTypeBool));
  CHECK(heaps.is_live(Kind::Theorem, wellknown::kAxiomSucInjective));
  CHECK_FALSE(heaps.is_live(Kind::Term, wellknown::kConstEq));
}

TEST_CASE("is_live agrees with resolve success for random handle values") {
  Kernel kernel;
  HeapSet& heaps = kernel.heaps();
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    some_bool_var(heaps, "v" + std::to_string(i));
  }
  for (int i = 0; i < 2000; ++i) {
    const Handle h{rng() % (heaps.next_handle_value() + 64)};
    const bool live = heaps.is_live(Kind::Term, h);
    bool resolved = true;
    try {
      (void)heaps.term(h);
    } catch (const KernelFault&) {
      resolved = false;
    }
    CHECK(live == resolved);
  }
}

TEST_CASE("preallocated table matches its documentation") {
  Kernel kernel;
  const HeapSet& heaps = kernel.heaps();

  CHECK(heaps.former(wellknown::kFormerProp).name == "prop");
  CHECK(heaps.former(wellknown::kFormerProp).arity == 0);
  CHECK(heaps.former(wellknown::kFormerFun).name == "fun");
  CHECK(heaps.former(wellknown::kFormerFun).arity == 2);
  CHECK(heaps.former(wellknown::kFormerNat).name == "nat");
  CHECK(heaps.former(wellknown::kFormerMeta).name == "meta");
  CHECK(heaps.former(wellknown::kFormerHistory).name == "history");

  // bool is the nullary application of prop.
  const auto& boolp = heaps.type(wellknown::kTypeBool);
  const auto* ba = std::get_if<TypeApplication>(&boolp);
  REQUIRE(ba != nullptr);
  CHECK(ba->former == wellknown::kFormerProp);
  CHECK(ba->args.empty());
  const auto& alpha = heaps.type(wellknown::kTypeAlpha);
  const auto* av = std::get_if<TypeVariable>(&alpha);
  REQUIRE(av != nullptr);
  CHECK(av->name == "A");

  CHECK(heaps.constant(wellknown::kConstEq).name == "=");
  CHECK(heaps.constant(wellknown::kConstTrue).name == "true");
  CHECK(heaps.constant(wellknown::kConstFalse).name == "false");
  CHECK(heaps.constant(wellknown::kConstImp).name == "==>");
  CHECK(heaps.constant(wellknown::kConstForall).name == "forall");
  CHECK(heaps.constant(wellknown::kConstZero).name == "zero");
  CHECK(heaps.constant(wellknown::kConstSuc).name == "suc");
  CHECK(heaps.constant(wellknown::kConstMkMeta).name == "mkMeta");
  CHECK(heaps.constant(wellknown::kConstHistNil).name == "histNil");
  CHECK(heaps.constant(wellknown::kConstHistCons).name == "histCons");

  for (uint64_t v = 32; v <= 38; ++v) {
    const TheoremEntry& axiom = heaps.theorem(Handle{v});
    CHECK(axiom.axiom);
    CHECK(axiom.hypotheses.empty());
  }

  CHECK(heaps.next_handle_value() >= HeapSet::kFirstDynamicHandle);
}

TEST_CASE("immutability: payloads never change underneath a handle") {
  Kernel kernel;
  HeapSet& heaps = kernel.heaps();
  const Handle h = some_bool_var(heaps, "pinned");
  const oracle::Term before = oracle::reify_term(heaps, h);
  for (int i = 0; i < 100; ++i) {
    some_bool_var(heaps, "noise" + std::to_string(i));
    syntax::make_true(heaps);
  }
  const oracle::Term after = oracle::reify_term(heaps, h);
  CHECK(before == after);
}

TEST_CASE("10k random allocations keep the object graph inductive") {
  Kernel kernel;
  HeapSet& heaps = kernel.heaps();
  std::mt19937_64 rng(11);
  std::vector<Handle> types{wellknown::kTypeBool, wellknown::kTypeNat};
  std::vector<Handle> terms;
  std::set<uint64_t> seen;
  const auto record = [&](Handle h) {
    CHECK(seen.insert(h.value).second);
    return h;
  };

  for (int i = 0; i < 10000; ++i) {
    switch (rng() % 5) {
      case 0: {
        const Handle dom = types[rng() % types.size()];
        const Handle cod = types[rng() % types.size()];
        types.push_back(record(heaps.allocate_type(
            TypeApplication{wellknown::kFormerFun, {dom, cod}})));
        break;
      }
      case 1:
        terms.push_back(record(syntax::allocate_variable(
            heaps, "x" + std::to_string(rng() % 7),
            types[rng() % types.size()])));
        break;
      case 2:
        terms.push_back(record(
            syntax::allocate_constant(heaps, wellknown::kConstTrue, {})));
        break;
      case 3: {
        if (terms.empty()) break;
        const Handle body = terms[rng() % terms.size()];
        terms.push_back(record(syntax::allocate_lambda(
            heaps, "b" + std::to_string(rng() % 3),
            types[rng() % types.size()], body)));
        break;
      }
      case 4: {
        if (terms.empty()) break;
        const Handle left = terms[rng() % terms.size()];
        const Handle right = terms[rng() % terms.size()];
        try {
          terms.push_back(record(
              syntax::allocate_application(heaps, left, right)));
        } catch (const KernelFault& fault) {
          CHECK(fault.code() == Status::TypeMismatch);
        }
        break;
      }
    }
  }
  check_inductivity(heaps);
}

TEST_CASE("heap digest is stable when nothing is allocated and moves when "
          "something is") {
  Kernel kernel;
  HeapSet& heaps = kernel.heaps();
  const uint64_t before = heaps.heap_digest();
  try {
    (void)heaps.term(Handle{0xFFFF0000});
  } catch (const KernelFault&) {
  }
  CHECK(heaps.heap_digest() == before);
  some_bool_var(heaps, "x");
  CHECK(heaps.heap_digest() != before);
}

TEST_CASE("rollback restores digest, count, and next handle") {
  Kernel kernel;
  HeapSet& heaps = kernel.heaps();
  const auto cp = heaps.checkpoint();
  const uint64_t digest = heaps.heap_digest();
  const uint64_t count = heaps.object_count();
  const uint64_t next = heaps.next_handle_value();
  const Handle scratch = some_bool_var(heaps, "scratch");
  syntax::make_true(heaps);
  CHECK(heaps.heap_digest() != digest);
  heaps.rollback(cp);
  CHECK(heaps.heap_digest() == digest);
  CHECK(heaps.object_count() == count);
  CHECK(heaps.next_handle_value() == next);
  CHECK_FALSE(heaps.is_live(Kind::Term, scratch));
  check_inductivity(heaps);
}
