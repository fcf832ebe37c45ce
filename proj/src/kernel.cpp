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

#include "warden/kernel.hpp"

#include <utility>

#include "warden/inference.hpp"
#include "warden/syntax.hpp"

namespace warden {

namespace {

Handle fun_type(HeapSet& heaps, Handle domain, Handle range) {
  return heaps.allocate_type(TypeApplication{wellknown::kFormerFun,
                                             {domain, range}});
}

}  // namespace

Kernel::Kernel() { boot(); }

void Kernel::boot() {
  auto& h = heaps_;

  h.place_former(wellknown::kFormerProp, FormerInfo{"prop", 0});
  h.place_former(wellknown::kFormerFun, FormerInfo{"fun", 2});
  h.place_former(wellknown::kFormerNat, FormerInfo{"nat", 0});
  h.place_former(wellknown::kFormerMeta, FormerInfo{"meta", 0});
  h.place_former(wellknown::kFormerHistory, FormerInfo{"history", 0});

  h.place_type(wellknown::kTypeBool,
               TypeApplication{wellknown::kFormerProp, {}});
  h.place_type(wellknown::kTypeAlpha, TypeVariable{"A"});
  h.place_type(wellknown::kTypeNat, TypeApplication{wellknown::kFormerNat, {}});
  h.place_type(wellknown::kTypeMeta,
               TypeApplication{wellknown::kFormerMeta, {}});
  h.place_type(wellknown::kTypeHistory,
               TypeApplication{wellknown::kFormerHistory, {}});

  const Handle boolT = wellknown::kTypeBool;
  const Handle alpha = wellknown::kTypeAlpha;
  const Handle natT = wellknown::kTypeNat;
  const Handle metaT = wellknown::kTypeMeta;
  const Handle histT = wellknown::kTypeHistory;

  const Handle alpha_to_bool = fun_type(h, alpha, boolT);
  const Handle eq_ty = fun_type(h, alpha, alpha_to_bool);
  const Handle imp_ty = fun_type(h, boolT, fun_type(h, boolT, boolT));
  const Handle forall_ty = fun_type(h, alpha_to_bool, boolT);
  const Handle suc_ty = fun_type(h, natT, natT);
  const Handle mk_meta_ty =
      fun_type(h, natT, fun_type(h, natT, fun_type(h, natT, metaT)));
  const Handle hist_cons_ty = fun_type(h, metaT, fun_type(h, histT, histT));
  policy_type_ =
      fun_type(h, natT, fun_type(h, histT, fun_type(h, metaT, boolT)));

  h.place_constant(wellknown::kConstEq, ConstantInfo{"=", eq_ty});
  h.place_constant(wellknown::kConstTrue, ConstantInfo{"true", boolT});
  h.place_constant(wellknown::kConstFalse, ConstantInfo{"false", boolT});
  h.place_constant(wellknown::kConstImp, ConstantInfo{"==>", imp_ty});
  h.place_constant(wellknown::kConstForall, ConstantInfo{"forall", forall_ty});
  h.place_constant(wellknown::kConstZero, ConstantInfo{"zero", natT});
  h.place_constant(wellknown::kConstSuc, ConstantInfo{"suc", suc_ty});
  h.place_constant(wellknown::kConstMkMeta, ConstantInfo{"mkMeta", mk_meta_ty});
  h.place_constant(wellknown::kConstHistNil, ConstantInfo{"histNil", histT});
  h.place_constant(wellknown::kConstHistCons,
                   ConstantInfo{"histCons", hist_cons_ty});

  zero_term_ = syntax::allocate_constant(h, wellknown::kConstZero, {});
  suc_term_ = syntax::allocate_constant(h, wellknown::kConstSuc, {});
  mk_meta_term_ = syntax::allocate_constant(h, wellknown::kConstMkMeta, {});
  hist_nil_term_ = syntax::allocate_constant(h, wellknown::kConstHistNil, {});
  hist_cons_term_ = syntax::allocate_constant(h, wellknown::kConstHistCons, {});
  numerals_.push_back(zero_term_);

  auto var = [&](const char* name, Handle ty) {
    return syntax::allocate_variable(h, name, ty);
  };
  auto app = [&](Handle f, Handle x) {
    return syntax::allocate_application(h, f, x);
  };
  auto imp = [&](Handle a, Handle b) {
    return syntax::make_implication(h, a, b);
  };
  auto eq = [&](Handle a, Handle b) { return syntax::make_equality(h, a, b); };
  auto all = [&](const char* name, Handle ty, Handle body) {
    return syntax::make_forall(h, name, ty, body);
  };
  const Handle falsum = syntax::make_false(h);

  {
    const Handle n = var("n", natT);
    const Handle m = var("m", natT);
    const Handle body =
        imp(eq(app(suc_term_, n), app(suc_term_, m)), eq(n, m));
    h.place_theorem(wellknown::kAxiomSucInjective,
                    TheoremEntry{{}, all("n", natT, all("m", natT, body)),
                                 true});
  }
  {
    const Handle n = var("n", natT);
    const Handle body = imp(eq(app(suc_term_, n), zero_term_), falsum);
    h.place_theorem(wellknown::kAxiomSucNotZero,
                    TheoremEntry{{}, all("n", natT, body), true});
  }

  auto mk3 = [&](Handle a, Handle b, Handle c) {
    return app(app(app(mk_meta_term_, a), b), c);
  };
  const Handle a1 = var("a", natT);
  const Handle b1 = var("b", natT);
  const Handle c1 = var("c", natT);
  const Handle a2 = var("a'", natT);
  const Handle b2 = var("b'", natT);
  const Handle c2 = var("c'", natT);
  const Handle meta_eq = eq(mk3(a1, b1, c1), mk3(a2, b2, c2));
  const Handle inj_handles[3] = {wellknown::kAxiomMkMetaInj1,
                                 wellknown::kAxiomMkMetaInj2,
                                 wellknown::kAxiomMkMetaInj3};
  const Handle lhs_vars[3] = {a1, b1, c1};
  const Handle rhs_vars[3] = {a2, b2, c2};
  for (int i = 0; i < 3; ++i) {
    Handle body = imp(meta_eq, eq(lhs_vars[i], rhs_vars[i]));
    body = all("c'", natT, body);
    body = all("b'", natT, body);
    body = all("a'", natT, body);
    body = all("c", natT, body);
    body = all("b", natT, body);
    body = all("a", natT, body);
    h.place_theorem(inj_handles[i], TheoremEntry{{}, body, true});
  }

  auto cons = [&](Handle m, Handle t) {
    return app(app(hist_cons_term_, m), t);
  };
  {
    const Handle m = var("m", metaT);
    const Handle t = var("t", histT);
    const Handle body = imp(eq(cons(m, t), hist_nil_term_), falsum);
    h.place_theorem(wellknown::kAxiomHistConsNotNil,
                    TheoremEntry{{}, all("m", metaT, all("t", histT, body)),
                                 true});
  }
  {
    const Handle m = var("m", metaT);
    const Handle t = var("t", histT);
    const Handle m2 = var("m'", metaT);
    const Handle t2 = var("t'", histT);
    Handle body = imp(eq(cons(m, t), cons(m2, t2)), eq(m, m2));
    body = all("t'", histT, body);
    body = all("m'", metaT, body);
    body = all("t", histT, body);
    body = all("m", metaT, body);
    h.place_theorem(wellknown::kAxiomHistConsInjHead,
                    TheoremEntry{{}, body, true});
  }

  // Boot policy permits everything.
  Handle body = syntax::make_true(h);
  body = syntax::allocate_lambda(h, "s", metaT, body);
  body = syntax::allocate_lambda(h, "u", histT, body);
  policy_ = syntax::allocate_lambda(h, "k", natT, body);
}

Handle Kernel::suc_of(Handle n) {
  return syntax::allocate_application(heaps_, suc_term_, n);
}

Handle Kernel::numeral(uint64_t n) {
  while (numerals_.size() <= n) {
    numerals_.push_back(suc_of(numerals_.back()));
  }
  return numerals_[n];
}

Handle Kernel::meta_triple(const SyscallMeta& meta) {
  // Numerals for all three fields are materialized before the spine so the
  // cache, not the spine, owns the deep parts.
  const Handle n0 = numeral(meta.number);
  const Handle n1 = numeral(meta.arg1);
  const Handle n2 = numeral(meta.arg2);
  Handle t = syntax::allocate_application(heaps_, mk_meta_term_, n0);
  t = syntax::allocate_application(heaps_, t, n1);
  return syntax::allocate_application(heaps_, t, n2);
}

Handle Kernel::history_term() {
  Handle chain = hist_nil_term_;
  for (const SyscallMeta& event : history_) {
    const Handle m = meta_triple(event);
    Handle c = syntax::allocate_application(heaps_, hist_cons_term_, m);
    chain = syntax::allocate_application(heaps_, c, chain);
  }
  return chain;
}

Kernel::Reified Kernel::reify(const SyscallMeta& meta) {
  // The count reflects the heap as it stood before reification itself
  // allocates anything.
  const uint64_t count = heaps_.object_count();
  Reified r;
  r.count = numeral(count);
  r.history = history_term();
  r.request = meta_triple(meta);
  return r;
}

Handle Kernel::build_challenge(Handle policy, const Reified& r) {
  Handle t = syntax::allocate_application(heaps_, policy, r.count);
  t = syntax::allocate_application(heaps_, t, r.history);
  t = syntax::allocate_application(heaps_, t, r.request);
  return syntax::beta_normalize(heaps_, t);
}

const ObligationRecord* Kernel::find_obligation(uint64_t id) const {
  for (const ObligationRecord& rec : obligations_) {
    if (rec.id == id) return &rec;
  }
  return nullptr;
}

uint64_t Kernel::intern_path(const std::string& normalized) {
  for (uint64_t i = 0; i < interned_.size(); ++i) {
    if (interned_[i] == normalized) return i;
  }
  interned_.push_back(normalized);
  return interned_.size() - 1;
}

uint64_t Kernel::state_digest() const {
  Fnv1a d;
  d.mix_u64(heaps_.heap_digest());
  d.mix_u64(policy_.value);
  d.mix_u64(obligations_.size());
  for (const ObligationRecord& rec : obligations_) {
    d.mix_u64(rec.id);
    d.mix_u64(rec.meta.number);
    d.mix_u64(rec.meta.arg1);
    d.mix_u64(rec.meta.arg2);
    d.mix_u64(rec.count.value);
    d.mix_u64(rec.history.value);
    d.mix_u64(rec.request.value);
    d.mix_u64(rec.challenge.value);
    d.mix_u64(rec.discharged ? 1 : 0);
    d.mix_u64(rec.consumed ? 1 : 0);
  }
  d.mix_u64(next_obligation_);
  d.mix_u64(history_.size());
  for (const SyscallMeta& event : history_) {
    d.mix_u64(event.number);
    d.mix_u64(event.arg1);
    d.mix_u64(event.arg2);
  }
  d.mix_u64(interned_.size());
  for (const std::string& path : interned_) d.mix_string(path);
  vfs_.mix_into(d);
  return d.value();
}

}  // namespace warden
