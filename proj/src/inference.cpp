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

#include "warden/inference.hpp"

#include <algorithm>
#include <utility>

#include "warden/syntax.hpp"

namespace warden::inference {

namespace syn = warden::syntax;

namespace {

// Sort by canonical key, break ties by handle so the order is total, then
// drop alpha-duplicates.
std::vector<Handle> canonicalize(const HeapSet& heaps,
                                 std::vector<Handle> hyps) {
  std::vector<std::pair<std::string, Handle>> keyed;
  keyed.reserve(hyps.size());
  for (Handle h : hyps) keyed.emplace_back(syn::canonical_key(heaps, h), h);
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first < b.first;
              return a.second.value < b.second.value;
            });
  std::vector<Handle> out;
  for (size_t i = 0; i < keyed.size(); ++i) {
    if (i > 0 && keyed[i].first == keyed[i - 1].first) continue;
    out.push_back(keyed[i].second);
  }
  return out;
}

std::vector<Handle> hyp_union(const HeapSet& heaps,
                              const std::vector<Handle>& a,
                              const std::vector<Handle>& b) {
  std::vector<Handle> merged = a;
  merged.insert(merged.end(), b.begin(), b.end());
  return canonicalize(heaps, merged);
}

std::vector<Handle> hyp_remove(const HeapSet& heaps, std::vector<Handle> hyps,
                               Handle term) {
  std::string key = syn::canonical_key(heaps, term);
  std::erase_if(hyps,
                [&](Handle h) { return syn::canonical_key(heaps, h) == key; });
  return hyps;
}

syn::BinaryParts require_equality(const HeapSet& heaps, Handle conclusion,
                                  Status on_failure) {
  auto eq = syn::as_equality(heaps, conclusion);
  if (!eq) throw KernelFault(on_failure, "conclusion is not an equality");
  return *eq;
}

}  // namespace

Handle allocate_theorem(HeapSet& heaps, std::vector<Handle> hypotheses,
                        Handle conclusion, bool axiom) {
  return heaps.allocate_theorem(TheoremEntry{
      canonicalize(heaps, std::move(hypotheses)), conclusion, axiom});
}

Handle rule_reflexivity(HeapSet& heaps, Handle term) {
  heaps.term(term);
  return allocate_theorem(heaps, {}, syn::make_equality(heaps, term, term));
}

Handle rule_transitivity(HeapSet& heaps, Handle th1, Handle th2) {
  const TheoremEntry a = heaps.theorem(th1);
  const TheoremEntry b = heaps.theorem(th2);
  auto e1 = require_equality(heaps, a.conclusion, Status::ShapeMismatch);
  auto e2 = require_equality(heaps, b.conclusion, Status::ShapeMismatch);
  if (!syn::alpha_equal(heaps, e1.rhs, e2.lhs))
    throw KernelFault(Status::SideConditionViolated,
                      "middle terms are not alpha-equivalent");
  return allocate_theorem(heaps, hyp_union(heaps, a.hypotheses, b.hypotheses),
                          syn::make_equality(heaps, e1.lhs, e2.rhs));
}

Handle rule_congruence_app(HeapSet& heaps, Handle th1, Handle th2) {
  const TheoremEntry a = heaps.theorem(th1);
  const TheoremEntry b = heaps.theorem(th2);
  auto fg = require_equality(heaps, a.conclusion, Status::ShapeMismatch);
  auto xy = require_equality(heaps, b.conclusion, Status::ShapeMismatch);
  syn::application_type(heaps, fg.lhs, xy.lhs);
  Handle fx = syn::allocate_application(heaps, fg.lhs, xy.lhs);
  Handle gy = syn::allocate_application(heaps, fg.rhs, xy.rhs);
  return allocate_theorem(heaps, hyp_union(heaps, a.hypotheses, b.hypotheses),
                          syn::make_equality(heaps, fx, gy));
}

Handle rule_congruence_lambda(HeapSet& heaps, const std::string& name,
                              Handle type, Handle th) {
  heaps.type(type);
  const TheoremEntry premise = heaps.theorem(th);
  auto rs = require_equality(heaps, premise.conclusion, Status::ShapeMismatch);
  for (Handle hyp : premise.hypotheses)
    if (syn::occurs_free(heaps, hyp, name, type))
      throw KernelFault(Status::SideConditionViolated,
                        "bound variable free in a hypothesis");
  Handle lhs = syn::allocate_lambda(heaps, name, type, rs.lhs);
  Handle rhs = syn::allocate_lambda(heaps, name, type, rs.rhs);
  return allocate_theorem(heaps, premise.hypotheses,
                          syn::make_equality(heaps, lhs, rhs));
}

Handle rule_beta(HeapSet& heaps, Handle term) {
  const auto* app = std::get_if<TermApplication>(&heaps.term(term).payload);
  if (!app)
    throw KernelFault(Status::ShapeMismatch, "term is not a beta-redex");
  const auto* lam = std::get_if<TermLambda>(&heaps.term(app->left).payload);
  if (!lam)
    throw KernelFault(Status::ShapeMismatch, "term is not a beta-redex");
  TermSubstitution sigma{{lam->bound_name, lam->bound_type, app->right}};
  Handle body = lam->body;
  Handle contracted = syn::substitute(heaps, body, sigma);
  return allocate_theorem(heaps, {},
                          syn::make_equality(heaps, term, contracted));
}

Handle rule_eta(HeapSet& heaps, Handle term) {
  const auto* lam = std::get_if<TermLambda>(&heaps.term(term).payload);
  if (!lam) throw KernelFault(Status::ShapeMismatch, "term is not a lambda");
  const auto* app = std::get_if<TermApplication>(&heaps.term(lam->body).payload);
  if (!app)
    throw KernelFault(Status::ShapeMismatch, "body is not an application");
  const auto* var = std::get_if<TermVariable>(&heaps.term(app->right).payload);
  if (!var || var->name != lam->bound_name ||
      !syn::type_equal(heaps, var->type, lam->bound_type))
    throw KernelFault(Status::ShapeMismatch,
                      "argument is not the bound variable");
  Handle fn = app->left;
  if (syn::occurs_free(heaps, fn, lam->bound_name, lam->bound_type))
    throw KernelFault(Status::SideConditionViolated,
                      "bound variable free in the function");
  return allocate_theorem(heaps, {}, syn::make_equality(heaps, term, fn));
}

Handle rule_assume(HeapSet& heaps, Handle term) {
  if (!syn::is_bool(heaps, term))
    throw KernelFault(Status::NotAProposition, "assumption is not boolean");
  return allocate_theorem(heaps, {term}, term);
}

Handle rule_equality_mp(HeapSet& heaps, Handle th1, Handle th2) {
  const TheoremEntry a = heaps.theorem(th1);
  const TheoremEntry b = heaps.theorem(th2);
  auto pq = require_equality(heaps, a.conclusion, Status::ShapeMismatch);
  if (!syn::is_bool(heaps, pq.lhs))
    throw KernelFault(Status::NotAProposition,
                      "equated terms are not propositions");
  if (!syn::alpha_equal(heaps, pq.lhs, b.conclusion))
    throw KernelFault(Status::SideConditionViolated,
                      "premise does not match the left side");
  return allocate_theorem(heaps, hyp_union(heaps, a.hypotheses, b.hypotheses),
                          pq.rhs);
}

Handle rule_deduct_antisym(HeapSet& heaps, Handle th1, Handle th2) {
  const TheoremEntry a = heaps.theorem(th1);
  const TheoremEntry b = heaps.theorem(th2);
  std::vector<Handle> left = hyp_remove(heaps, a.hypotheses, b.conclusion);
  std::vector<Handle> right = hyp_remove(heaps, b.hypotheses, a.conclusion);
  return allocate_theorem(
      heaps, hyp_union(heaps, left, right),
      syn::make_equality(heaps, a.conclusion, b.conclusion));
}

Handle rule_inst_term(HeapSet& heaps, Handle th,
                      const TermSubstitution& sigma) {
  const TheoremEntry premise = heaps.theorem(th);
  std::vector<Handle> hyps;
  hyps.reserve(premise.hypotheses.size());
  for (Handle hyp : premise.hypotheses)
    hyps.push_back(syn::substitute(heaps, hyp, sigma));
  Handle conclusion = syn::substitute(heaps, premise.conclusion, sigma);
  return allocate_theorem(heaps, std::move(hyps), conclusion);
}

Handle rule_inst_type(HeapSet& heaps, Handle th,
                      const TypeSubstitution& theta) {
  const TheoremEntry premise = heaps.theorem(th);
  std::vector<Handle> hyps;
  hyps.reserve(premise.hypotheses.size());
  for (Handle hyp : premise.hypotheses)
    hyps.push_back(syn::type_substitute_term(heaps, hyp, theta));
  Handle conclusion =
      syn::type_substitute_term(heaps, premise.conclusion, theta);
  return allocate_theorem(heaps, std::move(hyps), conclusion);
}

Handle rule_truth_intro(HeapSet& heaps) {
  return allocate_theorem(heaps, {}, syn::make_true(heaps));
}

Handle rule_falsity_elim(HeapSet& heaps, Handle th, Handle term) {
  const TheoremEntry premise = heaps.theorem(th);
  if (!syn::is_false_const(heaps, premise.conclusion))
    throw KernelFault(Status::ShapeMismatch, "conclusion is not falsity");
  if (!syn::is_bool(heaps, term))
    throw KernelFault(Status::NotAProposition, "target is not boolean");
  return allocate_theorem(heaps, premise.hypotheses, term);
}

Handle rule_imp_intro(HeapSet& heaps, Handle th, Handle term) {
  const TheoremEntry premise = heaps.theorem(th);
  if (!syn::is_bool(heaps, term))
    throw KernelFault(Status::NotAProposition, "antecedent is not boolean");
  std::vector<Handle> hyps = hyp_remove(heaps, premise.hypotheses, term);
  return allocate_theorem(
      heaps, std::move(hyps),
      syn::make_implication(heaps, term, premise.conclusion));
}

Handle rule_imp_elim(HeapSet& heaps, Handle th1, Handle th2) {
  const TheoremEntry a = heaps.theorem(th1);
  const TheoremEntry b = heaps.theorem(th2);
  auto imp = syn::as_implication(heaps, a.conclusion);
  if (!imp)
    throw KernelFault(Status::ShapeMismatch,
                      "conclusion is not an implication");
  if (!syn::alpha_equal(heaps, imp->lhs, b.conclusion))
    throw KernelFault(Status::SideConditionViolated,
                      "premise does not match the antecedent");
  return allocate_theorem(heaps, hyp_union(heaps, a.hypotheses, b.hypotheses),
                          imp->rhs);
}

Handle rule_forall_intro(HeapSet& heaps, Handle th, const std::string& name,
                         Handle type) {
  heaps.type(type);
  const TheoremEntry premise = heaps.theorem(th);
  for (Handle hyp : premise.hypotheses)
    if (syn::occurs_free(heaps, hyp, name, type))
      throw KernelFault(Status::SideConditionViolated,
                        "variable free in a hypothesis");
  return allocate_theorem(
      heaps, premise.hypotheses,
      syn::make_forall(heaps, name, type, premise.conclusion));
}

Handle rule_forall_elim(HeapSet& heaps, Handle th, Handle term) {
  const TheoremEntry premise = heaps.theorem(th);
  heaps.term(term);
  auto body = syn::as_forall(heaps, premise.conclusion);
  if (!body)
    throw KernelFault(Status::ShapeMismatch,
                      "conclusion is not a quantification");
  const auto* lam = std::get_if<TermLambda>(&heaps.term(*body).payload);
  if (!lam)
    throw KernelFault(Status::ShapeMismatch,
                      "quantified body is not a lambda");
  if (!syn::type_equal(heaps, syn::type_of(heaps, term), lam->bound_type))
    throw KernelFault(Status::TypeMismatch,
                      "witness type differs from the bound type");
  TermSubstitution sigma{{lam->bound_name, lam->bound_type, term}};
  Handle bodyh = lam->body;
  return allocate_theorem(heaps, premise.hypotheses,
                          syn::substitute(heaps, bodyh, sigma));
}

Handle theorem_symmetry(HeapSet& heaps, Handle pre) {
  const TheoremEntry premise = heaps.theorem(pre);
  auto eq = syn::as_equality(heaps, premise.conclusion);
  if (!eq)
    throw KernelFault(Status::NotAnEquality,
                      "conclusion is not an equality");
  return allocate_theorem(heaps, premise.hypotheses,
                          syn::make_equality(heaps, eq->rhs, eq->lhs));
}

}  // namespace warden::inference
