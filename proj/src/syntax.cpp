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

#include "warden/syntax.hpp"

#include <algorithm>
#include <unordered_set>
#include <utility>

namespace warden::syntax {

namespace {

// Substitution recursion is bounded by the depth of the walked term, never by
// the depth of the images plugged in. The guard turns a runaway walk into a
// reported kernel limit instead of exhausting the host stack.
constexpr int kMaxWalkDepth = 8192;

void bump(int& depth) {
  if (++depth > kMaxWalkDepth)
    throw KernelFault(Status::ArenaExhausted, "kernel recursion limit");
}

}  // namespace

bool type_equal(const HeapSet& heaps, Handle a, Handle b) {
  if (a == b) return true;
  const TypePayload& pa = heaps.type(a);
  const TypePayload& pb = heaps.type(b);
  if (const auto* va = std::get_if<TypeVariable>(&pa)) {
    const auto* vb = std::get_if<TypeVariable>(&pb);
    return vb && va->name == vb->name;
  }
  const auto& aa = std::get<TypeApplication>(pa);
  const auto* ab = std::get_if<TypeApplication>(&pb);
  if (!ab || aa.former != ab->former || aa.args.size() != ab->args.size())
    return false;
  for (size_t i = 0; i < aa.args.size(); ++i)
    if (!type_equal(heaps, aa.args[i], ab->args[i])) return false;
  return true;
}

Handle type_substitute_type(HeapSet& heaps, Handle ty,
                            const TypeSubstitution& theta) {
  if (theta.empty()) return ty;
  const TypePayload& p = heaps.type(ty);
  if (const auto* v = std::get_if<TypeVariable>(&p)) {
    auto it = theta.find(v->name);
    return it == theta.end() ? ty : it->second;
  }
  const auto& app = std::get<TypeApplication>(p);
  std::vector<Handle> args;
  args.reserve(app.args.size());
  bool changed = false;
  for (Handle arg : app.args) {
    Handle sub = type_substitute_type(heaps, arg, theta);
    changed |= sub != arg;
    args.push_back(sub);
  }
  if (!changed) return ty;
  return heaps.allocate_type(TypeApplication{app.former, std::move(args)});
}

std::vector<std::string> type_variables(const HeapSet& heaps, Handle ty) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  std::vector<Handle> stack{ty};
  while (!stack.empty()) {
    Handle h = stack.back();
    stack.pop_back();
    const TypePayload& p = heaps.type(h);
    if (const auto* v = std::get_if<TypeVariable>(&p)) {
      if (seen.insert(v->name).second) out.push_back(v->name);
    } else {
      const auto& app = std::get<TypeApplication>(p);
      for (auto it = app.args.rbegin(); it != app.args.rend(); ++it)
        stack.push_back(*it);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Constructors.

Handle allocate_variable(HeapSet& heaps, std::string name, Handle type) {
  heaps.type(type);
  return heaps.allocate_term(
      TermEntry{TermVariable{std::move(name), type}, type});
}

Handle allocate_constant(HeapSet& heaps, Handle constant,
                         TypeSubstitution instantiation) {
  const ConstantInfo& info = heaps.constant(constant);
  for (const auto& [name, ty] : instantiation) heaps.type(ty);
  Handle at = type_substitute_type(heaps, info.declared_type, instantiation);
  return heaps.allocate_term(
      TermEntry{TermConstant{constant, std::move(instantiation)}, at});
}

Handle application_type(const HeapSet& heaps, Handle left, Handle right) {
  Handle lty = type_of(heaps, left);
  Handle rty = type_of(heaps, right);
  const TypePayload& p = heaps.type(lty);
  const auto* app = std::get_if<TypeApplication>(&p);
  if (!app || app->former != wellknown::kFormerFun)
    throw KernelFault(Status::TypeMismatch, "applied term is not a function");
  if (!type_equal(heaps, app->args[0], rty))
    throw KernelFault(Status::TypeMismatch, "argument type differs");
  return app->args[1];
}

Handle allocate_application(HeapSet& heaps, Handle left, Handle right) {
  Handle result = application_type(heaps, left, right);
  return heaps.allocate_term(TermEntry{TermApplication{left, right}, result});
}

Handle allocate_lambda(HeapSet& heaps, std::string bound_name,
                       Handle bound_type, Handle body) {
  heaps.type(bound_type);
  Handle bty = type_of(heaps, body);
  Handle fn = heaps.allocate_type(
      TypeApplication{wellknown::kFormerFun, {bound_type, bty}});
  return heaps.allocate_term(
      TermEntry{TermLambda{std::move(bound_name), bound_type, body}, fn});
}

// ---------------------------------------------------------------------------
// Canonical keys and alpha-equivalence.

namespace {

void type_key(const HeapSet& heaps, Handle ty, std::string& out) {
  const TypePayload& p = heaps.type(ty);
  if (const auto* v = std::get_if<TypeVariable>(&p)) {
    out += 'v';
    out += std::to_string(v->name.size());
    out += ':';
    out += v->name;
    return;
  }
  const auto& app = std::get<TypeApplication>(p);
  out += 'a';
  out += std::to_string(app.former.value);
  out += '(';
  for (Handle arg : app.args) {
    type_key(heaps, arg, out);
    out += ',';
  }
  out += ')';
}

// Iterative term walk with binder bookkeeping; terms routinely contain long
// application spines (unary numerals), so no recursion on term structure.
struct WalkAction {
  enum Tag { Visit, Emit, Unbind } tag;
  Handle handle;
  const char* text = nullptr;
};

}  // namespace

std::string canonical_key(const HeapSet& heaps, Handle term) {
  std::string out;
  std::vector<std::pair<std::string, Handle>> bound;
  std::vector<WalkAction> stack{{WalkAction::Visit, term}};
  while (!stack.empty()) {
    WalkAction act = stack.back();
    stack.pop_back();
    switch (act.tag) {
      case WalkAction::Emit:
        out += act.text;
        continue;
      case WalkAction::Unbind:
        bound.pop_back();
        continue;
      case WalkAction::Visit:
        break;
    }
    const TermPayload& p = heaps.term(act.handle).payload;
    if (const auto* v = std::get_if<TermVariable>(&p)) {
      bool hit = false;
      for (size_t i = bound.size(); i-- > 0;) {
        if (bound[i].first == v->name &&
            type_equal(heaps, bound[i].second, v->type)) {
          out += 'b';
          out += std::to_string(bound.size() - 1 - i);
          out += ';';
          hit = true;
          break;
        }
      }
      if (!hit) {
        out += 'f';
        out += std::to_string(v->name.size());
        out += ':';
        out += v->name;
        out += ':';
        type_key(heaps, v->type, out);
        out += ';';
      }
    } else if (const auto* c = std::get_if<TermConstant>(&p)) {
      out += 'c';
      out += std::to_string(c->constant.value);
      out += ':';
      type_key(heaps, heaps.term(act.handle).type, out);
      out += ';';
    } else if (const auto* a = std::get_if<TermApplication>(&p)) {
      out += "A(";
      stack.push_back({WalkAction::Emit, {}, ")"});
      stack.push_back({WalkAction::Visit, a->right});
      stack.push_back({WalkAction::Emit, {}, ","});
      stack.push_back({WalkAction::Visit, a->left});
    } else {
      const auto& l = std::get<TermLambda>(p);
      out += 'L';
      type_key(heaps, l.bound_type, out);
      out += '(';
      stack.push_back({WalkAction::Emit, {}, ")"});
      stack.push_back({WalkAction::Unbind, {}});
      stack.push_back({WalkAction::Visit, l.body});
      bound.emplace_back(l.bound_name, l.bound_type);
    }
  }
  return out;
}

bool alpha_equal(const HeapSet& heaps, Handle a, Handle b) {
  if (a == b) {
    heaps.term(a);
    return true;
  }
  return canonical_key(heaps, a) == canonical_key(heaps, b);
}

std::vector<Handle> free_variables(const HeapSet& heaps, Handle term) {
  std::vector<Handle> out;
  std::unordered_set<std::string> seen;
  std::vector<std::pair<std::string, Handle>> bound;
  std::vector<WalkAction> stack{{WalkAction::Visit, term}};
  while (!stack.empty()) {
    WalkAction act = stack.back();
    stack.pop_back();
    if (act.tag == WalkAction::Unbind) {
      bound.pop_back();
      continue;
    }
    const TermPayload& p = heaps.term(act.handle).payload;
    if (const auto* v = std::get_if<TermVariable>(&p)) {
      bool shadowed = false;
      for (size_t i = bound.size(); i-- > 0;) {
        if (bound[i].first == v->name &&
            type_equal(heaps, bound[i].second, v->type)) {
          shadowed = true;
          break;
        }
      }
      if (shadowed) continue;
      std::string key = v->name;
      key += '\0';
      type_key(heaps, v->type, key);
      if (seen.insert(std::move(key)).second) out.push_back(act.handle);
    } else if (const auto* a = std::get_if<TermApplication>(&p)) {
      stack.push_back({WalkAction::Visit, a->right});
      stack.push_back({WalkAction::Visit, a->left});
    } else if (const auto* l = std::get_if<TermLambda>(&p)) {
      stack.push_back({WalkAction::Unbind, {}});
      stack.push_back({WalkAction::Visit, l->body});
      bound.emplace_back(l->bound_name, l->bound_type);
    }
  }
  return out;
}

bool occurs_free(const HeapSet& heaps, Handle term, const std::string& name,
                 Handle type) {
  std::vector<std::pair<std::string, Handle>> bound;
  std::vector<WalkAction> stack{{WalkAction::Visit, term}};
  while (!stack.empty()) {
    WalkAction act = stack.back();
    stack.pop_back();
    if (act.tag == WalkAction::Unbind) {
      bound.pop_back();
      continue;
    }
    const TermPayload& p = heaps.term(act.handle).payload;
    if (const auto* v = std::get_if<TermVariable>(&p)) {
      if (v->name != name || !type_equal(heaps, v->type, type)) continue;
      bool shadowed = false;
      for (size_t i = bound.size(); i-- > 0;) {
        if (bound[i].first == name &&
            type_equal(heaps, bound[i].second, type)) {
          shadowed = true;
          break;
        }
      }
      if (!shadowed) return true;
    } else if (const auto* a = std::get_if<TermApplication>(&p)) {
      stack.push_back({WalkAction::Visit, a->right});
      stack.push_back({WalkAction::Visit, a->left});
    } else if (const auto* l = std::get_if<TermLambda>(&p)) {
      stack.push_back({WalkAction::Unbind, {}});
      stack.push_back({WalkAction::Visit, l->body});
      bound.emplace_back(l->bound_name, l->bound_type);
    }
  }
  return false;
}

bool is_beta_normal(const HeapSet& heaps, Handle term) {
  std::vector<Handle> stack{term};
  while (!stack.empty()) {
    Handle h = stack.back();
    stack.pop_back();
    const TermPayload& p = heaps.term(h).payload;
    if (const auto* a = std::get_if<TermApplication>(&p)) {
      if (std::holds_alternative<TermLambda>(heaps.term(a->left).payload))
        return false;
      stack.push_back(a->left);
      stack.push_back(a->right);
    } else if (const auto* l = std::get_if<TermLambda>(&p)) {
      stack.push_back(l->body);
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Substitution.

namespace {

std::unordered_set<std::string> free_names(const HeapSet& heaps, Handle term) {
  std::unordered_set<std::string> out;
  // Conservative: every variable name occurring anywhere, bound or free.
  // Only used to steer freshening away from collisions.
  std::vector<Handle> stack{term};
  while (!stack.empty()) {
    Handle h = stack.back();
    stack.pop_back();
    const TermPayload& p = heaps.term(h).payload;
    if (const auto* v = std::get_if<TermVariable>(&p)) {
      out.insert(v->name);
    } else if (const auto* a = std::get_if<TermApplication>(&p)) {
      stack.push_back(a->left);
      stack.push_back(a->right);
    } else if (const auto* l = std::get_if<TermLambda>(&p)) {
      out.insert(l->bound_name);
      stack.push_back(l->body);
    }
  }
  return out;
}

std::string fresh_name(std::string base,
                       const std::unordered_set<std::string>& avoid) {
  do {
    base += '\'';
  } while (avoid.count(base));
  return base;
}

Handle substitute_rec(HeapSet& heaps, Handle term,
                      const TermSubstitution& sigma, int depth) {
  bump(depth);
  if (sigma.empty()) return term;
  const TermPayload& p = heaps.term(term).payload;
  if (const auto* v = std::get_if<TermVariable>(&p)) {
    for (const auto& e : sigma)
      if (e.name == v->name && type_equal(heaps, e.type, v->type))
        return e.image;
    return term;
  }
  if (std::holds_alternative<TermConstant>(p)) return term;
  if (const auto* a = std::get_if<TermApplication>(&p)) {
    Handle left = a->left;
    Handle right = a->right;
    Handle l = substitute_rec(heaps, left, sigma, depth);
    Handle r = substitute_rec(heaps, right, sigma, depth);
    if (l == left && r == right) return term;
    return heaps.allocate_term(
        TermEntry{TermApplication{l, r}, heaps.term(term).type});
  }
  // Copies, not references: allocation below may rehash the arena.
  const auto& lam = std::get<TermLambda>(p);
  const std::string orig_name = lam.bound_name;
  const Handle bound_type = lam.bound_type;
  const Handle orig_body = lam.body;
  std::string bound_name = orig_name;
  Handle body = orig_body;
  TermSubstitution inner;
  for (const auto& e : sigma) {
    if (e.name == bound_name && type_equal(heaps, e.type, bound_type))
      continue;  // shadowed
    if (occurs_free(heaps, body, e.name, e.type)) inner.push_back(e);
  }
  if (inner.empty()) return term;
  bool capture = false;
  for (const auto& e : inner)
    if (occurs_free(heaps, e.image, bound_name, bound_type)) {
      capture = true;
      break;
    }
  if (capture) {
    std::unordered_set<std::string> avoid = free_names(heaps, body);
    for (const auto& e : inner)
      for (const std::string& n : free_names(heaps, e.image)) avoid.insert(n);
    std::string renamed = fresh_name(bound_name, avoid);
    Handle fresh_var = allocate_variable(heaps, renamed, bound_type);
    TermSubstitution rename{{bound_name, bound_type, fresh_var}};
    body = substitute_rec(heaps, body, rename, depth);
    bound_name = std::move(renamed);
  }
  Handle sub = substitute_rec(heaps, body, inner, depth);
  if (sub == orig_body && bound_name == orig_name) return term;
  return heaps.allocate_term(
      TermEntry{TermLambda{std::move(bound_name), bound_type, sub},
                heaps.term(term).type});
}

}  // namespace

Handle substitute(HeapSet& heaps, Handle term, const TermSubstitution& sigma) {
  heaps.term(term);
  for (size_t i = 0; i < sigma.size(); ++i) {
    heaps.type(sigma[i].type);
    if (!type_equal(heaps, type_of(heaps, sigma[i].image), sigma[i].type))
      throw KernelFault(Status::TypeMismatch,
                        "substitution image type differs from its variable");
    for (size_t j = 0; j < i; ++j)
      if (sigma[i].name == sigma[j].name &&
          type_equal(heaps, sigma[i].type, sigma[j].type))
        throw KernelFault(Status::ShapeMismatch,
                          "duplicate substitution key");
  }
  return substitute_rec(heaps, term, sigma, 0);
}

namespace {

Handle type_substitute_rec(HeapSet& heaps, Handle term,
                           const TypeSubstitution& theta, int depth) {
  // Payload fields are copied out before any allocation; allocating may
  // rehash the arena and move the entry.
  bump(depth);
  const TermEntry& entry = heaps.term(term);
  const Handle cached_type = entry.type;
  const TermPayload& p = entry.payload;
  if (const auto* v = std::get_if<TermVariable>(&p)) {
    const std::string name = v->name;
    const Handle vty = v->type;
    Handle ty = type_substitute_type(heaps, vty, theta);
    if (ty == vty) return term;
    return heaps.allocate_term(TermEntry{TermVariable{name, ty}, ty});
  }
  if (const auto* c = std::get_if<TermConstant>(&p)) {
    const Handle constant = c->constant;
    const TypeSubstitution stored = c->instantiation;
    Handle ty = type_substitute_type(heaps, cached_type, theta);
    if (ty == cached_type) return term;
    // Compose: instantiate previously-mapped variables through theta and pick
    // up declared type variables theta newly touches.
    TypeSubstitution inst;
    for (const auto& [name, image] : stored)
      inst[name] = type_substitute_type(heaps, image, theta);
    for (const std::string& name :
         type_variables(heaps, heaps.constant(constant).declared_type)) {
      if (inst.count(name)) continue;
      auto it = theta.find(name);
      if (it != theta.end()) inst[name] = it->second;
    }
    return heaps.allocate_term(
        TermEntry{TermConstant{constant, std::move(inst)}, ty});
  }
  if (const auto* a = std::get_if<TermApplication>(&p)) {
    const Handle left = a->left;
    const Handle right = a->right;
    Handle l = type_substitute_rec(heaps, left, theta, depth);
    Handle r = type_substitute_rec(heaps, right, theta, depth);
    if (l == left && r == right) return term;
    return heaps.allocate_term(
        TermEntry{TermApplication{l, r},
                  type_substitute_type(heaps, cached_type, theta)});
  }
  const auto& lam = std::get<TermLambda>(p);
  const std::string orig_name = lam.bound_name;
  const Handle orig_type = lam.bound_type;
  const Handle orig_body = lam.body;
  Handle bty = type_substitute_type(heaps, orig_type, theta);
  std::string bound_name = orig_name;
  Handle body = orig_body;
  // Instantiation can merge a free variable (name, sigma) of the body with
  // the bound variable when theta maps both types to the same image.
  bool capture = false;
  for (Handle fv : free_variables(heaps, body)) {
    const auto& v = std::get<TermVariable>(heaps.term(fv).payload);
    if (v.name != bound_name) continue;
    const Handle shadow_type = v.type;
    if (type_equal(heaps, shadow_type, orig_type)) continue;  // the binder
    if (type_equal(heaps, type_substitute_type(heaps, shadow_type, theta),
                   bty)) {
      capture = true;
      break;
    }
  }
  if (capture) {
    std::string renamed = fresh_name(bound_name, free_names(heaps, body));
    Handle fresh_var = allocate_variable(heaps, renamed, orig_type);
    body =
        substitute_rec(heaps, body, {{bound_name, orig_type, fresh_var}}, depth);
    bound_name = std::move(renamed);
  }
  Handle sub = type_substitute_rec(heaps, body, theta, depth);
  if (sub == orig_body && bty == orig_type && bound_name == orig_name)
    return term;
  return heaps.allocate_term(
      TermEntry{TermLambda{std::move(bound_name), bty, sub},
                type_substitute_type(heaps, cached_type, theta)});
}

}  // namespace

Handle type_substitute_term(HeapSet& heaps, Handle term,
                            const TypeSubstitution& theta) {
  heaps.term(term);
  for (const auto& [name, ty] : theta) heaps.type(ty);
  if (theta.empty()) return term;
  return type_substitute_rec(heaps, term, theta, 0);
}

// ---------------------------------------------------------------------------
// Normalization: normal order, iterative with memoization so shared numeral
// spines are traversed once.

Handle beta_normalize(HeapSet& heaps, Handle term) {
  heaps.term(term);
  struct Frame {
    Handle h;
    int stage = 0;
    Handle aux{};
  };
  std::unordered_map<uint64_t, Handle> memo;
  std::vector<Frame> stack{{term}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.stage == 0 && memo.count(f.h.value)) {
      stack.pop_back();
      continue;
    }
    const TermEntry& entry = heaps.term(f.h);
    const TermPayload& p = entry.payload;
    if (std::holds_alternative<TermVariable>(p) ||
        std::holds_alternative<TermConstant>(p)) {
      memo[f.h.value] = f.h;
      stack.pop_back();
      continue;
    }
    if (const auto* lam = std::get_if<TermLambda>(&p)) {
      if (f.stage == 0) {
        f.stage = 1;
        stack.push_back({lam->body});
        continue;
      }
      Handle body = memo.at(lam->body.value);
      memo[f.h.value] =
          body == lam->body
              ? f.h
              : heaps.allocate_term(TermEntry{
                    TermLambda{lam->bound_name, lam->bound_type, body},
                    entry.type});
      stack.pop_back();
      continue;
    }
    const auto& app = std::get<TermApplication>(p);
    if (f.stage == 0) {
      f.stage = 1;
      stack.push_back({app.left});
      continue;
    }
    if (f.stage == 1) {
      Handle l = memo.at(app.left.value);
      const TermPayload& lp = heaps.term(l).payload;
      if (const auto* lam = std::get_if<TermLambda>(&lp)) {
        Handle contracted = substitute(
            heaps, lam->body,
            {{lam->bound_name, lam->bound_type, app.right}});
        f.stage = 3;
        f.aux = contracted;
        stack.push_back({contracted});
        continue;
      }
      f.stage = 2;
      stack.push_back({app.right});
      continue;
    }
    if (f.stage == 2) {
      Handle l = memo.at(app.left.value);
      Handle r = memo.at(app.right.value);
      memo[f.h.value] =
          (l == app.left && r == app.right)
              ? f.h
              : heaps.allocate_term(
                    TermEntry{TermApplication{l, r}, entry.type});
      stack.pop_back();
      continue;
    }
    memo[f.h.value] = memo.at(f.aux.value);
    stack.pop_back();
  }
  return memo.at(term.value);
}

// ---------------------------------------------------------------------------
// Connective helpers.

Handle make_equality(HeapSet& heaps, Handle lhs, Handle rhs) {
  Handle at = type_of(heaps, lhs);
  if (!type_equal(heaps, at, type_of(heaps, rhs)))
    throw KernelFault(Status::TypeMismatch, "equated terms differ in type");
  const auto& alpha = std::get<TypeVariable>(heaps.type(wellknown::kTypeAlpha));
  Handle eq = allocate_constant(heaps, wellknown::kConstEq,
                                TypeSubstitution{{alpha.name, at}});
  return allocate_application(heaps, allocate_application(heaps, eq, lhs),
                              rhs);
}

Handle make_implication(HeapSet& heaps, Handle antecedent, Handle consequent) {
  Handle imp = allocate_constant(heaps, wellknown::kConstImp, {});
  return allocate_application(
      heaps, allocate_application(heaps, imp, antecedent), consequent);
}

Handle make_forall(HeapSet& heaps, std::string bound_name, Handle bound_type,
                   Handle body) {
  const auto& alpha = std::get<TypeVariable>(heaps.type(wellknown::kTypeAlpha));
  Handle fa = allocate_constant(heaps, wellknown::kConstForall,
                                TypeSubstitution{{alpha.name, bound_type}});
  Handle lam =
      allocate_lambda(heaps, std::move(bound_name), bound_type, body);
  return allocate_application(heaps, fa, lam);
}

Handle make_true(HeapSet& heaps) {
  return allocate_constant(heaps, wellknown::kConstTrue, {});
}

Handle make_false(HeapSet& heaps) {
  return allocate_constant(heaps, wellknown::kConstFalse, {});
}

namespace {

const TermConstant* head_constant(const HeapSet& heaps, Handle term) {
  return std::get_if<TermConstant>(&heaps.term(term).payload);
}

}  // namespace

std::optional<BinaryParts> as_equality(const HeapSet& heaps, Handle term) {
  const auto* outer = std::get_if<TermApplication>(&heaps.term(term).payload);
  if (!outer) return std::nullopt;
  const auto* inner =
      std::get_if<TermApplication>(&heaps.term(outer->left).payload);
  if (!inner) return std::nullopt;
  const TermConstant* head = head_constant(heaps, inner->left);
  if (!head || head->constant != wellknown::kConstEq) return std::nullopt;
  return BinaryParts{inner->right, outer->right};
}

std::optional<BinaryParts> as_implication(const HeapSet& heaps, Handle term) {
  const auto* outer = std::get_if<TermApplication>(&heaps.term(term).payload);
  if (!outer) return std::nullopt;
  const auto* inner =
      std::get_if<TermApplication>(&heaps.term(outer->left).payload);
  if (!inner) return std::nullopt;
  const TermConstant* head = head_constant(heaps, inner->left);
  if (!head || head->constant != wellknown::kConstImp) return std::nullopt;
  return BinaryParts{inner->right, outer->right};
}

std::optional<Handle> as_forall(const HeapSet& heaps, Handle term) {
  const auto* outer = std::get_if<TermApplication>(&heaps.term(term).payload);
  if (!outer) return std::nullopt;
  const TermConstant* head = head_constant(heaps, outer->left);
  if (!head || head->constant != wellknown::kConstForall) return std::nullopt;
  return outer->right;
}

bool is_true_const(const HeapSet& heaps, Handle term) {
  const TermConstant* c = head_constant(heaps, term);
  return c && c->constant == wellknown::kConstTrue;
}

bool is_false_const(const HeapSet& heaps, Handle term) {
  const TermConstant* c = head_constant(heaps, term);
  return c && c->constant == wellknown::kConstFalse;
}

}  // namespace warden::syntax
