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
// Independent reference implementations used to cross-check the kernel.
// Everything here works on plain trees read straight out of the arenas and
// never calls the kernel's own syntax algorithms, so a bug would have to be
// made twice, in two representations, to go unnoticed.

#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "warden/arena.hpp"
#include "warden/objects.hpp"

namespace oracle {

struct Type {
  bool is_var = false;
  std::string name;             // variable name
  uint64_t former = 0;          // application former handle value
  std::vector<Type> args;

  bool operator==(const Type& other) const {
    if (is_var != other.is_var) return false;
    if (is_var) return name == other.name;
    return former == other.former && args == other.args;
  }
};

inline Type ty_var(std::string name) {
  Type t;
  t.is_var = true;
  t.name = std::move(name);
  return t;
}

inline Type ty_app(uint64_t former, std::vector<Type> args) {
  Type t;
  t.former = former;
  t.args = std::move(args);
  return t;
}

inline std::string type_key(const Type& t) {
  if (t.is_var) return "v:" + t.name + ";";
  std::string out = "a" + std::to_string(t.former) + "(";
  for (const Type& arg : t.args) out += type_key(arg);
  return out + ")";
}

struct Term {
  enum Tag { Var, Const, App, Lam } tag = Var;
  std::string name;         // Var name or Lam bound name
  Type type;                // Var type or Lam bound type
  uint64_t constant = 0;    // Const handle value
  Type const_type;          // Const declared type with instantiation applied
  std::vector<Term> kids;   // App: left, right; Lam: body

  bool operator==(const Term&) const = default;
};

inline Term mk_var(std::string name, Type ty) {
  Term t;
  t.tag = Term::Var;
  t.name = std::move(name);
  t.type = std::move(ty);
  return t;
}

inline Term mk_const(uint64_t handle, Type instantiated) {
  Term t;
  t.tag = Term::Const;
  t.constant = handle;
  t.const_type = std::move(instantiated);
  return t;
}

inline Term mk_app(Term l, Term r) {
  Term t;
  t.tag = Term::App;
  t.kids.push_back(std::move(l));
  t.kids.push_back(std::move(r));
  return t;
}

inline Term mk_lam(std::string name, Type ty, Term body) {
  Term t;
  t.tag = Term::Lam;
  t.name = std::move(name);
  t.type = std::move(ty);
  t.kids.push_back(std::move(body));
  return t;
}

// ---------------------------------------------------------------------------
// Reification: direct arena reads, no kernel syntax calls.

inline Type reify_type(const warden::HeapSet& heaps, warden::Handle h) {
  const warden::TypePayload& payload = heaps.types().get(h);
  if (const auto* v = std::get_if<warden::TypeVariable>(&payload)) {
    return ty_var(v->name);
  }
  const auto& app = std::get<warden::TypeApplication>(payload);
  std::vector<Type> args;
  for (warden::Handle arg : app.args) args.push_back(reify_type(heaps, arg));
  return ty_app(app.former.value, std::move(args));
}

inline Type apply_type_subst(const Type& t,
                             const std::map<std::string, Type>& theta) {
  if (t.is_var) {
    auto it = theta.find(t.name);
    return it == theta.end() ? t : it->second;
  }
  Type out;
  out.former = t.former;
  for (const Type& arg : t.args) out.args.push_back(apply_type_subst(arg, theta));
  return out;
}

inline Term reify_term(const warden::HeapSet& heaps, warden::Handle h) {
  const warden::TermEntry& entry = heaps.terms().get(h);
  if (const auto* v = std::get_if<warden::TermVariable>(&entry.payload)) {
    return mk_var(v->name, reify_type(heaps, v->type));
  }
  if (const auto* c = std::get_if<warden::TermConstant>(&entry.payload)) {
    const warden::ConstantInfo& info = heaps.constants().get(c->constant);
    std::map<std::string, Type> theta;
    for (const auto& [name, ty] : c->instantiation) {
      theta[name] = reify_type(heaps, ty);
    }
    const Type declared = reify_type(heaps, info.declared_type);
    return mk_const(c->constant.value, apply_type_subst(declared, theta));
  }
  if (const auto* a = std::get_if<warden::TermApplication>(&entry.payload)) {
    return mk_app(reify_term(heaps, a->left), reify_term(heaps, a->right));
  }
  const auto& lam = std::get<warden::TermLambda>(entry.payload);
  return mk_lam(lam.bound_name, reify_type(heaps, lam.bound_type),
                reify_term(heaps, lam.body));
}

// ---------------------------------------------------------------------------
// de Bruijn translation; string equality is alpha-equivalence.

inline void debruijn_rec(const Term& t,
                         std::vector<std::pair<std::string, std::string>>& env,
                         std::string& out) {
  switch (t.tag) {
    case Term::Var: {
      const std::string key = type_key(t.type);
      for (size_t i = env.size(); i-- > 0;) {
        if (env[i].first == t.name && env[i].second == key) {
          out += "b" + std::to_string(env.size() - 1 - i) + ";";
          return;
        }
      }
      out += "f:" + t.name + ":" + key + ";";
      return;
    }
    case Term::Const:
      out += "c" + std::to_string(t.constant) + ":" + type_key(t.const_type) +
             ";";
      return;
    case Term::App:
      out += "A(";
      debruijn_rec(t.kids[0], env, out);
      out += ",";
      debruijn_rec(t.kids[1], env, out);
      out += ")";
      return;
    case Term::Lam:
      out += "L" + type_key(t.type) + "(";
      env.emplace_back(t.name, type_key(t.type));
      debruijn_rec(t.kids[0], env, out);
      env.pop_back();
      out += ")";
      return;
  }
}

inline std::string debruijn(const Term& t) {
  std::vector<std::pair<std::string, std::string>> env;
  std::string out;
  debruijn_rec(t, env, out);
  return out;
}

inline bool alpha_eq(const Term& a, const Term& b) {
  return debruijn(a) == debruijn(b);
}

// ---------------------------------------------------------------------------
// Free variables, first occurrence first.

inline void free_vars_rec(const Term& t,
                          std::vector<std::pair<std::string, Type>>& bound,
                          std::vector<std::pair<std::string, Type>>& out) {
  switch (t.tag) {
    case Term::Var: {
      for (const auto& [name, ty] : bound) {
        if (name == t.name && ty == t.type) return;
      }
      for (const auto& [name, ty] : out) {
        if (name == t.name && ty == t.type) return;
      }
      out.emplace_back(t.name, t.type);
      return;
    }
    case Term::Const:
      return;
    case Term::App:
      free_vars_rec(t.kids[0], bound, out);
      free_vars_rec(t.kids[1], bound, out);
      return;
    case Term::Lam:
      bound.emplace_back(t.name, t.type);
      free_vars_rec(t.kids[0], bound, out);
      bound.pop_back();
      return;
  }
}

inline std::vector<std::pair<std::string, Type>> free_vars(const Term& t) {
  std::vector<std::pair<std::string, Type>> bound, out;
  free_vars_rec(t, bound, out);
  return out;
}

inline bool is_free_in(const std::string& name, const Type& ty, const Term& t) {
  for (const auto& [n, tau] : free_vars(t)) {
    if (n == name && tau == ty) return true;
  }
  return false;
}

inline void all_names_rec(const Term& t, std::set<std::string>& out) {
  switch (t.tag) {
    case Term::Var:
      out.insert(t.name);
      return;
    case Term::Const:
      return;
    case Term::App:
      all_names_rec(t.kids[0], out);
      all_names_rec(t.kids[1], out);
      return;
    case Term::Lam:
      out.insert(t.name);
      all_names_rec(t.kids[0], out);
      return;
  }
}

// ---------------------------------------------------------------------------
// Naive capture-avoiding substitution with explicit renaming. Keys are
// (name, type) pairs; images replace free occurrences simultaneously.

using Subst = std::vector<std::pair<std::pair<std::string, Type>, Term>>;

inline const Term* subst_lookup(const Subst& sigma, const std::string& name,
                                const Type& ty) {
  for (const auto& [key, image] : sigma) {
    if (key.first == name && key.second == ty) return &image;
  }
  return nullptr;
}

inline std::string fresh_against(const std::string& base,
                                 const std::set<std::string>& avoid) {
  std::string name = base;
  while (avoid.count(name)) name += "'";
  return name;
}

inline Term subst(const Term& t, const Subst& sigma) {
  switch (t.tag) {
    case Term::Var: {
      const Term* image = subst_lookup(sigma, t.name, t.type);
      return image ? *image : t;
    }
    case Term::Const:
      return t;
    case Term::App:
      return mk_app(subst(t.kids[0], sigma), subst(t.kids[1], sigma));
    case Term::Lam: {
      // Keep only keys that are not shadowed and actually occur free in the
      // body; then rename the binder if any surviving image captures it.
      Subst inner;
      for (const auto& entry : sigma) {
        if (entry.first.first == t.name && entry.first.second == t.type) {
          continue;
        }
        if (is_free_in(entry.first.first, entry.first.second, t.kids[0])) {
          inner.push_back(entry);
        }
      }
      if (inner.empty()) return t;
      bool captured = false;
      for (const auto& [key, image] : inner) {
        if (is_free_in(t.name, t.type, image)) {
          captured = true;
          break;
        }
      }
      if (!captured) {
        return mk_lam(t.name, t.type, subst(t.kids[0], inner));
      }
      std::set<std::string> avoid;
      all_names_rec(t.kids[0], avoid);
      for (const auto& [key, image] : inner) all_names_rec(image, avoid);
      const std::string fresh = fresh_against(t.name, avoid);
      Subst rename;
      rename.push_back({{t.name, t.type}, mk_var(fresh, t.type)});
      const Term renamed_body = subst(t.kids[0], rename);
      return mk_lam(fresh, t.type, subst(renamed_body, inner));
    }
  }
  throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Naive normal-order beta normalization.

inline bool reduce_leftmost(const Term& t, Term& out) {
  if (t.tag == Term::App && t.kids[0].tag == Term::Lam) {
    const Term& lam = t.kids[0];
    Subst sigma;
    sigma.push_back({{lam.name, lam.type}, t.kids[1]});
    out = subst(lam.kids[0], sigma);
    return true;
  }
  switch (t.tag) {
    case Term::Var:
    case Term::Const:
      return false;
    case Term::App: {
      Term reduced;
      if (reduce_leftmost(t.kids[0], reduced)) {
        out = mk_app(reduced, t.kids[1]);
        return true;
      }
      if (reduce_leftmost(t.kids[1], reduced)) {
        out = mk_app(t.kids[0], reduced);
        return true;
      }
      return false;
    }
    case Term::Lam: {
      Term reduced;
      if (reduce_leftmost(t.kids[0], reduced)) {
        out = mk_lam(t.name, t.type, reduced);
        return true;
      }
      return false;
    }
  }
  return false;
}

inline Term normalize(Term t, int max_steps = 100000) {
  Term next;
  int steps = 0;
  while (reduce_leftmost(t, next)) {
    t = std::move(next);
    if (++steps > max_steps) {
      throw std::logic_error("oracle normalization step bound exceeded");
    }
  }
  return t;
}

inline bool has_redex(const Term& t) {
  if (t.tag == Term::App && t.kids[0].tag == Term::Lam) return true;
  for (const Term& kid : t.kids) {
    if (has_redex(kid)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Reference type checker. Constants carry their instantiated type already.

inline std::optional<Type> typecheck(const Term& t) {
  switch (t.tag) {
    case Term::Var:
      return t.type;
    case Term::Const:
      return t.const_type;
    case Term::App: {
      const auto fn = typecheck(t.kids[0]);
      const auto arg = typecheck(t.kids[1]);
      if (!fn || !arg) return std::nullopt;
      // A function type is fun-former applied to domain and codomain.
      if (fn->is_var || fn->former != 1 || fn->args.size() != 2) {
        return std::nullopt;
      }
      if (!(fn->args[0] == *arg)) return std::nullopt;
      return fn->args[1];
    }
    case Term::Lam: {
      const auto body = typecheck(t.kids[0]);
      if (!body) return std::nullopt;
      return ty_app(1, {t.type, *body});
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Object count by direct walk, for the reification oracle.

inline uint64_t count_objects(const warden::HeapSet& heaps) {
  return heaps.formers().size() + heaps.types().size() +
         heaps.constants().size() + heaps.terms().size() +
         heaps.theorems().size();
}

}  // namespace oracle
