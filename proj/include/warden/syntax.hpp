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
// Operations on the HOL object language. Terms are name-carrying and
// intrinsically typed; a variable is identified by its name together with its
// type, and term equality is alpha-equivalence throughout.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "warden/arena.hpp"
#include "warden/objects.hpp"
#include "warden/wellknown.hpp"

namespace warden::syntax {

// Structural equality is type equality; there are no binders at the type
// level.
bool type_equal(const HeapSet& heaps, Handle a, Handle b);

// Applies a type substitution to a type, reusing the input handle when
// nothing changes.
Handle type_substitute_type(HeapSet& heaps, Handle ty,
                            const TypeSubstitution& theta);

// Names of the type variables occurring in a type.
std::vector<std::string> type_variables(const HeapSet& heaps, Handle ty);

// ---------------------------------------------------------------------------
// Checked term constructors. These are the only paths that build terms, so
// intrinsic typing holds for every live term.

Handle allocate_variable(HeapSet& heaps, std::string name, Handle type);
Handle allocate_constant(HeapSet& heaps, Handle constant,
                         TypeSubstitution instantiation);
Handle allocate_application(HeapSet& heaps, Handle left, Handle right);
Handle allocate_lambda(HeapSet& heaps, std::string bound_name,
                       Handle bound_type, Handle body);

// The type an application of left to right would have; throws TypeMismatch
// without allocating, so callers can validate before mutating.
Handle application_type(const HeapSet& heaps, Handle left, Handle right);

inline Handle type_of(const HeapSet& heaps, Handle term) {
  return heaps.term(term).type;
}

// ---------------------------------------------------------------------------
// Queries.

// Canonical form: equal keys iff the terms are alpha-equivalent. Bound
// variables are rendered as binder distances, free variables by name and
// type, constants by handle and instantiated type.
std::string canonical_key(const HeapSet& heaps, Handle term);

bool alpha_equal(const HeapSet& heaps, Handle a, Handle b);

// Free variables as handles to variable subterms, first occurrence first,
// deduplicated by name and type.
std::vector<Handle> free_variables(const HeapSet& heaps, Handle term);

bool occurs_free(const HeapSet& heaps, Handle term, const std::string& name,
                 Handle type);

bool is_beta_normal(const HeapSet& heaps, Handle term);

// ---------------------------------------------------------------------------
// Substitution and normalization.

// Capture-avoiding simultaneous substitution. Binders in the way of capture
// are renamed by appending ' until fresh. Rejects duplicate keys
// (ShapeMismatch) and images whose type differs from their key's
// (TypeMismatch). Returns the input handle when nothing changes.
Handle substitute(HeapSet& heaps, Handle term, const TermSubstitution& sigma);

// Rewrites every type inside a term, including variable and bound-variable
// types, renaming binders where instantiation would identify a bound
// variable with a free one.
Handle type_substitute_term(HeapSet& heaps, Handle term,
                            const TypeSubstitution& theta);

Handle beta_normalize(HeapSet& heaps, Handle term);

// ---------------------------------------------------------------------------
// Connective helpers over the preallocated constants.

Handle make_equality(HeapSet& heaps, Handle lhs, Handle rhs);
Handle make_implication(HeapSet& heaps, Handle antecedent, Handle consequent);
Handle make_forall(HeapSet& heaps, std::string bound_name, Handle bound_type,
                   Handle body);
Handle make_true(HeapSet& heaps);
Handle make_false(HeapSet& heaps);

struct BinaryParts {
  Handle lhs;
  Handle rhs;
};

// Shape destructors; nullopt when the term is not of the requested shape.
std::optional<BinaryParts> as_equality(const HeapSet& heaps, Handle term);
std::optional<BinaryParts> as_implication(const HeapSet& heaps, Handle term);
// Returns the quantifier body (the term forall is applied to).
std::optional<Handle> as_forall(const HeapSet& heaps, Handle term);
bool is_true_const(const HeapSet& heaps, Handle term);
bool is_false_const(const HeapSet& heaps, Handle term);

inline bool is_bool(const HeapSet& heaps, Handle term) {
  return type_equal(heaps, type_of(heaps, term), wellknown::kTypeBool);
}

}  // namespace warden::syntax
