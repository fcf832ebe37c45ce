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

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace warden {

// Opaque name for one kernel object. The only currency that ever crosses the
// privilege boundary; arithmetic on handle values has no meaning.
struct Handle {
  uint64_t value = 0;
  friend constexpr auto operator<=>(const Handle&, const Handle&) = default;
};

enum class Kind : uint8_t {
  TypeFormer = 0,
  Type = 1,
  Constant = 2,
  Term = 3,
  Theorem = 4,
};

constexpr int kKindCount = 5;

std::string_view kind_name(Kind k);

// ---------------------------------------------------------------------------
// Object payloads. These live only inside kernel heaps; guests see handles.

struct FormerInfo {
  std::string name;
  uint64_t arity = 0;
};

struct TypeVariable {
  std::string name;
};

struct TypeApplication {
  Handle former;
  std::vector<Handle> args;  // length equals the former's arity
};

using TypePayload = std::variant<TypeVariable, TypeApplication>;

struct ConstantInfo {
  std::string name;
  Handle declared_type;  // most general type; may contain type variables
};

// Finite map from type-variable names to type handles. Unused keys are
// ignored when instantiating a constant.
using TypeSubstitution = std::map<std::string, Handle>;

struct TermVariable {
  std::string name;
  Handle type;
};

struct TermConstant {
  Handle constant;
  TypeSubstitution instantiation;
};

struct TermApplication {
  Handle left;
  Handle right;
};

struct TermLambda {
  std::string bound_name;
  Handle bound_type;
  Handle body;
};

using TermPayload =
    std::variant<TermVariable, TermConstant, TermApplication, TermLambda>;

struct TermEntry {
  TermPayload payload;
  Handle type;  // computed once at allocation; terms are intrinsically typed
};

// A sequent. Hypotheses are deduplicated modulo alpha-equivalence and stored
// in canonical order so splitting is deterministic.
struct TheoremEntry {
  std::vector<Handle> hypotheses;
  Handle conclusion;
  bool axiom = false;
};

// Term-level substitution key: a variable is identified by name and type.
struct TermSubstitutionEntry {
  std::string name;
  Handle type;       // of the variable being replaced
  Handle image;      // term whose type must equal `type`
};

using TermSubstitution = std::vector<TermSubstitutionEntry>;

}  // namespace warden
