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
// The documented preallocated handle table. These values are part of the
// system interface; guests may hard-code them.

#pragma once

#include "warden/objects.hpp"

namespace warden::wellknown {

// Type-formers.
inline constexpr Handle kFormerProp{0};
inline constexpr Handle kFormerFun{1};
inline constexpr Handle kFormerNat{2};
inline constexpr Handle kFormerMeta{3};
inline constexpr Handle kFormerHistory{4};

// Types.
inline constexpr Handle kTypeBool{8};
inline constexpr Handle kTypeAlpha{9};
inline constexpr Handle kTypeNat{10};
inline constexpr Handle kTypeMeta{11};
inline constexpr Handle kTypeHistory{12};

// Constants.
inline constexpr Handle kConstEq{16};
inline constexpr Handle kConstTrue{17};
inline constexpr Handle kConstFalse{18};
inline constexpr Handle kConstImp{19};
inline constexpr Handle kConstForall{20};
inline constexpr Handle kConstZero{21};
inline constexpr Handle kConstSuc{22};
inline constexpr Handle kConstMkMeta{23};
inline constexpr Handle kConstHistNil{24};
inline constexpr Handle kConstHistCons{25};

// Axiom theorems: constructor freeness and injectivity for nat, meta, and
// history, enabling disequality proofs over syscall metadata.
inline constexpr Handle kAxiomSucInjective{32};
inline constexpr Handle kAxiomSucNotZero{33};
inline constexpr Handle kAxiomMkMetaInj1{34};
inline constexpr Handle kAxiomMkMetaInj2{35};
inline constexpr Handle kAxiomMkMetaInj3{36};
inline constexpr Handle kAxiomHistConsNotNil{37};
inline constexpr Handle kAxiomHistConsInjHead{38};

}  // namespace warden::wellknown
