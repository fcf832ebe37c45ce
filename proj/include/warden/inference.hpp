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
// The trusted inference rules. These functions are the only way a theorem is
// ever allocated, so whatever they accept is the whole logic. Hypotheses are
// kept sorted by canonical key and deduplicated modulo alpha-equivalence.

#pragma once

#include <string>
#include <vector>

#include "warden/arena.hpp"
#include "warden/objects.hpp"

namespace warden::inference {

// Canonicalizes and allocates. Used by the rules below and by boot to seed
// the axioms; not reachable from any syscall.
Handle allocate_theorem(HeapSet& heaps, std::vector<Handle> hypotheses,
                        Handle conclusion, bool axiom = false);

//                                              --------
//                                              {} |- t = t
Handle rule_reflexivity(HeapSet& heaps, Handle term);

// G |- r = s    D |- s' = t     (s alpha s')
// ------------------------------------------
//               G u D |- r = t
Handle rule_transitivity(HeapSet& heaps, Handle th1, Handle th2);

// G |- f = g    D |- x = y      (f : A -> B, x : A)
// -------------------------------------------------
//               G u D |- f x = g y
Handle rule_congruence_app(HeapSet& heaps, Handle th1, Handle th2);

//        G |- r = s             (name:t not free in G)
// ----------------------------------------
// G |- (\name:t. r) = (\name:t. s)
Handle rule_congruence_lambda(HeapSet& heaps, const std::string& name,
                              Handle type, Handle th);

//                      ------------------------------
//                      {} |- (\x:t. b) a = b[a/x]
Handle rule_beta(HeapSet& heaps, Handle term);

//                      ----------------------  (x not free in f)
//                      {} |- (\x:t. f x) = f
Handle rule_eta(HeapSet& heaps, Handle term);

//                           ----------  (p : bool)
//                           {p} |- p
Handle rule_assume(HeapSet& heaps, Handle term);

// G |- p = q    D |- p'         (p alpha p')
// ------------------------------------------
//               G u D |- q
Handle rule_equality_mp(HeapSet& heaps, Handle th1, Handle th2);

//    G |- p    D |- q
// ---------------------------
// (G - {q}) u (D - {p}) |- p = q
Handle rule_deduct_antisym(HeapSet& heaps, Handle th1, Handle th2);

//   G |- c
// ----------- (sigma type-preserving, capture-avoiding)
// sG |- sc
Handle rule_inst_term(HeapSet& heaps, Handle th, const TermSubstitution& sigma);

Handle rule_inst_type(HeapSet& heaps, Handle th, const TypeSubstitution& theta);

//                              ---------
//                              {} |- T
Handle rule_truth_intro(HeapSet& heaps);

//   G |- F
// ----------- (p : bool)
//   G |- p
Handle rule_falsity_elim(HeapSet& heaps, Handle th, Handle term);

//      G |- q
// ------------------- (p : bool)
// G - {p} |- p ==> q
Handle rule_imp_intro(HeapSet& heaps, Handle th, Handle term);

// G |- p ==> q    D |- p'       (p alpha p')
// ------------------------------------------
//               G u D |- q
Handle rule_imp_elim(HeapSet& heaps, Handle th1, Handle th2);

//        G |- p                 (name:t not free in G)
// ----------------------
// G |- forall (\name:t. p)
Handle rule_forall_intro(HeapSet& heaps, Handle th, const std::string& name,
                         Handle type);

// G |- forall (\x:t. p)         (type_of(u) = t)
// ----------------------
//     G |- p[u/x]
Handle rule_forall_elim(HeapSet& heaps, Handle th, Handle term);

// G |- r = s
// -----------
// G |- s = r
Handle theorem_symmetry(HeapSet& heaps, Handle pre);

}  // namespace warden::inference
