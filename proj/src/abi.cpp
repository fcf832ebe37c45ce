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

#include "warden/abi.hpp"

#include <cstring>
#include <vector>

#include "warden/inference.hpp"
#include "warden/syntax.hpp"

namespace warden {

void GuestMemory::check_range(uint64_t addr, uint64_t len) const {
  // Addresses are u32 widened into u64 slots; high bits mean a malformed
  // frame, not a big memory.
  if (addr > UINT32_MAX || len > size_ || addr > size_ - len) {
    throw KernelFault(Status::InvalidAddress,
                      "range [" + std::to_string(addr) + ", +" +
                          std::to_string(len) + ") exceeds guest memory");
  }
}

uint64_t GuestMemory::read_u64(uint64_t addr) const {
  check_range(addr, 8);
  uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | data_[addr + i];
  return v;
}

void GuestMemory::write_u64(uint64_t addr, uint64_t value) {
  check_range(addr, 8);
  for (int i = 0; i < 8; ++i) data_[addr + i] = uint8_t(value >> (i * 8));
}

std::string GuestMemory::read_bytes(uint64_t addr, uint64_t len) const {
  check_range(addr, len);
  return std::string(reinterpret_cast<const char*>(data_ + addr), len);
}

void GuestMemory::write_bytes(uint64_t addr, const uint8_t* src, uint64_t len) {
  check_range(addr, len);
  if (len == 0) return;
  std::memcpy(data_ + addr, src, len);
}

namespace {

struct SyscallInfo {
  uint32_t number;
  const char* name;
  const char* import_name;
  uint32_t arg_count;
};

constexpr SyscallInfo kSyscallTable[] = {
    {kSysTypeFormerRegister, "TYPE_FORMER_REGISTER", "type_former_register", 4},
    {kSysTypeFormerResolve, "TYPE_FORMER_RESOLVE", "type_former_resolve", 5},
    {kSysTypeAllocateVariable, "TYPE_ALLOCATE_VARIABLE",
     "type_allocate_variable", 3},
    {kSysTypeAllocateApplication, "TYPE_ALLOCATE_APPLICATION",
     "type_allocate_application", 4},
    {kSysTypeAllocateFunction, "TYPE_ALLOCATE_FUNCTION",
     "type_allocate_function", 3},
    {kSysConstantRegister, "CONSTANT_REGISTER", "constant_register", 4},
    {kSysTermAllocateVariable, "TERM_ALLOCATE_VARIABLE",
     "term_allocate_variable", 4},
    {kSysTermAllocateConstant, "TERM_ALLOCATE_CONSTANT",
     "term_allocate_constant", 4},
    {kSysTermAllocateApplication, "TERM_ALLOCATE_APPLICATION",
     "term_allocate_application", 3},
    {kSysTermAllocateLambda, "TERM_ALLOCATE_LAMBDA", "term_allocate_lambda", 5},
    {kSysTermIsApplication, "TERM_IS_APPLICATION", "term_is_application", 2},
    {kSysTermSplitApplication, "TERM_SPLIT_APPLICATION",
     "term_split_application", 3},
    {kSysTermTypeOf, "TERM_TYPE_OF", "term_type_of", 2},
    {kSysTermAlphaEq, "TERM_ALPHA_EQ", "term_alpha_eq", 3},
    {kSysTermSubstitute, "TERM_SUBSTITUTE", "term_substitute", 4},
    {kSysTermTypeSubstitute, "TERM_TYPE_SUBSTITUTE", "term_type_substitute", 4},
    {kSysTermBetaNormalize, "TERM_BETA_NORMALIZE", "term_beta_normalize", 2},
    {kSysTermFreeVariables, "TERM_FREE_VARIABLES", "term_free_variables", 4},
    {kSysTheoremAllocateSym, "THEOREM_ALLOCATE_SYM", "theorem_allocate_sym", 2},
    {kSysTheoremAllocateReflexivity, "THEOREM_ALLOCATE_REFLEXIVITY",
     "theorem_allocate_reflexivity", 2},
    {kSysTheoremAllocateTransitivity, "THEOREM_ALLOCATE_TRANSITIVITY",
     "theorem_allocate_transitivity", 3},
    {kSysTheoremAllocateCongruenceApp, "THEOREM_ALLOCATE_CONGRUENCE_APP",
     "theorem_allocate_congruence_app", 3},
    {kSysTheoremAllocateCongruenceLambda, "THEOREM_ALLOCATE_CONGRUENCE_LAMBDA",
     "theorem_allocate_congruence_lambda", 5},
    {kSysTheoremAllocateBeta, "THEOREM_ALLOCATE_BETA", "theorem_allocate_beta",
     2},
    {kSysTheoremAllocateEta, "THEOREM_ALLOCATE_ETA", "theorem_allocate_eta", 2},
    {kSysTheoremAllocateAssume, "THEOREM_ALLOCATE_ASSUME",
     "theorem_allocate_assume", 2},
    {kSysTheoremAllocateEqualityMp, "THEOREM_ALLOCATE_EQUALITY_MP",
     "theorem_allocate_equality_mp", 3},
    {kSysTheoremAllocateDeductAntisym, "THEOREM_ALLOCATE_DEDUCT_ANTISYM",
     "theorem_allocate_deduct_antisym", 3},
    {kSysTheoremAllocateInstTerm, "THEOREM_ALLOCATE_INST_TERM",
     "theorem_allocate_inst_term", 4},
    {kSysTheoremAllocateInstType, "THEOREM_ALLOCATE_INST_TYPE",
     "theorem_allocate_inst_type", 4},
    {kSysTheoremAllocateTruthIntro, "THEOREM_ALLOCATE_TRUTH_INTRO",
     "theorem_allocate_truth_intro", 1},
    {kSysTheoremAllocateFalsityElim, "THEOREM_ALLOCATE_FALSITY_ELIM",
     "theorem_allocate_falsity_elim", 3},
    {kSysTheoremAllocateImpIntro, "THEOREM_ALLOCATE_IMP_INTRO",
     "theorem_allocate_imp_intro", 3},
    {kSysTheoremAllocateImpElim, "THEOREM_ALLOCATE_IMP_ELIM",
     "theorem_allocate_imp_elim", 3},
    {kSysTheoremAllocateForallIntro, "THEOREM_ALLOCATE_FORALL_INTRO",
     "theorem_allocate_forall_intro", 5},
    {kSysTheoremAllocateForallElim, "THEOREM_ALLOCATE_FORALL_ELIM",
     "theorem_allocate_forall_elim", 3},
    {kSysTheoremSplit, "THEOREM_SPLIT", "theorem_split", 6},
    {kSysPolicyCurrent, "POLICY_CURRENT", "policy_current", 1},
    {kSysPolicyInstall, "POLICY_INSTALL", "policy_install", 2},
    {kSysObligationDischarge, "OBLIGATION_DISCHARGE", "obligation_discharge",
     2},
    {kSysFsOpen, "FS_OPEN", "fs_open", 7},
    {kSysFsRead, "FS_READ", "fs_read", 7},
    {kSysFsWrite, "FS_WRITE", "fs_write", 7},
    {kSysFsClose, "FS_CLOSE", "fs_close", 1},
};

const SyscallInfo* lookup(uint32_t number) {
  for (const SyscallInfo& info : kSyscallTable) {
    if (info.number == number) return &info;
  }
  return nullptr;
}

// Substitution wire formats. Type entries are (name_addr, name_len,
// type_handle); term entries add the image handle. All fields are u64 slots.
constexpr uint64_t kTypeSubstEntryBytes = 24;
constexpr uint64_t kTermSubstEntryBytes = 32;

TypeSubstitution read_type_subst(GuestMemory& mem, uint64_t count,
                                 uint64_t buf) {
  if (count > mem.size()) {
    throw KernelFault(Status::InvalidAddress, "substitution count");
  }
  mem.check_range(buf, count * kTypeSubstEntryBytes);
  TypeSubstitution theta;
  for (uint64_t i = 0; i < count; ++i) {
    const uint64_t base = buf + i * kTypeSubstEntryBytes;
    const uint64_t name_addr = mem.read_u64(base);
    const uint64_t name_len = mem.read_u64(base + 8);
    const Handle type{mem.read_u64(base + 16)};
    std::string name = mem.read_bytes(name_addr, name_len);
    if (!theta.emplace(std::move(name), type).second) {
      throw KernelFault(Status::ShapeMismatch, "duplicate substitution key");
    }
  }
  return theta;
}

TermSubstitution read_term_subst(GuestMemory& mem, uint64_t count,
                                 uint64_t buf) {
  if (count > mem.size()) {
    throw KernelFault(Status::InvalidAddress, "substitution count");
  }
  mem.check_range(buf, count * kTermSubstEntryBytes);
  TermSubstitution sigma;
  for (uint64_t i = 0; i < count; ++i) {
    const uint64_t base = buf + i * kTermSubstEntryBytes;
    const uint64_t name_addr = mem.read_u64(base);
    const uint64_t name_len = mem.read_u64(base + 8);
    TermSubstitutionEntry entry;
    entry.type = Handle{mem.read_u64(base + 16)};
    entry.image = Handle{mem.read_u64(base + 24)};
    entry.name = mem.read_bytes(name_addr, name_len);
    sigma.push_back(std::move(entry));
  }
  return sigma;
}

// Writes a handle sequence under the (count-address, buffer, capacity)
// convention. Capacity is in entries; when it is too small only the count
// lands and the call still succeeds.
Status write_handle_sequence(GuestMemory& mem, const std::vector<Handle>& hs,
                             uint64_t count_addr, uint64_t buf,
                             uint64_t capacity) {
  mem.write_u64(count_addr, hs.size());
  if (hs.size() <= capacity) {
    mem.check_range(buf, hs.size() * 8);
    for (size_t i = 0; i < hs.size(); ++i) {
      mem.write_u64(buf + i * 8, hs[i].value);
    }
  }
  return Status::Success;
}

void require_name_free(const HeapSet& heaps, Kind kind,
                       const std::string& name) {
  if (name.empty()) {
    throw KernelFault(Status::ShapeMismatch, "empty name");
  }
  if (kind == Kind::TypeFormer) {
    for (uint64_t v : heaps.formers().order()) {
      if (heaps.formers().get(Handle{v}).name == name) {
        throw KernelFault(Status::NameCollision, name);
      }
    }
  } else {
    for (uint64_t v : heaps.constants().order()) {
      if (heaps.constants().get(Handle{v}).name == name) {
        throw KernelFault(Status::NameCollision, name);
      }
    }
  }
}

Status run_syscall(Kernel& kernel, const SyscallFrame& f, GuestMemory& mem) {
  HeapSet& heaps = kernel.heaps();
  const uint64_t* a = f.args;

  switch (f.number) {
    case kSysTypeFormerRegister: {
      mem.check_range(a[3], 8);
      std::string name = mem.read_bytes(a[0], a[1]);
      require_name_free(heaps, Kind::TypeFormer, name);
      const Handle h =
          heaps.allocate_former(FormerInfo{std::move(name), a[2]});
      mem.write_u64(a[3], h.value);
      return Status::Success;
    }
    case kSysTypeFormerResolve: {
      mem.check_range(a[1], 8);
      mem.check_range(a[2], 8);
      const FormerInfo& info = heaps.former(Handle{a[0]});
      const std::string name = info.name;
      const uint64_t arity = info.arity;
      if (name.size() <= a[4]) {
        mem.check_range(a[3], name.size());
        mem.write_bytes(a[3], reinterpret_cast<const uint8_t*>(name.data()),
                        name.size());
      }
      mem.write_u64(a[1], arity);
      mem.write_u64(a[2], name.size());
      return Status::Success;
    }
    case kSysTypeAllocateVariable: {
      mem.check_range(a[2], 8);
      std::string name = mem.read_bytes(a[0], a[1]);
      const Handle h = heaps.allocate_type(TypeVariable{std::move(name)});
      mem.write_u64(a[2], h.value);
      return Status::Success;
    }
    case kSysTypeAllocateApplication: {
      mem.check_range(a[3], 8);
      const uint64_t count = a[1];
      if (count > mem.size()) {
        throw KernelFault(Status::InvalidAddress, "argument count");
      }
      mem.check_range(a[2], count * 8);
      const Handle former{a[0]};
      const FormerInfo& info = heaps.former(former);
      if (info.arity != count) {
        throw KernelFault(Status::ArityMismatch,
                          info.name + " expects " +
                              std::to_string(info.arity) + " arguments");
      }
      std::vector<Handle> args;
      args.reserve(count);
      for (uint64_t i = 0; i < count; ++i) {
        const Handle ty{mem.read_u64(a[2] + i * 8)};
        heaps.type(ty);
        args.push_back(ty);
      }
      const Handle h =
          heaps.allocate_type(TypeApplication{former, std::move(args)});
      mem.write_u64(a[3], h.value);
      return Status::Success;
    }
    case kSysTypeAllocateFunction: {
      mem.check_range(a[2], 8);
      const Handle dom{a[0]}, cod{a[1]};
      heaps.type(dom);
      heaps.type(cod);
      const Handle h = heaps.allocate_type(
          TypeApplication{wellknown::kFormerFun, {dom, cod}});
      mem.write_u64(a[2], h.value);
      return Status::Success;
    }
    case kSysConstantRegister: {
      mem.check_range(a[3], 8);
      std::string name = mem.read_bytes(a[0], a[1]);
      require_name_free(heaps, Kind::Constant, name);
      const Handle ty{a[2]};
      heaps.type(ty);
      const Handle h =
          heaps.allocate_constant(ConstantInfo{std::move(name), ty});
      mem.write_u64(a[3], h.value);
      return Status::Success;
    }
    case kSysTermAllocateVariable: {
      mem.check_range(a[3], 8);
      std::string name = mem.read_bytes(a[0], a[1]);
      const Handle h =
          syntax::allocate_variable(heaps, std::move(name), Handle{a[2]});
      mem.write_u64(a[3], h.value);
      return Status::Success;
    }
    case kSysTermAllocateConstant: {
      mem.check_range(a[3], 8);
      TypeSubstitution inst = read_type_subst(mem, a[1], a[2]);
      const Handle h =
          syntax::allocate_constant(heaps, Handle{a[0]}, std::move(inst));
      mem.write_u64(a[3], h.value);
      return Status::Success;
    }
    case kSysTermAllocateApplication: {
      mem.check_range(a[2], 8);
      const Handle h =
          syntax::allocate_application(heaps, Handle{a[0]}, Handle{a[1]});
      mem.write_u64(a[2], h.value);
      return Status::Success;
    }
    case kSysTermAllocateLambda: {
      mem.check_range(a[4], 8);
      std::string name = mem.read_bytes(a[0], a[1]);
      const Handle h = syntax::allocate_lambda(heaps, std::move(name),
                                               Handle{a[2]}, Handle{a[3]});
      mem.write_u64(a[4], h.value);
      return Status::Success;
    }
    case kSysTermIsApplication: {
      mem.check_range(a[1], 8);
      const TermEntry& entry = heaps.term(Handle{a[0]});
      const bool is_app =
          std::holds_alternative<TermApplication>(entry.payload);
      mem.write_u64(a[1], is_app ? 1 : 0);
      return Status::Success;
    }
    case kSysTermSplitApplication: {
      mem.check_range(a[1], 8);
      mem.check_range(a[2], 8);
      const TermEntry& entry = heaps.term(Handle{a[0]});
      const auto* app = std::get_if<TermApplication>(&entry.payload);
      if (app == nullptr) {
        throw KernelFault(Status::NotAnApplication, "split");
      }
      mem.write_u64(a[1], app->left.value);
      mem.write_u64(a[2], app->right.value);
      return Status::Success;
    }
    case kSysTermTypeOf: {
      mem.check_range(a[1], 8);
      mem.write_u64(a[1], heaps.term(Handle{a[0]}).type.value);
      return Status::Success;
    }
    case kSysTermAlphaEq: {
      mem.check_range(a[2], 8);
      heaps.term(Handle{a[0]});
      heaps.term(Handle{a[1]});
      const bool eq = syntax::alpha_equal(heaps, Handle{a[0]}, Handle{a[1]});
      mem.write_u64(a[2], eq ? 1 : 0);
      return Status::Success;
    }
    case kSysTermSubstitute: {
      mem.check_range(a[3], 8);
      TermSubstitution sigma = read_term_subst(mem, a[1], a[2]);
      const Handle h = syntax::substitute(heaps, Handle{a[0]}, sigma);
      mem.write_u64(a[3], h.value);
      return Status::Success;
    }
    case kSysTermTypeSubstitute: {
      mem.check_range(a[3], 8);
      TypeSubstitution theta = read_type_subst(mem, a[1], a[2]);
      const Handle h = syntax::type_substitute_term(heaps, Handle{a[0]}, theta);
      mem.write_u64(a[3], h.value);
      return Status::Success;
    }
    case kSysTermBetaNormalize: {
      mem.check_range(a[1], 8);
      const Handle h = syntax::beta_normalize(heaps, Handle{a[0]});
      mem.write_u64(a[1], h.value);
      return Status::Success;
    }
    case kSysTermFreeVariables: {
      mem.check_range(a[1], 8);
      heaps.term(Handle{a[0]});
      const std::vector<Handle> fvs = syntax::free_variables(heaps, Handle{a[0]});
      return write_handle_sequence(mem, fvs, a[1], a[2], a[3]);
    }

    case kSysTheoremAllocateSym: {
      mem.check_range(a[1], 8);
      const Handle h = inference::theorem_symmetry(heaps, Handle{a[0]});
      mem.write_u64(a[1], h.value);
      return Status::Success;
    }
    case kSysTheoremAllocateReflexivity: {
      mem.check_range(a[1], 8);
      const Handle h = inference::rule_reflexivity(heaps, Handle{a[0]});
      mem.write_u64(a[1], h.value);
      return Status::Success;
    }
    case kSysTheoremAllocateTransitivity: {
      mem.check_range(a[2], 8);
      const Handle h =
          inference::rule_transitivity(heaps, Handle{a[0]}, Handle{a[1]});
      mem.write_u64(a[2], h.value);
      return Status::Success;
    }
    case kSysTheoremAllocateCongruenceApp: {
      mem.check_range(a[2], 8);
      const Handle h =
          inference::rule_congruence_app(heaps, Handle{a[0]}, Handle{a[1]});
      mem.write_u64(a[2], h.value);
      return Status::Success;
    }
    case kSysTheoremAllocateCongruenceLambda: {
      mem.check_range(a[4], 8);
      const std::string name = mem.read_bytes(a[0], a[1]);
      const Handle h = inference::rule_congruence_lambda(heaps, name,
                                                         Handle{a[2]},
                                                         Handle{a[3]});
      mem.write_u64(a[4], h.value);
      return Status::Success;
    }
    case kSysTheoremAllocateBeta: {
      mem.check_range(a[1], 8);
      const Handle h = inference::rule_beta(heaps, Handle{a[0]});
      mem.write_u64(a[1], h.value);
      return Status::Success;
    }
    case kSysTheoremAllocateEta: {
      mem.check_range(a[1], 8);
      const Handle h = inference::rule_eta(heaps, Handle{a[0]});
      mem.write_u64(a[1], h.value);
      return Status::Success;
    }
    case kSysTheoremAllocateAssume: {
      mem.check_range(a[1], 8);
      const Handle h = inference::rule_assume(heaps, Handle{a[0]});
      mem.write_u64(a[1], h.value);
      return Status::Success;
    }
    case kSysTheoremAllocateEqualityMp: {
      mem.check_range(a[2], 8);
      const Handle h =
          inference::rule_equality_mp(heaps, Handle{a[0]}, Handle{a[1]});
      mem.write_u64(a[2], h.value);
      return Status::Success;
    }
    case kSysTheoremAllocateDeductAntisym: {
      mem.check_range(a[2], 8);
      const Handle h =
          inference::rule_deduct_antisym(heaps, Handle{a[0]}, Handle{a[1]});
      mem.write_u64(a[2], h.value);
      return Status::Success;
    }
    case kSysTheoremAllocateInstTerm: {
      mem.check_range(a[3], 8);
      TermSubstitution sigma = read_term_subst(mem, a[1], a[2]);
      const Handle h = inference::rule_inst_term(heaps, Handle{a[0]}, sigma);
      mem.write_u64(a[3], h.value);
      return Status::Success;
    }
    case kSysTheoremAllocateInstType: {
      mem.check_range(a[3], 8);
      TypeSubstitution theta = read_type_subst(mem, a[1], a[2]);
      const Handle h = inference::rule_inst_type(heaps, Handle{a[0]}, theta);
      mem.write_u64(a[3], h.value);
      return Status::Success;
    }
    case kSysTheoremAllocateTruthIntro: {
      mem.check_range(a[0], 8);
      const Handle h = inference::rule_truth_intro(heaps);
      mem.write_u64(a[0], h.value);
      return Status::Success;
    }
    case kSysTheoremAllocateFalsityElim: {
      mem.check_range(a[2], 8);
      const Handle h =
          inference::rule_falsity_elim(heaps, Handle{a[0]}, Handle{a[1]});
      mem.write_u64(a[2], h.value);
      return Status::Success;
    }
    case kSysTheoremAllocateImpIntro: {
      mem.check_range(a[2], 8);
      const Handle h =
          inference::rule_imp_intro(heaps, Handle{a[0]}, Handle{a[1]});
      mem.write_u64(a[2], h.value);
      return Status::Success;
    }
    case kSysTheoremAllocateImpElim: {
      mem.check_range(a[2], 8);
      const Handle h =
          inference::rule_imp_elim(heaps, Handle{a[0]}, Handle{a[1]});
      mem.write_u64(a[2], h.value);
      return Status::Success;
    }
    case kSysTheoremAllocateForallIntro: {
      mem.check_range(a[4], 8);
      const std::string name = mem.read_bytes(a[1], a[2]);
      const Handle h = inference::rule_forall_intro(heaps, Handle{a[0]}, name,
                                                    Handle{a[3]});
      mem.write_u64(a[4], h.value);
      return Status::Success;
    }
    case kSysTheoremAllocateForallElim: {
      mem.check_range(a[2], 8);
      const Handle h =
          inference::rule_forall_elim(heaps, Handle{a[0]}, Handle{a[1]});
      mem.write_u64(a[2], h.value);
      return Status::Success;
    }
    case kSysTheoremSplit: {
      mem.check_range(a[1], 8);
      mem.check_range(a[2], 8);
      mem.check_range(a[3], 8);
      const TheoremEntry& thm = heaps.theorem(Handle{a[0]});
      const Handle conclusion = thm.conclusion;
      const bool axiom = thm.axiom;
      const std::vector<Handle> hyps = thm.hypotheses;
      mem.write_u64(a[1], conclusion.value);
      mem.write_u64(a[2], axiom ? 1 : 0);
      return write_handle_sequence(mem, hyps, a[3], a[4], a[5]);
    }

    case kSysPolicyCurrent: {
      mem.check_range(a[0], 8);
      mem.write_u64(a[0], kernel.current_policy().value);
      return Status::Success;
    }
    case kSysPolicyInstall: {
      kernel.install_policy(Handle{a[0]}, Handle{a[1]});
      return Status::Success;
    }
    case kSysObligationDischarge: {
      kernel.discharge(a[0], Handle{a[1]});
      return Status::Success;
    }

    case kSysFsOpen: {
      mem.check_range(a[3], 8);
      mem.check_range(a[5], 8);
      mem.check_range(a[6], 8);
      const std::string path =
          Vfs::normalize(mem.read_bytes(a[0], a[1]));
      const uint64_t flags = a[2];
      if (flags != kFsFlagRead && flags != kFsFlagWrite) {
        throw KernelFault(Status::FsBadFlags, "flags " + std::to_string(flags));
      }
      const SyscallMeta meta{kMetaFsOpen, kernel.intern_path(path), flags};
      const GateOutcome outcome = kernel.gate(meta, a[4]);
      if (!outcome.allowed) {
        mem.write_u64(a[5], outcome.obligation_id);
        mem.write_u64(a[6], outcome.challenge.value);
        return Status::ObligationPending;
      }
      const uint32_t fd = kernel.vfs().open(path, flags);
      mem.write_u64(a[3], fd);
      kernel.record_event(meta);
      return Status::Success;
    }
    case kSysFsRead: {
      mem.check_range(a[1], a[2]);
      mem.check_range(a[3], 8);
      mem.check_range(a[5], 8);
      mem.check_range(a[6], 8);
      const SyscallMeta meta{kMetaFsRead, a[0], 0};
      const GateOutcome outcome = kernel.gate(meta, a[4]);
      if (!outcome.allowed) {
        mem.write_u64(a[5], outcome.obligation_id);
        mem.write_u64(a[6], outcome.challenge.value);
        return Status::ObligationPending;
      }
      std::vector<uint8_t> scratch(a[2]);
      const uint64_t count =
          kernel.vfs().read(uint32_t(a[0]), scratch.data(), a[2]);
      mem.write_bytes(a[1], scratch.data(), count);
      mem.write_u64(a[3], count);
      kernel.record_event(meta);
      return Status::Success;
    }
    case kSysFsWrite: {
      mem.check_range(a[1], a[2]);
      mem.check_range(a[3], 8);
      mem.check_range(a[5], 8);
      mem.check_range(a[6], 8);
      const SyscallMeta meta{kMetaFsWrite, a[0], 0};
      const GateOutcome outcome = kernel.gate(meta, a[4]);
      if (!outcome.allowed) {
        mem.write_u64(a[5], outcome.obligation_id);
        mem.write_u64(a[6], outcome.challenge.value);
        return Status::ObligationPending;
      }
      const std::string data = mem.read_bytes(a[1], a[2]);
      const uint64_t count = kernel.vfs().write(
          uint32_t(a[0]), reinterpret_cast<const uint8_t*>(data.data()),
          a[2]);
      mem.write_u64(a[3], count);
      kernel.record_event(meta);
      return Status::Success;
    }
    case kSysFsClose: {
      kernel.vfs().close(uint32_t(a[0]));
      return Status::Success;
    }

    default:
      throw KernelFault(Status::UnknownSyscall,
                        "syscall " + std::to_string(f.number));
  }
}

}  // namespace

Status dispatch(Kernel& kernel, const SyscallFrame& frame, GuestMemory& mem) {
  const HeapSet::Checkpoint cp = kernel.heaps().checkpoint();
  try {
    return run_syscall(kernel, frame, mem);
  } catch (const KernelFault& fault) {
    kernel.heaps().rollback(cp);
    return fault.code();
  } catch (const std::exception&) {
    kernel.heaps().rollback(cp);
    return Status::ArenaExhausted;
  }
}

const char* syscall_name(uint32_t number) {
  const SyscallInfo* info = lookup(number);
  return info ? info->name : "UNKNOWN";
}

const char* syscall_import_name(uint32_t number) {
  const SyscallInfo* info = lookup(number);
  return info ? info->import_name : nullptr;
}

std::optional<uint32_t> syscall_by_import(std::string_view import_name) {
  for (const SyscallInfo& info : kSyscallTable) {
    if (import_name == info.import_name) return info.number;
  }
  return std::nullopt;
}

std::optional<uint32_t> syscall_arg_count(uint32_t number) {
  const SyscallInfo* info = lookup(number);
  if (info == nullptr) return std::nullopt;
  return info->arg_count;
}

}  // namespace warden
