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

#include "warden/script.hpp"

#include <cstdio>
#include <map>

#include "warden/syntax.hpp"

namespace warden {

namespace {

const std::map<std::string_view, uint32_t> kMnemonics = {
    {"former-register", kSysTypeFormerRegister},
    {"former-resolve", kSysTypeFormerResolve},
    {"type-var", kSysTypeAllocateVariable},
    {"type-app", kSysTypeAllocateApplication},
    {"type-fun", kSysTypeAllocateFunction},
    {"const-register", kSysConstantRegister},
    {"term-var", kSysTermAllocateVariable},
    {"term-const", kSysTermAllocateConstant},
    {"term-app", kSysTermAllocateApplication},
    {"term-lam", kSysTermAllocateLambda},
    {"term-is-app", kSysTermIsApplication},
    {"term-split", kSysTermSplitApplication},
    {"term-type-of", kSysTermTypeOf},
    {"term-alpha-eq", kSysTermAlphaEq},
    {"term-subst", kSysTermSubstitute},
    {"term-type-subst", kSysTermTypeSubstitute},
    {"term-beta", kSysTermBetaNormalize},
    {"term-free-vars", kSysTermFreeVariables},
    {"thm-sym", kSysTheoremAllocateSym},
    {"thm-refl", kSysTheoremAllocateReflexivity},
    {"thm-trans", kSysTheoremAllocateTransitivity},
    {"thm-cong-app", kSysTheoremAllocateCongruenceApp},
    {"thm-cong-lam", kSysTheoremAllocateCongruenceLambda},
    {"thm-beta", kSysTheoremAllocateBeta},
    {"thm-eta", kSysTheoremAllocateEta},
    {"thm-assume", kSysTheoremAllocateAssume},
    {"thm-eq-mp", kSysTheoremAllocateEqualityMp},
    {"thm-deduct", kSysTheoremAllocateDeductAntisym},
    {"thm-inst-term", kSysTheoremAllocateInstTerm},
    {"thm-inst-type", kSysTheoremAllocateInstType},
    {"thm-truth", kSysTheoremAllocateTruthIntro},
    {"thm-false-elim", kSysTheoremAllocateFalsityElim},
    {"thm-imp-intro", kSysTheoremAllocateImpIntro},
    {"thm-imp-elim", kSysTheoremAllocateImpElim},
    {"thm-forall-intro", kSysTheoremAllocateForallIntro},
    {"thm-forall-elim", kSysTheoremAllocateForallElim},
    {"thm-split", kSysTheoremSplit},
    {"policy-current", kSysPolicyCurrent},
    {"policy-install", kSysPolicyInstall},
    {"obligation-discharge", kSysObligationDischarge},
    {"fs-open", kSysFsOpen},
    {"fs-read", kSysFsRead},
    {"fs-write", kSysFsWrite},
    {"fs-close", kSysFsClose},
};

struct ScriptError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Value {
  bool is_string = false;
  uint64_t num = 0;
  std::string str;
};

struct Engine {
  explicit Engine(SyscallClient& c) : client(c) {}

  SyscallClient& client;
  std::map<std::string, Value, std::less<>> env;
  Status last = Status::Success;
  std::string transcript;
  std::string bound_note;

  [[noreturn]] void err(const Sexpr& at, const std::string& what) {
    throw ScriptError("line " + std::to_string(at.line) + ": " + what);
  }

  void bind(const std::string& name, uint64_t v) {
    if (name.empty()) return;
    env[name] = Value{false, v, {}};
    bound_note += " " + name + "=" + std::to_string(v);
  }
  void bind_str(const std::string& name, std::string v) {
    if (name.empty()) return;
    bound_note += " " + name + "=" + write_sexpr(Sexpr{
        Sexpr::Tag::String, v, {}, 0});
    env[name] = Value{true, 0, std::move(v)};
  }

  Value eval(const Sexpr& e) {
    switch (e.tag) {
      case Sexpr::Tag::String:
        return Value{true, 0, e.text};
      case Sexpr::Tag::Atom: {
        uint64_t n;
        if (parse_integer(e.text, n)) return Value{false, n, {}};
        const auto it = env.find(e.text);
        if (it == env.end()) err(e, "unbound name '" + e.text + "'");
        return it->second;
      }
      case Sexpr::Tag::List: {
        if (e.items.empty()) err(e, "empty argument");
        const Sexpr& head = e.items[0];
        Handle h{0};
        if (head.is_atom("tyvar") || head.is_atom("ty"))
          h = parse_type(client, e);
        else
          h = parse_term(client, e);
        return Value{false, h.value, {}};
      }
    }
    err(e, "bad argument");
  }

  uint64_t num(const Sexpr& e) {
    const Value v = eval(e);
    if (v.is_string) err(e, "expected a number or handle");
    return v.num;
  }
  std::string str(const Sexpr& e) {
    const Value v = eval(e);
    if (!v.is_string) err(e, "expected a string");
    return v.str;
  }

  uint64_t lookup(const Sexpr& e) {
    if (e.tag != Sexpr::Tag::Atom) err(e, "expected a bound name");
    const auto it = env.find(e.text);
    if (it == env.end()) err(e, "unbound name '" + e.text + "'");
    if (it->second.is_string) err(e, "'" + e.text + "' is not a handle");
    return it->second.num;
  }

  // Remaining args as flat (NAME type [image]) groups encoded into wire
  // entries of 3 or 4 words.
  uint64_t stash_groups(const Sexpr& cmd, size_t from, size_t stride,
                        uint64_t& count_out) {
    const size_t n = cmd.items.size() - from;
    if (n % stride != 0)
      err(cmd, "substitution arguments come in groups of " +
                   std::to_string(stride));
    std::vector<uint64_t> words;
    for (size_t i = from; i < cmd.items.size(); i += stride) {
      const std::string name = str(cmd.items[i]);
      words.push_back(client.stash(name));
      words.push_back(name.size());
      words.push_back(num(cmd.items[i + 1]));
      if (stride == 3) words.push_back(num(cmd.items[i + 2]));
    }
    count_out = n / stride;
    return client.stash(words);
  }

  // cmd.items[0] is the syscall name; binds according to the documented
  // result conventions when a binding name is given.
  void syscall(const Sexpr& cmd, const std::string& bind_name) {
    const std::string& name = cmd.items[0].text;
    client.reset();
    bound_note.clear();

    // Term and type forms are expressions too; they allocate through the
    // ordinary syscalls and bind the resulting handle.
    if (name == "tyvar" || name == "ty") {
      bind(bind_name, parse_type(client, cmd).value);
      last = Status::Success;
      return;
    }
    if (name == "var" || name == "const" || name == "app" || name == "lam" ||
        name == "nat") {
      bind(bind_name, parse_term(client, cmd).value);
      last = Status::Success;
      return;
    }

    const auto number = syscall_by_mnemonic(name);
    if (!number) err(cmd.items[0], "unknown syscall '" + name + "'");
    const auto arg = [&](size_t i) -> const Sexpr& {
      if (i >= cmd.items.size()) err(cmd, "missing argument");
      return cmd.items[i];
    };
    const auto count_args = [&](size_t want) {
      if (cmd.items.size() != want + 1)
        err(cmd, "'" + name + "' takes " + std::to_string(want) +
                     " arguments");
    };

    switch (*number) {
      case kSysTypeFormerRegister: {
        count_args(2);
        const std::string s = str(arg(1));
        const uint64_t out = client.reserve(8);
        last = client.call(*number,
                           {client.stash(s), s.size(), num(arg(2)), out});
        if (last == Status::Success) bind(bind_name, client.read_u64(out));
        return;
      }
      case kSysTypeFormerResolve: {
        count_args(1);
        const uint64_t arity_out = client.reserve(8);
        const uint64_t len_out = client.reserve(8);
        const uint64_t buf = client.reserve(256);
        last = client.call(*number,
                           {num(arg(1)), arity_out, len_out, buf, 256});
        if (last == Status::Success) {
          bind(bind_name, client.read_u64(arity_out));
          const uint64_t len = client.read_u64(len_out);
          if (len <= 256)
            bind_str(bind_name + "-name", client.read_bytes(buf, len));
        }
        return;
      }
      case kSysTypeAllocateVariable:
      case kSysTermAllocateVariable:
      case kSysConstantRegister: {
        const bool typed = *number != kSysTypeAllocateVariable;
        count_args(typed ? 2 : 1);
        const std::string s = str(arg(1));
        const uint64_t out = client.reserve(8);
        std::vector<uint64_t> args{client.stash(s), s.size()};
        if (typed) args.push_back(num(arg(2)));
        args.push_back(out);
        last = client.call(*number, args);
        if (last == Status::Success) bind(bind_name, client.read_u64(out));
        return;
      }
      case kSysTypeAllocateApplication: {
        if (cmd.items.size() < 2) err(cmd, "missing former");
        std::vector<uint64_t> handles;
        for (size_t i = 2; i < cmd.items.size(); ++i)
          handles.push_back(num(arg(i)));
        const uint64_t buf = client.stash(handles);
        const uint64_t out = client.reserve(8);
        last = client.call(*number,
                           {num(arg(1)), handles.size(), buf, out});
        if (last == Status::Success) bind(bind_name, client.read_u64(out));
        return;
      }
      case kSysTypeAllocateFunction:
      case kSysTermAllocateApplication:
      case kSysTermAlphaEq:
      case kSysTheoremAllocateTransitivity:
      case kSysTheoremAllocateCongruenceApp:
      case kSysTheoremAllocateEqualityMp:
      case kSysTheoremAllocateDeductAntisym:
      case kSysTheoremAllocateImpElim:
      case kSysTheoremAllocateFalsityElim:
      case kSysTheoremAllocateImpIntro:
      case kSysTheoremAllocateForallElim: {
        count_args(2);
        const uint64_t out = client.reserve(8);
        last = client.call(*number, {num(arg(1)), num(arg(2)), out});
        if (last == Status::Success) bind(bind_name, client.read_u64(out));
        return;
      }
      case kSysTermAllocateConstant: {
        if (cmd.items.size() < 2) err(cmd, "missing constant");
        uint64_t entries = 0;
        const uint64_t konst = num(arg(1));
        const uint64_t buf = stash_groups(cmd, 2, 2, entries);
        const uint64_t out = client.reserve(8);
        last = client.call(*number, {konst, entries, buf, out});
        if (last == Status::Success) bind(bind_name, client.read_u64(out));
        return;
      }
      case kSysTermAllocateLambda:
      case kSysTheoremAllocateCongruenceLambda: {
        count_args(3);
        // NAME type body-or-theorem, same frame either way.
        const std::string s = str(arg(1));
        const uint64_t out = client.reserve(8);
        last = client.call(*number, {client.stash(s), s.size(),
                                     num(arg(2)), num(arg(3)), out});
        if (last == Status::Success) bind(bind_name, client.read_u64(out));
        return;
      }
      case kSysTermIsApplication:
      case kSysTermTypeOf:
      case kSysTermBetaNormalize:
      case kSysTheoremAllocateSym:
      case kSysTheoremAllocateReflexivity:
      case kSysTheoremAllocateBeta:
      case kSysTheoremAllocateEta:
      case kSysTheoremAllocateAssume: {
        count_args(1);
        const uint64_t out = client.reserve(8);
        last = client.call(*number, {num(arg(1)), out});
        if (last == Status::Success) bind(bind_name, client.read_u64(out));
        return;
      }
      case kSysTermSplitApplication: {
        count_args(1);
        const uint64_t out1 = client.reserve(8);
        const uint64_t out2 = client.reserve(8);
        last = client.call(*number, {num(arg(1)), out1, out2});
        if (last == Status::Success) {
          bind(bind_name, client.read_u64(out1));
          bind(bind_name + "-2", client.read_u64(out2));
        }
        return;
      }
      case kSysTermSubstitute:
      case kSysTheoremAllocateInstTerm: {
        if (cmd.items.size() < 2) err(cmd, "missing subject");
        const uint64_t subject = num(arg(1));
        uint64_t entries = 0;
        const uint64_t buf = stash_groups(cmd, 2, 3, entries);
        const uint64_t out = client.reserve(8);
        last = client.call(*number, {subject, entries, buf, out});
        if (last == Status::Success) bind(bind_name, client.read_u64(out));
        return;
      }
      case kSysTermTypeSubstitute:
      case kSysTheoremAllocateInstType: {
        if (cmd.items.size() < 2) err(cmd, "missing subject");
        const uint64_t subject = num(arg(1));
        uint64_t entries = 0;
        const uint64_t buf = stash_groups(cmd, 2, 2, entries);
        const uint64_t out = client.reserve(8);
        last = client.call(*number, {subject, entries, buf, out});
        if (last == Status::Success) bind(bind_name, client.read_u64(out));
        return;
      }
      case kSysTermFreeVariables: {
        count_args(1);
        const uint64_t count_out = client.reserve(8);
        const uint64_t buf = client.reserve(128 * 8);
        last = client.call(*number, {num(arg(1)), count_out, buf, 128});
        if (last == Status::Success) {
          const uint64_t n = client.read_u64(count_out);
          bind(bind_name, n);
          if (n <= 128)
            for (uint64_t i = 0; i < n; ++i)
              bind(bind_name + "-" + std::to_string(i),
                   client.read_u64(buf + i * 8));
        }
        return;
      }
      case kSysTheoremAllocateTruthIntro:
      case kSysPolicyCurrent: {
        count_args(0);
        const uint64_t out = client.reserve(8);
        last = client.call(*number, {out});
        if (last == Status::Success) bind(bind_name, client.read_u64(out));
        return;
      }
      case kSysTheoremAllocateForallIntro: {
        count_args(3);
        // theorem NAME type.
        const uint64_t th = num(arg(1));
        const std::string s = str(arg(2));
        const uint64_t out = client.reserve(8);
        last = client.call(*number, {th, client.stash(s), s.size(),
                                     num(arg(3)), out});
        if (last == Status::Success) bind(bind_name, client.read_u64(out));
        return;
      }
      case kSysTheoremSplit: {
        count_args(1);
        const uint64_t concl_out = client.reserve(8);
        const uint64_t axiom_out = client.reserve(8);
        const uint64_t count_out = client.reserve(8);
        const uint64_t buf = client.reserve(64 * 8);
        last = client.call(*number, {num(arg(1)), concl_out, axiom_out,
                                     count_out, buf, 64});
        if (last == Status::Success) {
          bind(bind_name, client.read_u64(concl_out));
          bind(bind_name + "-2", client.read_u64(axiom_out));
          const uint64_t n = client.read_u64(count_out);
          bind(bind_name + "-3", n);
          if (n <= 64)
            for (uint64_t i = 0; i < n; ++i)
              bind(bind_name + "-hyp-" + std::to_string(i),
                   client.read_u64(buf + i * 8));
        }
        return;
      }
      case kSysPolicyInstall: {
        count_args(2);
        last = client.call(*number, {num(arg(1)), num(arg(2))});
        return;
      }
      case kSysObligationDischarge: {
        count_args(2);
        last = client.call(*number, {num(arg(1)), num(arg(2))});
        return;
      }
      case kSysFsOpen: {
        count_args(3);
        const std::string path = str(arg(1));
        const uint64_t fd_out = client.reserve(8);
        const uint64_t pend_id = client.reserve(8);
        const uint64_t pend_ch = client.reserve(8);
        last = client.call(*number,
                           {client.stash(path), path.size(), num(arg(2)),
                            fd_out, num(arg(3)), pend_id, pend_ch});
        if (last == Status::Success) {
          bind(bind_name, client.read_u64(fd_out));
        } else if (last == Status::ObligationPending) {
          bind(bind_name, client.read_u64(pend_id));
          bind(bind_name + "-challenge", client.read_u64(pend_ch));
        }
        return;
      }
      case kSysFsRead: {
        count_args(3);
        const uint64_t fd = num(arg(1));
        const uint64_t len = num(arg(2));
        const uint64_t buf = client.reserve(len ? len : 1);
        const uint64_t count_out = client.reserve(8);
        const uint64_t pend_id = client.reserve(8);
        const uint64_t pend_ch = client.reserve(8);
        last = client.call(*number, {fd, buf, len, count_out, num(arg(3)),
                                     pend_id, pend_ch});
        if (last == Status::Success) {
          const uint64_t n = client.read_u64(count_out);
          bind(bind_name, n);
          bind_str(bind_name + "-data", client.read_bytes(buf, n));
        } else if (last == Status::ObligationPending) {
          bind(bind_name, client.read_u64(pend_id));
          bind(bind_name + "-challenge", client.read_u64(pend_ch));
        }
        return;
      }
      case kSysFsWrite: {
        count_args(3);
        const uint64_t fd = num(arg(1));
        const std::string data = str(arg(2));
        const uint64_t count_out = client.reserve(8);
        const uint64_t pend_id = client.reserve(8);
        const uint64_t pend_ch = client.reserve(8);
        last = client.call(*number,
                           {fd, client.stash(data), data.size(), count_out,
                            num(arg(3)), pend_id, pend_ch});
        if (last == Status::Success) {
          bind(bind_name, client.read_u64(count_out));
        } else if (last == Status::ObligationPending) {
          bind(bind_name, client.read_u64(pend_id));
          bind(bind_name + "-challenge", client.read_u64(pend_ch));
        }
        return;
      }
      case kSysFsClose: {
        count_args(1);
        last = client.call(*number, {num(arg(1))});
        return;
      }
      default:
        err(cmd, "syscall '" + name + "' is not scriptable");
    }
  }

  void run(const Sexpr& cmd) {
    if (!cmd.is_list() || cmd.items.empty() ||
        cmd.items[0].tag != Sexpr::Tag::Atom)
      err(cmd, "expected a command list");
    const std::string& head = cmd.items[0].text;
    std::string line;

    if (head == "let") {
      if (cmd.items.size() != 3 || cmd.items[1].tag != Sexpr::Tag::Atom ||
          !cmd.items[2].is_list() || cmd.items[2].items.empty())
        err(cmd, "expected (let NAME (SYSCALL arg*))");
      syscall(cmd.items[2], cmd.items[1].text);
      line = "let " + cmd.items[1].text + " " + cmd.items[2].items[0].text +
             " -> " + std::string(status_name(last)) + bound_note;
    } else if (head == "call") {
      if (cmd.items.size() < 2) err(cmd, "expected (call SYSCALL arg*)");
      Sexpr inner = cmd;
      inner.items.erase(inner.items.begin());
      syscall(inner, "");
      line = "call " + inner.items[0].text + " -> " +
             std::string(status_name(last)) + bound_note;
    } else if (head == "assert-status") {
      uint64_t want;
      if (cmd.items.size() != 2 || cmd.items[1].tag != Sexpr::Tag::Atom ||
          !parse_integer(cmd.items[1].text, want))
        err(cmd, "expected (assert-status INT)");
      if (uint64_t(last) != want)
        err(cmd, "status is " + std::string(status_name(last)) +
                     " (code " + std::to_string(uint64_t(last)) +
                     "), expected code " + std::to_string(want));
      line = "assert-status " + std::to_string(want) + " -> ok";
    } else if (head == "assert-alpha-eq") {
      if (cmd.items.size() != 3) err(cmd, "expected (assert-alpha-eq A B)");
      const Handle a{lookup(cmd.items[1])};
      const Handle b{lookup(cmd.items[2])};
      bool equal = false;
      try {
        equal = syntax::alpha_equal(client.kernel().heaps(), a, b);
      } catch (const KernelFault& fault) {
        err(cmd, std::string("alpha comparison failed with ") +
                     std::string(status_name(fault.code())));
      }
      if (!equal)
        err(cmd, cmd.items[1].text + " and " + cmd.items[2].text +
                     " are not alpha-equivalent");
      line = "assert-alpha-eq " + cmd.items[1].text + " " +
             cmd.items[2].text + " -> ok";
    } else if (head == "assert-true") {
      if (cmd.items.size() != 2) err(cmd, "expected (assert-true NAME)");
      if (lookup(cmd.items[1]) == 0)
        err(cmd, cmd.items[1].text + " is zero");
      line = "assert-true " + cmd.items[1].text + " -> ok";
    } else if (head == "discharge") {
      if (cmd.items.size() != 3) err(cmd, "expected (discharge OB THM)");
      const uint64_t id = lookup(cmd.items[1]);
      const uint64_t thm = lookup(cmd.items[2]);
      client.reset();
      last = client.call(kSysObligationDischarge, {id, thm});
      line = "discharge " + cmd.items[1].text + " " + cmd.items[2].text +
             " -> " + std::string(status_name(last));
    } else {
      err(cmd, "unknown command '" + head + "'");
    }
    transcript += line + "\n";
  }
};

}  // namespace

std::optional<uint32_t> syscall_by_mnemonic(std::string_view name) {
  const auto it = kMnemonics.find(name);
  if (it != kMnemonics.end()) return it->second;
  return syscall_by_import(name);
}

ScriptResult run_script(SyscallClient& client, std::string_view source) {
  ScriptResult result;
  Engine engine{client};
  try {
    const std::vector<Sexpr> commands = parse_sexprs(source);
    for (const Sexpr& cmd : commands) engine.run(cmd);
  } catch (const std::exception& e) {
    result.ok = false;
    result.error = e.what();
  }
  result.transcript = std::move(engine.transcript);
  char digest[32];
  std::snprintf(digest, sizeof digest, "digest 0x%016llx",
                static_cast<unsigned long long>(
                    client.kernel().state_digest()));
  result.transcript += std::string(digest) + "\n";
  return result;
}

}  // namespace warden
