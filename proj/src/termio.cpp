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

#include "warden/termio.hpp"

#include <cstring>

namespace warden {

namespace {

std::string describe(const Sexpr& e) {
  std::string text = write_sexpr(e);
  if (text.size() > 60) text = text.substr(0, 57) + "...";
  return "line " + std::to_string(e.line) + ": " + text;
}

[[noreturn]] void fail(const Sexpr& at, const std::string& what) {
  throw TermSyntaxError(what + " at " + describe(at));
}

// NAME positions accept bare atoms and quoted strings interchangeably.
const std::string& name_of(const Sexpr& e) {
  if (e.tag == Sexpr::Tag::List) fail(e, "expected a name");
  return e.text;
}

}  // namespace

void require_success(Status status, const Sexpr& at, const char* what) {
  if (status == Status::Success) return;
  fail(at, std::string(what) + " failed with " +
               std::string(status_name(status)));
}

SyscallClient::SyscallClient(Kernel& kernel, size_t memory_bytes)
    : kernel_(kernel), memory_(memory_bytes, 0) {}

Status SyscallClient::call(uint32_t number, std::span<const uint64_t> args) {
  SyscallFrame frame;
  frame.number = number;
  for (size_t i = 0; i < args.size() && i < 8; ++i) frame.args[i] = args[i];
  GuestMemory mem(memory_.data(), memory_.size());
  const Status status = dispatch(kernel_, frame, mem);
  trace_.push_back({number, {args.begin(), args.end()}, status});
  return status;
}

uint64_t SyscallClient::reserve(uint64_t bytes) {
  const uint64_t addr = bump_;
  const uint64_t padded = (bytes + 7) & ~uint64_t(7);
  if (addr + padded > memory_.size())
    throw TermSyntaxError("scratch memory exhausted");
  bump_ += padded;
  return addr;
}

uint64_t SyscallClient::stash(std::string_view bytes) {
  const uint64_t addr = reserve(bytes.size() ? bytes.size() : 1);
  std::memcpy(memory_.data() + addr, bytes.data(), bytes.size());
  return addr;
}

uint64_t SyscallClient::stash(std::span<const uint64_t> words) {
  const uint64_t addr = reserve(words.size() * 8);
  std::memcpy(memory_.data() + addr, words.data(), words.size() * 8);
  return addr;
}

void SyscallClient::reset() { bump_ = 16; }

uint64_t SyscallClient::read_u64(uint64_t addr) const {
  uint64_t v = 0;
  std::memcpy(&v, memory_.data() + addr, 8);
  return v;
}

std::string SyscallClient::read_bytes(uint64_t addr, uint64_t len) const {
  return std::string(reinterpret_cast<const char*>(memory_.data() + addr),
                     len);
}

namespace {

Handle resolve_former(SyscallClient& client, const Sexpr& e) {
  const std::string& name = name_of(e);
  const HeapSet& heaps = client.kernel().heaps();
  for (const uint64_t value : heaps.formers().order()) {
    if (heaps.former(Handle{value}).name == name) return Handle{value};
  }
  fail(e, "unknown type former '" + name + "'");
}

Handle resolve_constant(SyscallClient& client, const Sexpr& e) {
  uint64_t raw;
  if (e.tag == Sexpr::Tag::Atom && parse_integer(e.text, raw))
    return Handle{raw};
  const std::string& name = name_of(e);
  const HeapSet& heaps = client.kernel().heaps();
  for (const uint64_t value : heaps.constants().order()) {
    if (heaps.constant(Handle{value}).name == name) return Handle{value};
  }
  fail(e, "unknown constant '" + name + "'");
}

// Encodes (NAME type) pairs as the 24-byte wire entries shared by constant
// instantiation and type substitution.
uint64_t stash_type_pairs(SyscallClient& client,
                          const std::vector<std::pair<std::string, Handle>>&
                              pairs) {
  std::vector<uint64_t> words;
  words.reserve(pairs.size() * 3);
  for (const auto& [name, type] : pairs) {
    words.push_back(client.stash(name));
    words.push_back(name.size());
    words.push_back(type.value);
  }
  return client.stash(words);
}

}  // namespace

Handle parse_type(SyscallClient& client, const Sexpr& e) {
  if (!e.is_list() || e.items.empty()) fail(e, "expected a type");
  const Sexpr& head = e.items[0];
  if (head.is_atom("tyvar")) {
    if (e.items.size() != 2) fail(e, "tyvar takes one name");
    const std::string& name = name_of(e.items[1]);
    const uint64_t out = client.reserve(8);
    require_success(client.call(kSysTypeAllocateVariable,
                                {client.stash(name), name.size(), out}),
                    e, "type variable allocation");
    return Handle{client.read_u64(out)};
  }
  if (head.is_atom("ty")) {
    if (e.items.size() < 2) fail(e, "ty takes a former name");
    const Handle former = resolve_former(client, e.items[1]);
    std::vector<uint64_t> args;
    for (size_t i = 2; i < e.items.size(); ++i)
      args.push_back(parse_type(client, e.items[i]).value);
    const uint64_t buf = client.stash(args);
    const uint64_t out = client.reserve(8);
    require_success(client.call(kSysTypeAllocateApplication,
                                {former.value, args.size(), buf, out}),
                    e, "type application");
    return Handle{client.read_u64(out)};
  }
  fail(e, "expected (tyvar ...) or (ty ...)");
}

Handle parse_term(SyscallClient& client, const Sexpr& e) {
  if (!e.is_list() || e.items.empty()) fail(e, "expected a term");
  const Sexpr& head = e.items[0];

  if (head.is_atom("var")) {
    if (e.items.size() != 3) fail(e, "var takes a name and a type");
    const std::string& name = name_of(e.items[1]);
    const Handle type = parse_type(client, e.items[2]);
    const uint64_t out = client.reserve(8);
    require_success(
        client.call(kSysTermAllocateVariable,
                    {client.stash(name), name.size(), type.value, out}),
        e, "variable allocation");
    return Handle{client.read_u64(out)};
  }

  if (head.is_atom("const")) {
    if (e.items.size() < 2) fail(e, "const takes a handle or name");
    const Handle constant = resolve_constant(client, e.items[1]);
    std::vector<std::pair<std::string, Handle>> inst;
    for (size_t i = 2; i < e.items.size(); ++i) {
      const Sexpr& entry = e.items[i];
      if (!entry.is_list() || entry.items.size() != 3 ||
          !entry.items[0].is_atom("inst"))
        fail(entry, "expected (inst NAME type)");
      inst.emplace_back(name_of(entry.items[1]),
                        parse_type(client, entry.items[2]));
    }
    const uint64_t buf = stash_type_pairs(client, inst);
    const uint64_t out = client.reserve(8);
    require_success(client.call(kSysTermAllocateConstant,
                                {constant.value, inst.size(), buf, out}),
                    e, "constant allocation");
    return Handle{client.read_u64(out)};
  }

  if (head.is_atom("app")) {
    if (e.items.size() != 3) fail(e, "app takes two terms");
    const Handle left = parse_term(client, e.items[1]);
    const Handle right = parse_term(client, e.items[2]);
    const uint64_t out = client.reserve(8);
    require_success(client.call(kSysTermAllocateApplication,
                                {left.value, right.value, out}),
                    e, "application");
    return Handle{client.read_u64(out)};
  }

  if (head.is_atom("lam")) {
    if (e.items.size() != 4) fail(e, "lam takes a name, a type, and a body");
    const std::string& name = name_of(e.items[1]);
    const Handle type = parse_type(client, e.items[2]);
    const Handle body = parse_term(client, e.items[3]);
    const uint64_t out = client.reserve(8);
    require_success(
        client.call(kSysTermAllocateLambda,
                    {client.stash(name), name.size(), type.value, body.value,
                      out}),
        e, "lambda allocation");
    return Handle{client.read_u64(out)};
  }

  if (head.is_atom("nat")) {
    uint64_t n;
    if (e.items.size() != 2 || e.items[1].tag != Sexpr::Tag::Atom ||
        !parse_integer(e.items[1].text, n))
      fail(e, "nat takes an integer");
    const uint64_t out = client.reserve(8);
    require_success(
        client.call(kSysTermAllocateConstant,
                    {wellknown::kConstZero.value, 0, 0, out}),
        e, "numeral");
    Handle acc{client.read_u64(out)};
    for (uint64_t i = 0; i < n; ++i) {
      require_success(
          client.call(kSysTermAllocateConstant,
                      {wellknown::kConstSuc.value, 0, 0, out}),
          e, "numeral");
      const Handle suc{client.read_u64(out)};
      require_success(client.call(kSysTermAllocateApplication,
                                  {suc.value, acc.value, out}),
                      e, "numeral");
      acc = Handle{client.read_u64(out)};
    }
    return acc;
  }

  fail(e, "expected (var ...), (const ...), (app ...), (lam ...), or (nat ...)");
}

Handle parse_term_text(SyscallClient& client, std::string_view text) {
  const std::vector<Sexpr> exprs = parse_sexprs(text);
  if (exprs.size() != 1)
    throw TermSyntaxError("expected exactly one term, found " +
                          std::to_string(exprs.size()));
  return parse_term(client, exprs[0]);
}

namespace {

std::string print_name(const std::string& name) {
  if (is_plain_atom(name)) return name;
  Sexpr s;
  s.tag = Sexpr::Tag::String;
  s.text = name;
  return write_sexpr(s);
}

}  // namespace

std::string print_type(const HeapSet& heaps, Handle type) {
  const TypePayload& payload = heaps.type(type);
  if (const auto* var = std::get_if<TypeVariable>(&payload)) {
    return "(tyvar " + print_name(var->name) + ")";
  }
  const auto& app = std::get<TypeApplication>(payload);
  std::string out = "(ty " + print_name(heaps.former(app.former).name);
  for (const Handle arg : app.args) out += " " + print_type(heaps, arg);
  out.push_back(')');
  return out;
}

std::string print_term(const HeapSet& heaps, Handle term) {
  const TermEntry& entry = heaps.term(term);
  if (const auto* var = std::get_if<TermVariable>(&entry.payload)) {
    return "(var " + print_name(var->name) + " " +
           print_type(heaps, var->type) + ")";
  }
  if (const auto* con = std::get_if<TermConstant>(&entry.payload)) {
    std::string out =
        "(const " + print_name(heaps.constant(con->constant).name);
    for (const auto& [name, type] : con->instantiation) {
      out += " (inst " + print_name(name) + " " + print_type(heaps, type) +
             ")";
    }
    out.push_back(')');
    return out;
  }
  if (const auto* app = std::get_if<TermApplication>(&entry.payload)) {
    return "(app " + print_term(heaps, app->left) + " " +
           print_term(heaps, app->right) + ")";
  }
  const auto& lam = std::get<TermLambda>(entry.payload);
  return "(lam " + print_name(lam.bound_name) + " " +
         print_type(heaps, lam.bound_type) + " " +
         print_term(heaps, lam.body) + ")";
}

}  // namespace warden
