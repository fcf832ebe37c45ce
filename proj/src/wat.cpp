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

#include "warden/wat.hpp"

#include <cctype>
#include <map>
#include <optional>

#include "warden/sexpr.hpp"
#include "warden/wasm.hpp"

namespace warden {

namespace {

const std::map<std::string_view, uint8_t> kBareOps = {
    {"unreachable", 0x00}, {"nop", 0x01},         {"return", 0x0F},
    {"drop", 0x1A},        {"select", 0x1B},      {"i32.eqz", 0x45},
    {"i32.eq", 0x46},      {"i32.ne", 0x47},      {"i32.lt_s", 0x48},
    {"i32.lt_u", 0x49},    {"i32.gt_s", 0x4A},    {"i32.gt_u", 0x4B},
    {"i32.le_s", 0x4C},    {"i32.le_u", 0x4D},    {"i32.ge_s", 0x4E},
    {"i32.ge_u", 0x4F},    {"i64.eqz", 0x50},     {"i64.eq", 0x51},
    {"i64.ne", 0x52},      {"i64.lt_s", 0x53},    {"i64.lt_u", 0x54},
    {"i64.gt_s", 0x55},    {"i64.gt_u", 0x56},    {"i64.le_s", 0x57},
    {"i64.le_u", 0x58},    {"i64.ge_s", 0x59},    {"i64.ge_u", 0x5A},
    {"i32.clz", 0x67},     {"i32.ctz", 0x68},     {"i32.popcnt", 0x69},
    {"i32.add", 0x6A},     {"i32.sub", 0x6B},     {"i32.mul", 0x6C},
    {"i32.div_s", 0x6D},   {"i32.div_u", 0x6E},   {"i32.rem_s", 0x6F},
    {"i32.rem_u", 0x70},   {"i32.and", 0x71},     {"i32.or", 0x72},
    {"i32.xor", 0x73},     {"i32.shl", 0x74},     {"i32.shr_s", 0x75},
    {"i32.shr_u", 0x76},   {"i32.rotl", 0x77},    {"i32.rotr", 0x78},
    {"i64.clz", 0x79},     {"i64.ctz", 0x7A},     {"i64.popcnt", 0x7B},
    {"i64.add", 0x7C},     {"i64.sub", 0x7D},     {"i64.mul", 0x7E},
    {"i64.div_s", 0x7F},   {"i64.div_u", 0x80},   {"i64.rem_s", 0x81},
    {"i64.rem_u", 0x82},   {"i64.and", 0x83},     {"i64.or", 0x84},
    {"i64.xor", 0x85},     {"i64.shl", 0x86},     {"i64.shr_s", 0x87},
    {"i64.shr_u", 0x88},   {"i64.rotl", 0x89},    {"i64.rotr", 0x8A},
    {"i32.wrap_i64", 0xA7}, {"i64.extend_i32_s", 0xAC},
    {"i64.extend_i32_u", 0xAD},
};

const std::map<std::string_view, uint8_t> kMemOps = {
    {"i32.load", 0x28},     {"i64.load", 0x29},     {"i32.load8_s", 0x2C},
    {"i32.load8_u", 0x2D},  {"i32.load16_s", 0x2E}, {"i32.load16_u", 0x2F},
    {"i64.load8_s", 0x30},  {"i64.load8_u", 0x31},  {"i64.load16_s", 0x32},
    {"i64.load16_u", 0x33}, {"i64.load32_s", 0x34}, {"i64.load32_u", 0x35},
    {"i32.store", 0x36},    {"i64.store", 0x37},    {"i32.store8", 0x3A},
    {"i32.store16", 0x3B},  {"i64.store8", 0x3C},   {"i64.store16", 0x3D},
    {"i64.store32", 0x3E},
};

[[noreturn]] void fail(const Sexpr& at, const std::string& what) {
  throw WatError(at.line, what);
}

class Emitter {
 public:
  void u8(uint8_t b) { out_.push_back(b); }
  void u32(uint32_t v) {
    while (true) {
      const uint8_t b = v & 0x7F;
      v >>= 7;
      if (v == 0) {
        out_.push_back(b);
        return;
      }
      out_.push_back(b | 0x80);
    }
  }
  void s64(int64_t v) {
    while (true) {
      const uint8_t b = v & 0x7F;
      v >>= 7;
      const bool sign = b & 0x40;
      if ((v == 0 && !sign) || (v == -1 && sign)) {
        out_.push_back(b);
        return;
      }
      out_.push_back(b | 0x80);
    }
  }
  void s32(int32_t v) { s64(v); }
  void name(std::string_view s) {
    u32(uint32_t(s.size()));
    out_.insert(out_.end(), s.begin(), s.end());
  }
  void append(const std::vector<uint8_t>& bytes) {
    out_.insert(out_.end(), bytes.begin(), bytes.end());
  }
  const std::vector<uint8_t>& bytes() const { return out_; }
  bool empty() const { return out_.empty(); }

 private:
  std::vector<uint8_t> out_;
};

int64_t parse_int(const Sexpr& a) {
  if (a.tag != Sexpr::Tag::Atom) fail(a, "expected an integer");
  std::string t;
  for (const char c : a.text)
    if (c != '_') t += c;
  bool neg = false;
  size_t i = 0;
  if (i < t.size() && (t[i] == '-' || t[i] == '+')) {
    neg = t[i] == '-';
    ++i;
  }
  uint64_t v = 0;
  bool any = false;
  if (t.compare(i, 2, "0x") == 0) {
    for (i += 2; i < t.size(); ++i) {
      const char c = t[i];
      uint64_t d;
      if (c >= '0' && c <= '9') d = uint64_t(c - '0');
      else if (c >= 'a' && c <= 'f') d = uint64_t(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F') d = uint64_t(c - 'A' + 10);
      else fail(a, "bad integer '" + a.text + "'");
      v = (v << 4) | d;
      any = true;
    }
  } else {
    for (; i < t.size(); ++i) {
      if (t[i] < '0' || t[i] > '9') fail(a, "bad integer '" + a.text + "'");
      v = v * 10 + uint64_t(t[i] - '0');
      any = true;
    }
  }
  if (!any) fail(a, "bad integer '" + a.text + "'");
  return int64_t(neg ? 0 - v : v);
}

uint8_t parse_valtype(const Sexpr& a) {
  if (a.is_atom("i32")) return wasm::kI32;
  if (a.is_atom("i64")) return wasm::kI64;
  if (a.is_atom("f32") || a.is_atom("f64"))
    fail(a, "floating point types are not supported");
  fail(a, "expected a value type");
}

bool is_dollar_name(const Sexpr& e) {
  return e.tag == Sexpr::Tag::Atom && !e.text.empty() && e.text[0] == '$';
}

struct FuncDef {
  uint32_t type_index = 0;
  std::vector<std::string> local_names;  // params then locals, "" unnamed
  std::vector<uint8_t> local_types;      // declared locals only
  const Sexpr* form = nullptr;
  size_t body_from = 0;
};

struct Assembler {
  std::vector<wasm::FuncType> types;
  struct ImportEntry {
    std::string module, field;
    uint32_t type_index;
  };
  std::vector<ImportEntry> imports;
  std::vector<FuncDef> funcs;
  std::map<std::string, uint32_t> func_names;    // $name in function space
  std::map<std::string, uint32_t> global_names;
  std::vector<wasm::Global> module_globals;
  bool has_memory = false;
  uint32_t memory_min = 0;
  std::optional<uint32_t> memory_max;
  struct ExportEntry {
    std::string name;
    uint8_t kind;
    uint32_t index;
  };
  std::vector<ExportEntry> exports;
  struct PendingExport {
    std::string name;
    uint8_t kind;
    Sexpr target;
  };
  std::vector<PendingExport> pending_exports;
  std::optional<Sexpr> start_target;
  std::vector<wasm::DataSegment> data;

  uint32_t type_index(wasm::FuncType t) {
    for (uint32_t i = 0; i < types.size(); ++i)
      if (types[i] == t) return i;
    types.push_back(std::move(t));
    return uint32_t(types.size() - 1);
  }

  uint32_t resolve_func(const Sexpr& ref) {
    if (is_dollar_name(ref)) {
      const auto it = func_names.find(ref.text);
      if (it == func_names.end())
        fail(ref, "unknown function '" + ref.text + "'");
      return it->second;
    }
    return uint32_t(parse_int(ref));
  }
  uint32_t resolve_global(const Sexpr& ref) {
    if (is_dollar_name(ref)) {
      const auto it = global_names.find(ref.text);
      if (it == global_names.end())
        fail(ref, "unknown global '" + ref.text + "'");
      return it->second;
    }
    return uint32_t(parse_int(ref));
  }

  // (param $x T) | (param T*) | (result T) | (local $x T) | (local T*)
  void read_sig(const Sexpr& list, wasm::FuncType& type,
                std::vector<std::string>* names) {
    const std::string& head = list.items[0].text;
    size_t i = 1;
    std::string name;
    if (i < list.items.size() && is_dollar_name(list.items[i]))
      name = list.items[i++].text;
    if (head == "result") {
      if (!name.empty() || list.items.size() != 2)
        fail(list, "expected (result TYPE)");
      if (!type.results.empty()) fail(list, "second result");
      type.results.push_back(parse_valtype(list.items[1]));
      return;
    }
    if (!name.empty() && list.items.size() != 3)
      fail(list, "a named parameter declares exactly one type");
    for (; i < list.items.size(); ++i) {
      type.params.push_back(parse_valtype(list.items[i]));
      if (names) names->push_back(name);
      name.clear();
    }
  }

  void add_import(const Sexpr& form) {
    if (!funcs.empty()) fail(form, "imports must precede functions");
    if (form.items.size() != 4 || form.items[1].tag != Sexpr::Tag::String ||
        form.items[2].tag != Sexpr::Tag::String || !form.items[3].is_list() ||
        form.items[3].items.empty() || !form.items[3].items[0].is_atom("func"))
      fail(form, "expected (import \"mod\" \"name\" (func ...))");
    const Sexpr& desc = form.items[3];
    size_t i = 1;
    std::string fname;
    if (i < desc.items.size() && is_dollar_name(desc.items[i]))
      fname = desc.items[i++].text;
    wasm::FuncType type;
    for (; i < desc.items.size(); ++i) {
      if (!desc.items[i].is_list() || desc.items[i].items.empty())
        fail(desc.items[i], "expected (param ...) or (result ...)");
      read_sig(desc.items[i], type, nullptr);
    }
    const uint32_t index = uint32_t(imports.size());
    imports.push_back(
        {form.items[1].text, form.items[2].text, type_index(type)});
    if (!fname.empty() && !func_names.emplace(fname, index).second)
      fail(desc, "duplicate function name '" + fname + "'");
  }

  void add_func(const Sexpr& form) {
    FuncDef def;
    def.form = &form;
    size_t i = 1;
    std::string fname;
    if (i < form.items.size() && is_dollar_name(form.items[i]))
      fname = form.items[i++].text;
    const uint32_t index = uint32_t(imports.size() + funcs.size());
    if (!fname.empty() && !func_names.emplace(fname, index).second)
      fail(form, "duplicate function name '" + fname + "'");

    wasm::FuncType type;
    bool in_header = true;
    for (; i < form.items.size() && in_header; ++i) {
      const Sexpr& item = form.items[i];
      if (!item.is_list() || item.items.empty() ||
          item.items[0].tag != Sexpr::Tag::Atom) {
        in_header = false;
        break;
      }
      const std::string& head = item.items[0].text;
      if (head == "export") {
        if (item.items.size() != 2 || item.items[1].tag != Sexpr::Tag::String)
          fail(item, "expected (export \"name\")");
        exports.push_back({item.items[1].text, 0, index});
      } else if (head == "param" || head == "result") {
        read_sig(item, type, head == "param" ? &def.local_names : nullptr);
      } else if (head == "local") {
        size_t j = 1;
        std::string lname;
        if (j < item.items.size() && is_dollar_name(item.items[j]))
          lname = item.items[j++].text;
        if (!lname.empty() && item.items.size() != 3)
          fail(item, "a named local declares exactly one type");
        for (; j < item.items.size(); ++j) {
          def.local_types.push_back(parse_valtype(item.items[j]));
          def.local_names.push_back(lname);
          lname.clear();
        }
      } else {
        in_header = false;
        break;
      }
    }
    def.body_from = i;
    def.type_index = type_index(std::move(type));
    funcs.push_back(std::move(def));
  }

  void add_memory(const Sexpr& form) {
    if (has_memory) fail(form, "second memory");
    has_memory = true;
    size_t i = 1;
    while (i < form.items.size() && form.items[i].is_list()) {
      const Sexpr& item = form.items[i];
      if (item.items.empty() || !item.items[0].is_atom("export") ||
          item.items.size() != 2 || item.items[1].tag != Sexpr::Tag::String)
        fail(item, "expected (export \"name\")");
      exports.push_back({item.items[1].text, 2, 0});
      ++i;
    }
    if (i >= form.items.size()) fail(form, "memory needs a minimum size");
    memory_min = uint32_t(parse_int(form.items[i++]));
    if (i < form.items.size())
      memory_max = uint32_t(parse_int(form.items[i++]));
    if (i != form.items.size()) fail(form, "bad memory form");
  }

  void add_global(const Sexpr& form) {
    size_t i = 1;
    std::string gname;
    if (i < form.items.size() && is_dollar_name(form.items[i]))
      gname = form.items[i++].text;
    if (form.items.size() != i + 2) fail(form, "expected (global TYPE init)");
    wasm::Global g;
    const Sexpr& ty = form.items[i];
    if (ty.is_list()) {
      if (ty.items.size() != 2 || !ty.items[0].is_atom("mut"))
        fail(ty, "expected (mut TYPE)");
      g.is_mutable = true;
      g.type = parse_valtype(ty.items[1]);
    } else {
      g.type = parse_valtype(ty);
    }
    const Sexpr& init = form.items[i + 1];
    if (!init.is_list() || init.items.size() != 2)
      fail(init, "expected a constant initializer");
    const int64_t value = parse_int(init.items[1]);
    if (init.items[0].is_atom("i32.const") && g.type == wasm::kI32)
      g.init = uint64_t(uint32_t(value));
    else if (init.items[0].is_atom("i64.const") && g.type == wasm::kI64)
      g.init = uint64_t(value);
    else
      fail(init, "initializer type mismatch");
    const uint32_t index = uint32_t(module_globals.size());
    module_globals.push_back(g);
    if (!gname.empty() && !global_names.emplace(gname, index).second)
      fail(form, "duplicate global name '" + gname + "'");
  }

  void add_data(const Sexpr& form) {
    if (form.items.size() < 2 || !form.items[1].is_list() ||
        form.items[1].items.size() != 2 ||
        !form.items[1].items[0].is_atom("i32.const"))
      fail(form, "expected (data (i32.const N) \"bytes\"*)");
    wasm::DataSegment seg;
    seg.offset = uint32_t(parse_int(form.items[1].items[1]));
    for (size_t i = 2; i < form.items.size(); ++i) {
      if (form.items[i].tag != Sexpr::Tag::String)
        fail(form.items[i], "expected a string");
      const std::string& s = form.items[i].text;
      seg.bytes.insert(seg.bytes.end(), s.begin(), s.end());
    }
    data.push_back(std::move(seg));
  }

  void add_export(const Sexpr& form) {
    if (form.items.size() != 3 || form.items[1].tag != Sexpr::Tag::String ||
        !form.items[2].is_list() || form.items[2].items.size() != 2)
      fail(form, "expected (export \"name\" (func|memory REF))");
    const Sexpr& desc = form.items[2];
    uint8_t kind;
    if (desc.items[0].is_atom("func")) kind = 0;
    else if (desc.items[0].is_atom("memory")) kind = 2;
    else fail(desc, "only func and memory exports are supported");
    pending_exports.push_back({form.items[1].text, kind, desc.items[1]});
  }

  std::vector<uint8_t> assemble_body(const FuncDef& def);

  std::vector<uint8_t> finish() {
    for (const PendingExport& pe : pending_exports) {
      const uint32_t index =
          pe.kind == 0 ? resolve_func(pe.target) : uint32_t(0);
      exports.push_back({pe.name, pe.kind, index});
    }

    Emitter out;
    out.u8(0x00);
    out.u8(0x61);
    out.u8(0x73);
    out.u8(0x6D);
    out.u8(0x01);
    out.u8(0x00);
    out.u8(0x00);
    out.u8(0x00);

    const auto section = [&](uint8_t id, const Emitter& payload) {
      if (payload.empty()) return;
      out.u8(id);
      out.u32(uint32_t(payload.bytes().size()));
      out.append(payload.bytes());
    };

    Emitter sec;
    if (!types.empty()) {
      sec.u32(uint32_t(types.size()));
      for (const wasm::FuncType& t : types) {
        sec.u8(0x60);
        sec.u32(uint32_t(t.params.size()));
        for (const uint8_t p : t.params) sec.u8(p);
        sec.u32(uint32_t(t.results.size()));
        for (const uint8_t r : t.results) sec.u8(r);
      }
      section(1, sec);
    }

    if (!imports.empty()) {
      Emitter s;
      s.u32(uint32_t(imports.size()));
      for (const ImportEntry& imp : imports) {
        s.name(imp.module);
        s.name(imp.field);
        s.u8(0x00);
        s.u32(imp.type_index);
      }
      section(2, s);
    }

    if (!funcs.empty()) {
      Emitter s;
      s.u32(uint32_t(funcs.size()));
      for (const FuncDef& f : funcs) s.u32(f.type_index);
      section(3, s);
    }

    if (has_memory) {
      Emitter s;
      s.u32(1);
      if (memory_max) {
        s.u8(0x01);
        s.u32(memory_min);
        s.u32(*memory_max);
      } else {
        s.u8(0x00);
        s.u32(memory_min);
      }
      section(5, s);
    }

    if (!module_globals.empty()) {
      Emitter s;
      s.u32(uint32_t(module_globals.size()));
      for (const wasm::Global& g : module_globals) {
        s.u8(g.type);
        s.u8(g.is_mutable ? 1 : 0);
        if (g.type == wasm::kI32) {
          s.u8(0x41);
          s.s32(int32_t(uint32_t(g.init)));
        } else {
          s.u8(0x42);
          s.s64(int64_t(g.init));
        }
        s.u8(0x0B);
      }
      section(6, s);
    }

    if (!exports.empty()) {
      Emitter s;
      s.u32(uint32_t(exports.size()));
      for (const ExportEntry& e : exports) {
        s.name(e.name);
        s.u8(e.kind);
        s.u32(e.index);
      }
      section(7, s);
    }

    if (start_target) {
      Emitter s;
      s.u32(resolve_func(*start_target));
      section(8, s);
    }

    if (!funcs.empty()) {
      Emitter s;
      s.u32(uint32_t(funcs.size()));
      for (const FuncDef& f : funcs) {
        const std::vector<uint8_t> body = assemble_body(f);
        s.u32(uint32_t(body.size()));
        s.append(body);
      }
      section(10, s);
    }

    if (!data.empty()) {
      Emitter s;
      s.u32(uint32_t(data.size()));
      for (const wasm::DataSegment& seg : data) {
        s.u32(0);
        s.u8(0x41);
        s.s32(int32_t(seg.offset));
        s.u8(0x0B);
        s.u32(uint32_t(seg.bytes.size()));
        s.append(seg.bytes);
      }
      section(11, s);
    }

    return out.bytes();
  }
};

std::vector<uint8_t> Assembler::assemble_body(const FuncDef& def) {
  Emitter body;
  {
    // Run-length encode consecutive local types.
    Emitter decls;
    uint32_t groups = 0;
    size_t i = 0;
    while (i < def.local_types.size()) {
      size_t j = i;
      while (j < def.local_types.size() &&
             def.local_types[j] == def.local_types[i])
        ++j;
      decls.u32(uint32_t(j - i));
      decls.u8(def.local_types[i]);
      ++groups;
      i = j;
    }
    body.u32(groups);
    body.append(decls.bytes());
  }

  const auto local_index = [&](const Sexpr& ref) -> uint32_t {
    if (is_dollar_name(ref)) {
      for (uint32_t i = 0; i < def.local_names.size(); ++i)
        if (def.local_names[i] == ref.text) return i;
      fail(ref, "unknown local '" + ref.text + "'");
    }
    return uint32_t(parse_int(ref));
  };

  std::vector<std::string> labels;
  const auto label_depth = [&](const Sexpr& ref) -> uint32_t {
    if (is_dollar_name(ref)) {
      for (size_t i = labels.size(); i > 0; --i)
        if (labels[i - 1] == ref.text) return uint32_t(labels.size() - i);
      fail(ref, "unknown label '" + ref.text + "'");
    }
    return uint32_t(parse_int(ref));
  };

  const Sexpr& form = *def.form;
  size_t i = def.body_from;
  const auto next_atom = [&](const char* what) -> const Sexpr& {
    if (i >= form.items.size() || form.items[i].tag != Sexpr::Tag::Atom)
      fail(form, std::string("expected ") + what);
    return form.items[i++];
  };

  for (; i < form.items.size();) {
    const Sexpr& item = form.items[i];
    if (item.tag != Sexpr::Tag::Atom)
      fail(item, "expected a flat instruction");
    ++i;
    const std::string& w = item.text;

    if (w == "block" || w == "loop" || w == "if") {
      body.u8(w == "block" ? 0x02 : w == "loop" ? 0x03 : 0x04);
      std::string label;
      if (i < form.items.size() && is_dollar_name(form.items[i]))
        label = form.items[i++].text;
      uint8_t bt = 0x40;
      if (i < form.items.size() && form.items[i].is_list()) {
        const Sexpr& res = form.items[i];
        if (res.items.size() != 2 || !res.items[0].is_atom("result"))
          fail(res, "expected (result TYPE)");
        bt = parse_valtype(res.items[1]);
        ++i;
      }
      body.u8(bt);
      labels.push_back(label);
    } else if (w == "else") {
      body.u8(0x05);
    } else if (w == "end") {
      if (labels.empty()) fail(item, "end without an open block");
      labels.pop_back();
      body.u8(0x0B);
    } else if (w == "br" || w == "br_if") {
      body.u8(w == "br" ? 0x0C : 0x0D);
      body.u32(label_depth(next_atom("a label")));
    } else if (w == "br_table") {
      // Greedy: every following label atom belongs to the table, the last
      // one is the default.
      std::vector<uint32_t> depths;
      depths.push_back(label_depth(next_atom("a label")));
      while (i < form.items.size() && form.items[i].tag == Sexpr::Tag::Atom) {
        const std::string& t = form.items[i].text;
        const bool labelish = is_dollar_name(form.items[i]) ||
                              (!t.empty() && (std::isdigit(uint8_t(t[0])) != 0));
        if (!labelish) break;
        depths.push_back(label_depth(form.items[i]));
        ++i;
      }
      body.u8(0x0E);
      body.u32(uint32_t(depths.size() - 1));
      for (const uint32_t d : depths) body.u32(d);
    } else if (w == "call") {
      body.u8(0x10);
      body.u32(resolve_func(next_atom("a function")));
    } else if (w == "local.get" || w == "local.set" || w == "local.tee") {
      body.u8(w == "local.get" ? 0x20 : w == "local.set" ? 0x21 : 0x22);
      body.u32(local_index(next_atom("a local")));
    } else if (w == "global.get" || w == "global.set") {
      body.u8(w == "global.get" ? 0x23 : 0x24);
      body.u32(resolve_global(next_atom("a global")));
    } else if (w == "i32.const") {
      body.u8(0x41);
      body.s32(int32_t(uint32_t(parse_int(next_atom("an integer")))));
    } else if (w == "i64.const") {
      body.u8(0x42);
      body.s64(parse_int(next_atom("an integer")));
    } else if (w == "memory.size") {
      body.u8(0x3F);
      body.u8(0x00);
    } else if (w == "memory.grow") {
      body.u8(0x40);
      body.u8(0x00);
    } else if (const auto mem = kMemOps.find(w); mem != kMemOps.end()) {
      uint32_t offset = 0;
      while (i < form.items.size() && form.items[i].tag == Sexpr::Tag::Atom) {
        const std::string& t = form.items[i].text;
        if (t.rfind("offset=", 0) == 0) {
          Sexpr lit = form.items[i];
          lit.text = t.substr(7);
          offset = uint32_t(parse_int(lit));
          ++i;
        } else if (t.rfind("align=", 0) == 0) {
          ++i;  // alignment is a hint; the engine ignores it
        } else {
          break;
        }
      }
      body.u8(mem->second);
      body.u32(0);
      body.u32(offset);
    } else if (const auto bare = kBareOps.find(w); bare != kBareOps.end()) {
      body.u8(bare->second);
    } else {
      fail(item, "unknown instruction '" + w + "'");
    }
  }
  if (!labels.empty()) fail(form, "unclosed block");
  body.u8(0x0B);
  return body.bytes();
}

}  // namespace

std::vector<uint8_t> compile_wat(std::string_view source) {
  std::vector<Sexpr> forms;
  try {
    forms = parse_sexprs(source);
  } catch (const ParseError& e) {
    throw WatError(e.line, e.what());
  }
  if (forms.size() != 1 || !forms[0].is_list() || forms[0].items.empty() ||
      !forms[0].items[0].is_atom("module"))
    throw WatError(forms.empty() ? 1 : forms[0].line,
                   "expected a single (module ...)");

  Assembler a;
  const Sexpr& module = forms[0];
  for (size_t i = 1; i < module.items.size(); ++i) {
    const Sexpr& form = module.items[i];
    if (!form.is_list() || form.items.empty() ||
        form.items[0].tag != Sexpr::Tag::Atom)
      fail(form, "expected a module field");
    const std::string& head = form.items[0].text;
    if (head == "import") a.add_import(form);
    else if (head == "func") a.add_func(form);
    else if (head == "memory") a.add_memory(form);
    else if (head == "global") a.add_global(form);
    else if (head == "data") a.add_data(form);
    else if (head == "export") a.add_export(form);
    else if (head == "start") {
      if (form.items.size() != 2) fail(form, "expected (start FUNC)");
      a.start_target = form.items[1];
    } else {
      fail(form, "unsupported module field '" + head + "'");
    }
  }
  return a.finish();
}

}  // namespace warden
