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

#include "warden/wasm.hpp"

#include <bit>
#include <cstring>

namespace warden::wasm {

namespace {

constexpr uint8_t kOpUnreachable = 0x00;
constexpr uint8_t kOpNop = 0x01;
constexpr uint8_t kOpBlock = 0x02;
constexpr uint8_t kOpLoop = 0x03;
constexpr uint8_t kOpIf = 0x04;
constexpr uint8_t kOpElse = 0x05;
constexpr uint8_t kOpEnd = 0x0B;
constexpr uint8_t kOpBr = 0x0C;
constexpr uint8_t kOpBrIf = 0x0D;
constexpr uint8_t kOpBrTable = 0x0E;
constexpr uint8_t kOpReturn = 0x0F;
constexpr uint8_t kOpCall = 0x10;
constexpr uint8_t kOpDrop = 0x1A;
constexpr uint8_t kOpSelect = 0x1B;
constexpr uint8_t kOpLocalGet = 0x20;
constexpr uint8_t kOpLocalSet = 0x21;
constexpr uint8_t kOpLocalTee = 0x22;
constexpr uint8_t kOpGlobalGet = 0x23;
constexpr uint8_t kOpGlobalSet = 0x24;
constexpr uint8_t kOpI32Const = 0x41;
constexpr uint8_t kOpI64Const = 0x42;

class Reader {
 public:
  Reader(const uint8_t* data, size_t size) : data_(data), size_(size) {}

  size_t pos() const { return pos_; }
  void seek(size_t p) { pos_ = p; }
  bool done() const { return pos_ >= size_; }

  uint8_t u8() {
    need(1);
    return data_[pos_++];
  }
  uint32_t u32() { return uint32_t(uleb(5)); }
  int32_t s32() { return int32_t(sleb(5)); }
  int64_t s64() { return sleb(10); }

  std::string name() {
    const uint32_t n = u32();
    need(n);
    std::string s(reinterpret_cast<const char*>(data_ + pos_), n);
    pos_ += n;
    return s;
  }
  std::vector<uint8_t> bytes(size_t n) {
    need(n);
    std::vector<uint8_t> out(data_ + pos_, data_ + pos_ + n);
    pos_ += n;
    return out;
  }

 private:
  void need(size_t n) const {
    if (size_ - pos_ < n) throw DecodeError("truncated module");
  }
  uint64_t uleb(int max_bytes) {
    uint64_t result = 0;
    int shift = 0;
    for (int i = 0; i < max_bytes; ++i) {
      const uint8_t b = u8();
      result |= uint64_t(b & 0x7F) << shift;
      if (!(b & 0x80)) return result;
      shift += 7;
    }
    throw DecodeError("integer literal too long");
  }
  int64_t sleb(int max_bytes) {
    int64_t result = 0;
    int shift = 0;
    for (int i = 0; i < max_bytes; ++i) {
      const uint8_t b = u8();
      result |= int64_t(b & 0x7F) << shift;
      shift += 7;
      if (!(b & 0x80)) {
        if (shift < 64 && (b & 0x40)) result |= -(int64_t(1) << shift);
        return result;
      }
    }
    throw DecodeError("integer literal too long");
  }

  const uint8_t* data_;
  size_t size_;
  size_t pos_ = 0;
};

uint8_t value_type(Reader& r) {
  const uint8_t t = r.u8();
  if (t == kI32 || t == kI64) return t;
  if (t == 0x7D || t == 0x7C)
    throw DecodeError("floating point types are not supported");
  throw DecodeError("bad value type");
}

void check_block_type(uint8_t bt) {
  if (bt != 0x40 && bt != kI32 && bt != kI64)
    throw DecodeError("unsupported block type");
}

bool is_load_store(uint8_t op) {
  return (op >= 0x28 && op <= 0x3E) && op != 0x2A && op != 0x2B &&
         op != 0x38 && op != 0x39;  // the gaps are float accesses
}

bool is_plain_numeric(uint8_t op) {
  // eqz/comparisons, integer arithmetic, wrap and extend.
  return (op >= 0x45 && op <= 0x5A) || (op >= 0x67 && op <= 0x8A) ||
         op == 0xA7 || op == 0xAC || op == 0xAD;
}

struct ScanContext {
  size_t total_functions = 0;
  size_t locals = 0;
  const std::vector<Global>* globals = nullptr;
  bool has_memory = false;
};

// One pass over a body: checks the opcode subset, immediates, nesting,
// and branch depths, and records else/end offsets for the interpreter.
void scan_body(FuncBody& body, const ScanContext& ctx) {
  Reader r(body.code.data(), body.code.size());
  constexpr size_t kFrame = SIZE_MAX;
  std::vector<size_t> open{kFrame};

  while (true) {
    const size_t at = r.pos();
    const uint8_t op = r.u8();
    switch (op) {
      case kOpBlock:
      case kOpLoop:
      case kOpIf:
        check_block_type(r.u8());
        open.push_back(at);
        body.structure[at] = FuncBody::Structure{};
        break;
      case kOpElse: {
        if (open.back() == kFrame || body.code[open.back()] != kOpIf)
          throw DecodeError("else outside if");
        FuncBody::Structure& s = body.structure[open.back()];
        if (s.else_at != SIZE_MAX) throw DecodeError("second else");
        s.else_at = at;
        break;
      }
      case kOpEnd: {
        const size_t opened = open.back();
        open.pop_back();
        if (opened == kFrame) {
          if (!r.done()) throw DecodeError("trailing bytes in function body");
          return;
        }
        body.structure[opened].end_at = at;
        break;
      }
      case kOpBr:
      case kOpBrIf:
        if (r.u32() >= open.size())
          throw DecodeError("branch depth out of range");
        break;
      case kOpBrTable: {
        const uint32_t n = r.u32();
        if (n > 1024) throw DecodeError("branch table too large");
        for (uint32_t i = 0; i <= n; ++i)
          if (r.u32() >= open.size())
            throw DecodeError("branch depth out of range");
        break;
      }
      case kOpReturn:
      case kOpUnreachable:
      case kOpNop:
      case kOpDrop:
      case kOpSelect:
        break;
      case kOpCall:
        if (r.u32() >= ctx.total_functions)
          throw DecodeError("call target out of range");
        break;
      case kOpLocalGet:
      case kOpLocalSet:
      case kOpLocalTee:
        if (r.u32() >= ctx.locals) throw DecodeError("local out of range");
        break;
      case kOpGlobalGet:
      case kOpGlobalSet: {
        const uint32_t idx = r.u32();
        if (idx >= ctx.globals->size())
          throw DecodeError("global out of range");
        if (op == kOpGlobalSet && !(*ctx.globals)[idx].is_mutable)
          throw DecodeError("assignment to immutable global");
        break;
      }
      case 0x3F:
      case 0x40:
        if (!ctx.has_memory)
          throw DecodeError("memory instruction without memory");
        if (r.u8() != 0x00) throw DecodeError("bad memory index");
        break;
      case kOpI32Const:
        r.s32();
        break;
      case kOpI64Const:
        r.s64();
        break;
      default:
        if (is_load_store(op)) {
          if (!ctx.has_memory)
            throw DecodeError("memory instruction without memory");
          r.u32();  // alignment hint, unused
          r.u32();  // offset
          break;
        }
        if (is_plain_numeric(op)) break;
        throw DecodeError("unsupported opcode");
    }
  }
}

uint64_t mask32(uint64_t v) { return uint64_t(uint32_t(v)); }

}  // namespace

const FuncType& Module::function_type(uint32_t func_index) const {
  if (func_index < imports.size())
    return types[imports[func_index].type_index];
  return types[functions[func_index - imports.size()].type_index];
}

Module decode(std::span<const uint8_t> image) {
  Reader r(image.data(), image.size());
  if (image.size() < 8 || r.u8() != 0x00 || r.u8() != 0x61 ||
      r.u8() != 0x73 || r.u8() != 0x6D)
    throw DecodeError("bad magic");
  if (r.u8() != 0x01 || r.u8() != 0x00 || r.u8() != 0x00 || r.u8() != 0x00)
    throw DecodeError("unsupported version");

  Module m;
  std::vector<uint32_t> function_types;
  bool saw_code = false;
  int last_section = 0;

  while (!r.done()) {
    const uint8_t id = r.u8();
    const uint32_t size = r.u32();
    const std::vector<uint8_t> payload = r.bytes(size);
    Reader s(payload.data(), payload.size());
    if (id != 0) {
      if (id <= last_section) throw DecodeError("out of order section");
      last_section = id;
    }

    switch (id) {
      case 0:
        break;  // custom, skipped
      case 1: {
        const uint32_t count = s.u32();
        for (uint32_t i = 0; i < count; ++i) {
          if (s.u8() != 0x60) throw DecodeError("bad function type");
          FuncType t;
          const uint32_t np = s.u32();
          if (np > 8) throw DecodeError("too many parameters");
          for (uint32_t j = 0; j < np; ++j) t.params.push_back(value_type(s));
          const uint32_t nr = s.u32();
          if (nr > 1) throw DecodeError("multiple results");
          for (uint32_t j = 0; j < nr; ++j)
            t.results.push_back(value_type(s));
          m.types.push_back(std::move(t));
        }
        break;
      }
      case 2: {
        const uint32_t count = s.u32();
        for (uint32_t i = 0; i < count; ++i) {
          Import imp;
          imp.module = s.name();
          imp.name = s.name();
          if (s.u8() != 0x00) throw DecodeError("unsupported import kind");
          imp.type_index = s.u32();
          if (imp.type_index >= m.types.size())
            throw DecodeError("import type out of range");
          m.imports.push_back(std::move(imp));
        }
        break;
      }
      case 3: {
        const uint32_t count = s.u32();
        for (uint32_t i = 0; i < count; ++i) {
          const uint32_t t = s.u32();
          if (t >= m.types.size())
            throw DecodeError("function type out of range");
          function_types.push_back(t);
        }
        break;
      }
      case 5: {
        const uint32_t count = s.u32();
        if (count > 1) throw DecodeError("multiple memories");
        if (count == 1) {
          const uint8_t flag = s.u8();
          if (flag > 1) throw DecodeError("bad memory limits");
          m.has_memory = true;
          m.memory_min_pages = s.u32();
          m.memory_max_pages = flag ? s.u32() : kMaxMemoryPages;
          if (m.memory_min_pages > kMaxMemoryPages ||
              m.memory_max_pages > kMaxMemoryPages ||
              m.memory_min_pages > m.memory_max_pages)
            throw DecodeError("memory too large");
        }
        break;
      }
      case 6: {
        const uint32_t count = s.u32();
        for (uint32_t i = 0; i < count; ++i) {
          Global g;
          g.type = value_type(s);
          const uint8_t mut = s.u8();
          if (mut > 1) throw DecodeError("bad mutability");
          g.is_mutable = mut == 1;
          const uint8_t op = s.u8();
          if (op == kOpI32Const && g.type == kI32)
            g.init = mask32(uint64_t(int64_t(s.s32())));
          else if (op == kOpI64Const && g.type == kI64)
            g.init = uint64_t(s.s64());
          else
            throw DecodeError("unsupported global initializer");
          if (s.u8() != kOpEnd) throw DecodeError("bad initializer");
          m.globals.push_back(g);
        }
        break;
      }
      case 7: {
        const uint32_t count = s.u32();
        for (uint32_t i = 0; i < count; ++i) {
          Export e;
          e.name = s.name();
          e.kind = s.u8();
          if (e.kind > 3) throw DecodeError("bad export kind");
          e.index = s.u32();
          m.exports.push_back(std::move(e));
        }
        break;
      }
      case 8:
        m.start = s.u32();
        break;
      case 10: {
        saw_code = true;
        const uint32_t count = s.u32();
        if (count != function_types.size())
          throw DecodeError("function and code counts differ");
        for (uint32_t i = 0; i < count; ++i) {
          const uint32_t body_size = s.u32();
          const size_t body_end = s.pos() + body_size;
          FuncBody body;
          body.type_index = function_types[i];
          const uint32_t decls = s.u32();
          for (uint32_t d = 0; d < decls; ++d) {
            const uint32_t n = s.u32();
            const uint8_t t = value_type(s);
            if (body.locals.size() + n > 4096)
              throw DecodeError("too many locals");
            body.locals.insert(body.locals.end(), n, t);
          }
          if (s.pos() > body_end) throw DecodeError("truncated module");
          body.code = s.bytes(body_end - s.pos());
          if (body.code.empty()) throw DecodeError("empty function body");
          m.functions.push_back(std::move(body));
        }
        break;
      }
      case 11: {
        const uint32_t count = s.u32();
        for (uint32_t i = 0; i < count; ++i) {
          if (s.u32() != 0) throw DecodeError("unsupported data segment");
          if (s.u8() != kOpI32Const) throw DecodeError("bad data offset");
          const int32_t offset = s.s32();
          if (s.u8() != kOpEnd) throw DecodeError("bad data offset");
          if (offset < 0) throw DecodeError("bad data offset");
          DataSegment seg;
          seg.offset = uint32_t(offset);
          seg.bytes = s.bytes(s.u32());
          m.data.push_back(std::move(seg));
        }
        break;
      }
      default:
        throw DecodeError("unsupported section");
    }
  }

  if (!saw_code && !function_types.empty())
    throw DecodeError("function and code counts differ");

  const size_t total = m.imports.size() + m.functions.size();
  for (const Export& e : m.exports) {
    if (e.kind == 0 && e.index >= total)
      throw DecodeError("export index out of range");
    if (e.kind == 2 && (!m.has_memory || e.index != 0))
      throw DecodeError("export index out of range");
  }
  if (m.start) {
    if (*m.start >= total) throw DecodeError("start index out of range");
    const FuncType& t = m.function_type(*m.start);
    if (!t.params.empty() || !t.results.empty())
      throw DecodeError("start function must be nullary and void");
  }

  for (FuncBody& body : m.functions) {
    ScanContext ctx;
    ctx.total_functions = total;
    ctx.locals = m.types[body.type_index].params.size() + body.locals.size();
    ctx.globals = &m.globals;
    ctx.has_memory = m.has_memory;
    scan_body(body, ctx);
  }
  return m;
}

Instance::Instance(Module module, const HostResolver& resolve)
    : module_(std::move(module)) {
  bound_.reserve(module_.imports.size());
  for (const Import& imp : module_.imports) {
    auto f = resolve(imp.module, imp.name, module_.types[imp.type_index]);
    if (!f) throw LinkError("unknown import " + imp.module + "." + imp.name);
    bound_.push_back(std::move(*f));
  }
  if (module_.has_memory)
    memory_.assign(size_t(module_.memory_min_pages) * kPageSize, 0);
  globals_.reserve(module_.globals.size());
  for (const Global& g : module_.globals) globals_.push_back(g.init);
  for (const DataSegment& seg : module_.data) {
    if (seg.offset + uint64_t(seg.bytes.size()) > memory_.size())
      throw Trap("data segment out of bounds");
    std::memcpy(memory_.data() + seg.offset, seg.bytes.data(),
                seg.bytes.size());
  }
  if (module_.start) invoke(*module_.start, {});
}

std::optional<uint64_t> Instance::call_nullary(std::string_view export_name) {
  for (const Export& e : module_.exports) {
    if (e.kind != 0 || e.name != export_name) continue;
    const FuncType& t = module_.function_type(e.index);
    if (!t.params.empty())
      throw LinkError("entry function takes parameters");
    depth_ = 0;
    return invoke(e.index, {});
  }
  throw LinkError("no exported function named '" + std::string(export_name) +
                  "'");
}

std::optional<uint64_t> Instance::invoke(uint32_t func_index,
                                         std::span<const uint64_t> args) {
  if (func_index < module_.imports.size()) {
    const FuncType& t = module_.types[module_.imports[func_index].type_index];
    const GuestView view{memory_.data(), memory_.size()};
    const uint64_t result = bound_[func_index](view, args);
    if (t.results.empty()) return std::nullopt;
    return t.results[0] == kI32 ? mask32(result) : result;
  }

  if (depth_ >= kMaxCallDepth) throw Trap("call depth exceeded");
  ++depth_;
  const FuncBody& body =
      module_.functions[func_index - module_.imports.size()];
  const FuncType& t = module_.types[body.type_index];
  std::vector<uint64_t> locals(args.begin(), args.end());
  locals.resize(t.params.size() + body.locals.size(), 0);
  auto result = execute(body, std::move(locals), t.results.size());
  --depth_;
  return result;
}

std::optional<uint64_t> Instance::execute(const FuncBody& body,
                                          std::vector<uint64_t> locals,
                                          size_t result_count) {
  struct Label {
    size_t height;
    size_t arity;
    size_t cont;
  };
  std::vector<uint64_t> stack;
  std::vector<Label> control;
  control.push_back(Label{0, result_count, body.code.size()});
  Reader r(body.code.data(), body.code.size());

  const auto pop = [&]() -> uint64_t {
    if (stack.empty()) throw Trap("value stack underflow");
    const uint64_t v = stack.back();
    stack.pop_back();
    return v;
  };
  const auto push = [&](uint64_t v) {
    if (stack.size() >= 1 << 16) throw Trap("value stack overflow");
    stack.push_back(v);
  };
  const auto finish = [&]() -> std::optional<uint64_t> {
    if (result_count == 0) return std::nullopt;
    return pop();
  };

  // Pops depth+1 labels, carries the target's arity values, and moves the
  // program counter; a branch out of the function frame returns.
  const auto branch = [&](uint32_t depth) {
    const Label target = control[control.size() - 1 - depth];
    if (stack.size() < target.height + target.arity)
      throw Trap("branch below stack");
    std::vector<uint64_t> carried(stack.end() - target.arity, stack.end());
    stack.resize(target.height);
    stack.insert(stack.end(), carried.begin(), carried.end());
    control.resize(control.size() - 1 - depth);
    r.seek(target.cont);
  };

  const auto mem_slot = [&](uint64_t offset, size_t bytes) -> uint8_t* {
    const uint64_t base = mask32(pop());
    const uint64_t addr = base + offset;
    if (addr + bytes > memory_.size() || addr + bytes < addr)
      throw Trap("memory access out of bounds");
    return memory_.data() + addr;
  };
  const auto load = [&](uint64_t offset, size_t bytes) -> uint64_t {
    const uint8_t* p = mem_slot(offset, bytes);
    uint64_t v = 0;
    std::memcpy(&v, p, bytes);  // little-endian host assumed
    return v;
  };
  const auto store = [&](uint64_t offset, size_t bytes, uint64_t v) {
    uint8_t* p = mem_slot(offset, bytes);
    std::memcpy(p, &v, bytes);
  };
  const auto sext = [](uint64_t v, int from_bits) -> uint64_t {
    const int shift = 64 - from_bits;
    return uint64_t((int64_t(v) << shift) >> shift);
  };

  while (true) {
    if (fuel_ == 0) throw Trap("fuel exhausted");
    --fuel_;

    const size_t at = r.pos();
    const uint8_t op = r.u8();
    switch (op) {
      case kOpUnreachable:
        throw Trap("unreachable executed");
      case kOpNop:
        break;

      case kOpBlock: {
        const uint8_t bt = r.u8();
        control.push_back(Label{stack.size(), size_t(bt != 0x40 ? 1 : 0),
                                body.structure.at(at).end_at + 1});
        break;
      }
      case kOpLoop: {
        r.u8();
        // Branching to a loop re-executes this opcode, restoring the label.
        control.push_back(Label{stack.size(), 0, at});
        break;
      }
      case kOpIf: {
        const uint8_t bt = r.u8();
        const FuncBody::Structure& s = body.structure.at(at);
        const uint64_t cond = pop();
        control.push_back(
            Label{stack.size(), size_t(bt != 0x40 ? 1 : 0), s.end_at + 1});
        if (!cond) r.seek(s.else_at != SIZE_MAX ? s.else_at + 1 : s.end_at);
        break;
      }
      case kOpElse:
        // Fall-through from the then branch; leave as a branch to end.
        branch(0);
        break;
      case kOpEnd:
        control.pop_back();
        if (control.empty()) return finish();
        break;

      case kOpBr:
        branch(r.u32());
        if (control.empty()) return finish();
        break;
      case kOpBrIf: {
        const uint32_t depth = r.u32();
        if (pop()) {
          branch(depth);
          if (control.empty()) return finish();
        }
        break;
      }
      case kOpBrTable: {
        const uint32_t n = r.u32();
        std::vector<uint32_t> depths(n + 1);
        for (uint32_t& d : depths) d = r.u32();
        const uint64_t idx = mask32(pop());
        branch(depths[idx < n ? idx : n]);
        if (control.empty()) return finish();
        break;
      }
      case kOpReturn:
        branch(uint32_t(control.size() - 1));
        return finish();

      case kOpCall: {
        const uint32_t target = r.u32();
        const FuncType& t = module_.function_type(target);
        std::vector<uint64_t> args(t.params.size());
        for (size_t i = t.params.size(); i > 0; --i) args[i - 1] = pop();
        const auto result = invoke(target, args);
        if (result) push(*result);
        break;
      }

      case kOpDrop:
        pop();
        break;
      case kOpSelect: {
        const uint64_t cond = pop();
        const uint64_t b = pop();
        const uint64_t a = pop();
        push(cond ? a : b);
        break;
      }

      case kOpLocalGet:
        push(locals[r.u32()]);
        break;
      case kOpLocalSet:
        locals[r.u32()] = pop();
        break;
      case kOpLocalTee: {
        const uint32_t idx = r.u32();
        if (stack.empty()) throw Trap("value stack underflow");
        locals[idx] = stack.back();
        break;
      }
      case kOpGlobalGet:
        push(globals_[r.u32()]);
        break;
      case kOpGlobalSet:
        globals_[r.u32()] = pop();
        break;

      case 0x28:  // i32.load
        r.u32();
        push(load(r.u32(), 4));
        break;
      case 0x29:  // i64.load
        r.u32();
        push(load(r.u32(), 8));
        break;
      case 0x2C:
        r.u32();
        push(mask32(sext(load(r.u32(), 1), 8)));
        break;
      case 0x2D:
        r.u32();
        push(load(r.u32(), 1));
        break;
      case 0x2E:
        r.u32();
        push(mask32(sext(load(r.u32(), 2), 16)));
        break;
      case 0x2F:
        r.u32();
        push(load(r.u32(), 2));
        break;
      case 0x30:
        r.u32();
        push(sext(load(r.u32(), 1), 8));
        break;
      case 0x31:
        r.u32();
        push(load(r.u32(), 1));
        break;
      case 0x32:
        r.u32();
        push(sext(load(r.u32(), 2), 16));
        break;
      case 0x33:
        r.u32();
        push(load(r.u32(), 2));
        break;
      case 0x34:
        r.u32();
        push(sext(load(r.u32(), 4), 32));
        break;
      case 0x35:
        r.u32();
        push(load(r.u32(), 4));
        break;
      case 0x36: {  // i32.store
        r.u32();
        const uint64_t offset = r.u32();
        const uint64_t v = pop();
        store(offset, 4, v);
        break;
      }
      case 0x37: {
        r.u32();
        const uint64_t offset = r.u32();
        const uint64_t v = pop();
        store(offset, 8, v);
        break;
      }
      case 0x3A: {
        r.u32();
        const uint64_t offset = r.u32();
        const uint64_t v = pop();
        store(offset, 1, v);
        break;
      }
      case 0x3B: {
        r.u32();
        const uint64_t offset = r.u32();
        const uint64_t v = pop();
        store(offset, 2, v);
        break;
      }
      case 0x3C: {
        r.u32();
        const uint64_t offset = r.u32();
        const uint64_t v = pop();
        store(offset, 1, v);
        break;
      }
      case 0x3D: {
        r.u32();
        const uint64_t offset = r.u32();
        const uint64_t v = pop();
        store(offset, 2, v);
        break;
      }
      case 0x3E: {
        r.u32();
        const uint64_t offset = r.u32();
        const uint64_t v = pop();
        store(offset, 4, v);
        break;
      }
      case 0x3F:
        r.u8();
        push(memory_.size() / kPageSize);
        break;
      case 0x40: {
        r.u8();
        const uint64_t delta = mask32(pop());
        const uint64_t current = memory_.size() / kPageSize;
        if (current + delta > module_.memory_max_pages) {
          push(mask32(uint64_t(-1)));
        } else {
          memory_.resize(size_t(current + delta) * kPageSize, 0);
          push(current);
        }
        break;
      }

      case kOpI32Const:
        push(mask32(uint64_t(int64_t(r.s32()))));
        break;
      case kOpI64Const:
        push(uint64_t(r.s64()));
        break;

      default: {
        // Numeric operators, all immediate-free.
        const auto i32cmp = [&](auto f) {
          const uint32_t b = uint32_t(pop());
          const uint32_t a = uint32_t(pop());
          push(f(a, b) ? 1 : 0);
        };
        const auto i64cmp = [&](auto f) {
          const uint64_t b = pop();
          const uint64_t a = pop();
          push(f(a, b) ? 1 : 0);
        };
        const auto i32bin = [&](auto f) {
          const uint32_t b = uint32_t(pop());
          const uint32_t a = uint32_t(pop());
          push(mask32(f(a, b)));
        };
        const auto i64bin = [&](auto f) {
          const uint64_t b = pop();
          const uint64_t a = pop();
          push(f(a, b));
        };
        switch (op) {
          case 0x45: push(uint32_t(pop()) == 0 ? 1 : 0); break;
          case 0x46: i32cmp([](uint32_t a, uint32_t b) { return a == b; }); break;
          case 0x47: i32cmp([](uint32_t a, uint32_t b) { return a != b; }); break;
          case 0x48: i32cmp([](uint32_t a, uint32_t b) { return int32_t(a) < int32_t(b); }); break;
          case 0x49: i32cmp([](uint32_t a, uint32_t b) { return a < b; }); break;
          case 0x4A: i32cmp([](uint32_t a, uint32_t b) { return int32_t(a) > int32_t(b); }); break;
          case 0x4B: i32cmp([](uint32_t a, uint32_t b) { return a > b; }); break;
          case 0x4C: i32cmp([](uint32_t a, uint32_t b) { return int32_t(a) <= int32_t(b); }); break;
          case 0x4D: i32cmp([](uint32_t a, uint32_t b) { return a <= b; }); break;
          case 0x4E: i32cmp([](uint32_t a, uint32_t b) { return int32_t(a) >= int32_t(b); }); break;
          case 0x4F: i32cmp([](uint32_t a, uint32_t b) { return a >= b; }); break;
          case 0x50: push(pop() == 0 ? 1 : 0); break;
          case 0x51: i64cmp([](uint64_t a, uint64_t b) { return a == b; }); break;
          case 0x52: i64cmp([](uint64_t a, uint64_t b) { return a != b; }); break;
          case 0x53: i64cmp([](uint64_t a, uint64_t b) { return int64_t(a) < int64_t(b); }); break;
          case 0x54: i64cmp([](uint64_t a, uint64_t b) { return a < b; }); break;
          case 0x55: i64cmp([](uint64_t a, uint64_t b) { return int64_t(a) > int64_t(b); }); break;
          case 0x56: i64cmp([](uint64_t a, uint64_t b) { return a > b; }); break;
          case 0x57: i64cmp([](uint64_t a, uint64_t b) { return int64_t(a) <= int64_t(b); }); break;
          case 0x58: i64cmp([](uint64_t a, uint64_t b) { return a <= b; }); break;
          case 0x59: i64cmp([](uint64_t a, uint64_t b) { return int64_t(a) >= int64_t(b); }); break;
          case 0x5A: i64cmp([](uint64_t a, uint64_t b) { return a >= b; }); break;

          case 0x67: push(std::countl_zero(uint32_t(pop()))); break;
          case 0x68: push(std::countr_zero(uint32_t(pop()))); break;
          case 0x69: push(std::popcount(uint32_t(pop()))); break;
          case 0x6A: i32bin([](uint32_t a, uint32_t b) { return uint64_t(a) + b; }); break;
          case 0x6B: i32bin([](uint32_t a, uint32_t b) { return uint64_t(a) - b; }); break;
          case 0x6C: i32bin([](uint32_t a, uint32_t b) { return uint64_t(a) * b; }); break;
          case 0x6D:
            i32bin([](uint32_t a, uint32_t b) -> uint64_t {
              if (b == 0) throw Trap("division by zero");
              if (a == 0x80000000u && b == 0xFFFFFFFFu)
                throw Trap("integer overflow");
              return uint64_t(uint32_t(int32_t(a) / int32_t(b)));
            });
            break;
          case 0x6E:
            i32bin([](uint32_t a, uint32_t b) -> uint64_t {
              if (b == 0) throw Trap("division by zero");
              return a / b;
            });
            break;
          case 0x6F:
            i32bin([](uint32_t a, uint32_t b) -> uint64_t {
              if (b == 0) throw Trap("division by zero");
              if (a == 0x80000000u && b == 0xFFFFFFFFu) return 0;
              return uint64_t(uint32_t(int32_t(a) % int32_t(b)));
            });
            break;
          case 0x70:
            i32bin([](uint32_t a, uint32_t b) -> uint64_t {
              if (b == 0) throw Trap("division by zero");
              return a % b;
            });
            break;
          case 0x71: i32bin([](uint32_t a, uint32_t b) { return uint64_t(a & b); }); break;
          case 0x72: i32bin([](uint32_t a, uint32_t b) { return uint64_t(a | b); }); break;
          case 0x73: i32bin([](uint32_t a, uint32_t b) { return uint64_t(a ^ b); }); break;
          case 0x74: i32bin([](uint32_t a, uint32_t b) { return uint64_t(a) << (b & 31); }); break;
          case 0x75: i32bin([](uint32_t a, uint32_t b) { return uint64_t(uint32_t(int32_t(a) >> (b & 31))); }); break;
          case 0x76: i32bin([](uint32_t a, uint32_t b) { return uint64_t(a >> (b & 31)); }); break;
          case 0x77: i32bin([](uint32_t a, uint32_t b) { return uint64_t(std::rotl(a, int(b & 31))); }); break;
          case 0x78: i32bin([](uint32_t a, uint32_t b) { return uint64_t(std::rotr(a, int(b & 31))); }); break;

          case 0x79: push(std::countl_zero(pop())); break;
          case 0x7A: push(std::countr_zero(pop())); break;
          case 0x7B: push(std::popcount(pop())); break;
          case 0x7C: i64bin([](uint64_t a, uint64_t b) { return a + b; }); break;
          case 0x7D: i64bin([](uint64_t a, uint64_t b) { return a - b; }); break;
          case 0x7E: i64bin([](uint64_t a, uint64_t b) { return a * b; }); break;
          case 0x7F:
            i64bin([](uint64_t a, uint64_t b) -> uint64_t {
              if (b == 0) throw Trap("division by zero");
              if (a == 0x8000000000000000ull && b == uint64_t(-1))
                throw Trap("integer overflow");
              return uint64_t(int64_t(a) / int64_t(b));
            });
            break;
          case 0x80:
            i64bin([](uint64_t a, uint64_t b) -> uint64_t {
              if (b == 0) throw Trap("division by zero");
              return a / b;
            });
            break;
          case 0x81:
            i64bin([](uint64_t a, uint64_t b) -> uint64_t {
              if (b == 0) throw Trap("division by zero");
              if (a == 0x8000000000000000ull && b == uint64_t(-1)) return 0;
              return uint64_t(int64_t(a) % int64_t(b));
            });
            break;
          case 0x82:
            i64bin([](uint64_t a, uint64_t b) -> uint64_t {
              if (b == 0) throw Trap("division by zero");
              return a % b;
            });
            break;
          case 0x83: i64bin([](uint64_t a, uint64_t b) { return a & b; }); break;
          case 0x84: i64bin([](uint64_t a, uint64_t b) { return a | b; }); break;
          case 0x85: i64bin([](uint64_t a, uint64_t b) { return a ^ b; }); break;
          case 0x86: i64bin([](uint64_t a, uint64_t b) { return a << (b & 63); }); break;
          case 0x87: i64bin([](uint64_t a, uint64_t b) { return uint64_t(int64_t(a) >> (b & 63)); }); break;
          case 0x88: i64bin([](uint64_t a, uint64_t b) { return a >> (b & 63); }); break;
          case 0x89: i64bin([](uint64_t a, uint64_t b) { return std::rotl(a, int(b & 63)); }); break;
          case 0x8A: i64bin([](uint64_t a, uint64_t b) { return std::rotr(a, int(b & 63)); }); break;

          case 0xA7: push(mask32(pop())); break;
          case 0xAC: push(sext(mask32(pop()), 32)); break;
          case 0xAD: push(mask32(pop())); break;
          default:
            throw Trap("unsupported opcode");  // unreachable after scan
        }
      }
    }
  }
}

}  // namespace warden::wasm
