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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "warden/abi.hpp"
#include "warden/host.hpp"
#include "warden/script.hpp"
#include "warden/vfs.hpp"
#include "warden/wat.hpp"

using namespace warden;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot open ", path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string fixture(const char* name) {
  return slurp(std::string(WARDEN_FIXTURE_DIR) + "/" + name);
}

// Compiles, instantiates with no imports, and runs one exported function.
uint64_t eval(const std::string& body_wat, const char* entry = "main") {
  const auto image = compile_wat(body_wat);
  wasm::Instance instance(
      wasm::decode(image),
      [](std::string_view, std::string_view,
         const wasm::FuncType&) -> std::optional<wasm::HostFunc> {
        return std::nullopt;
      });
  const auto result = instance.call_nullary(entry);
  REQUIRE(result.has_value());
  return *result;
}

std::string trap_message(const std::string& wat, const char* entry = "main") {
  const auto image = compile_wat(wat);
  wasm::Instance instance(
      wasm::decode(image),
      [](std::string_view, std::string_view,
         const wasm::FuncType&) -> std::optional<wasm::HostFunc> {
        return std::nullopt;
      });
  try {
    instance.call_nullary(entry);
  } catch (const wasm::Trap& trap) {
    return trap.what();
  }
  return "";
}

}  // namespace

TEST_CASE("wat assembles a well formed module") {
  const auto image = compile_wat(
      "(module\n"
      "  (import \"supervisionary\" \"theorem_allocate_truth_intro\"\n"
      "    (func $truth (param i64) (result i32)))\n"
      "  (memory 1)\n"
      "  (data (i32.const 8) \"hi\")\n"
      "  (func (export \"main\") (result i32)\n"
      "    i64.const 64\n"
      "    call $truth))\n");
  REQUIRE(image.size() > 8);
  CHECK(image[0] == 0x00);
  CHECK(image[1] == 0x61);
  CHECK(image[2] == 0x73);
  CHECK(image[3] == 0x6D);

  const wasm::Module module = wasm::decode(image);
  REQUIRE(module.imports.size() == 1);
  CHECK(module.imports[0].module == "supervisionary");
  CHECK(module.imports[0].name == "theorem_allocate_truth_intro");
  const wasm::FuncType& it = module.types[module.imports[0].type_index];
  CHECK(it.params == std::vector<uint8_t>{wasm::kI64});
  CHECK(it.results == std::vector<uint8_t>{wasm::kI32});
  REQUIRE(module.functions.size() == 1);
  CHECK(module.has_memory);
  CHECK(module.memory_min_pages == 1);
  REQUIRE(module.data.size() == 1);
  CHECK(module.data[0].offset == 8);
  CHECK(module.data[0].bytes == std::vector<uint8_t>{'h', 'i'});
  REQUIRE(module.exports.size() == 1);
  CHECK(module.exports[0].name == "main");
  CHECK(module.exports[0].kind == 0);
  CHECK(module.exports[0].index == 1);  // after the import
}

TEST_CASE("integer arithmetic") {
  CHECK(eval("(module (func (export \"main\") (result i64)\n"
             "  i64.const 21 i64.const 2 i64.mul))") == 42);
  CHECK(eval("(module (func (export \"main\") (result i32)\n"
             "  i32.const 7 i32.const 5 i32.add i32.const 3 i32.mul\n"
             "  i32.const 6 i32.sub))") == 30);
  // Signed division floors toward zero; i32 results stay zero extended.
  CHECK(eval("(module (func (export \"main\") (result i32)\n"
             "  i32.const -7 i32.const 2 i32.div_s))") == 0xFFFFFFFD);
  CHECK(eval("(module (func (export \"main\") (result i32)\n"
             "  i32.const -7 i32.const 2 i32.rem_s))") == 0xFFFFFFFF);
  CHECK(eval("(module (func (export \"main\") (result i64)\n"
             "  i64.const -1 i64.const 8 i64.shr_u))") ==
        0x00FFFFFFFFFFFFFFull);
  CHECK(eval("(module (func (export \"main\") (result i64)\n"
             "  i64.const -16 i64.const 2 i64.shr_s))") ==
        uint64_t(int64_t(-4)));
  CHECK(eval("(module (func (export \"main\") (result i32)\n"
             "  i32.const 0x0F0F i32.const 0x00FF i32.and))") == 0x000F);
  CHECK(eval("(module (func (export \"main\") (result i32)\n"
             "  i32.const 1 i32.const 33 i32.shl))") == 2);  // masked shift
  CHECK(eval("(module (func (export \"main\") (result i32)\n"
             "  i32.const 0x80000000 i32.clz))") == 0);
  CHECK(eval("(module (func (export \"main\") (result i32)\n"
             "  i32.const 8 i32.ctz))") == 3);
  CHECK(eval("(module (func (export \"main\") (result i64)\n"
             "  i64.const 0xFF i64.popcnt))") == 8);
  CHECK(eval("(module (func (export \"main\") (result i64)\n"
             "  i32.const -1 i64.extend_i32_u))") == 0xFFFFFFFFull);
  CHECK(eval("(module (func (export \"main\") (result i64)\n"
             "  i32.const -1 i64.extend_i32_s))") == uint64_t(int64_t(-1)));
  CHECK(eval("(module (func (export \"main\") (result i32)\n"
             "  i64.const 0x1_0000_0005 i32.wrap_i64))") == 5);
  CHECK(eval("(module (func (export \"main\") (result i32)\n"
             "  i64.const -3 i64.const 5 i64.lt_s))") == 1);
  CHECK(eval("(module (func (export \"main\") (result i32)\n"
             "  i64.const -3 i64.const 5 i64.lt_u))") == 0);
  CHECK(eval("(module (func (export \"main\") (result i32)\n"
             "  i32.const 0 i32.eqz))") == 1);
  CHECK(eval("(module (func (export \"main\") (result i32)\n"
             "  i32.const 10 i32.const 20 i32.const 0 select))") == 20);
}

TEST_CASE("locals and control flow") {
  // Sum 1..10 with a loop.
  CHECK(eval("(module (func (export \"main\") (result i64)\n"
             "  (local $i i64) (local $sum i64)\n"
             "  block $done\n"
             "    loop $again\n"
             "      local.get $i i64.const 10 i64.ge_s br_if $done\n"
             "      local.get $i i64.const 1 i64.add local.tee $i\n"
             "      local.get $sum i64.add local.set $sum\n"
             "      br $again\n"
             "    end\n"
             "  end\n"
             "  local.get $sum))") == 55);
  // if/else with a result type.
  CHECK(eval("(module (func (export \"main\") (result i32)\n"
             "  i32.const 3 i32.const 4 i32.lt_s\n"
             "  if (result i32) i32.const 111 else i32.const 222 end))") ==
        111);
  // br out of a block skips the rest of it.
  CHECK(eval("(module (func (export \"main\") (result i32)\n"
             "  (local $x i32)\n"
             "  block\n"
             "    i32.const 1 local.set $x\n"
             "    br 0\n"
             "    i32.const 9 local.set $x\n"
             "  end\n"
             "  local.get $x))") == 1);
  // A branch carrying a value out of a block.
  CHECK(eval("(module (func (export \"main\") (result i32)\n"
             "  block (result i32)\n"
             "    i32.const 5\n"
             "    br 0\n"
             "  end))") == 5);
  // br_table selects among exits.
  const char* table =
      "(module (func (export \"main\") (result i32)\n"
      "  (local $k i32)\n"
      "  i32.const %d local.set $k\n"
      "  block $b2 block $b1 block $b0\n"
      "    local.get $k br_table $b0 $b1 $b2\n"
      "  end i32.const 100 return end i32.const 200 return end\n"
      "  i32.const 300))";
  char buf[512];
  std::snprintf(buf, sizeof buf, table, 0);
  CHECK(eval(buf) == 100);
  std::snprintf(buf, sizeof buf, table, 1);
  CHECK(eval(buf) == 200);
  std::snprintf(buf, sizeof buf, table, 2);
  CHECK(eval(buf) == 300);
  std::snprintf(buf, sizeof buf, table, 9);  // out of range takes the default
  CHECK(eval(buf) == 300);
}

TEST_CASE("function calls and recursion guard") {
  CHECK(eval("(module\n"
             "  (func $double (param i64) (result i64)\n"
             "    local.get 0 i64.const 2 i64.mul)\n"
             "  (func (export \"main\") (result i64)\n"
             "    i64.const 8 call $double i64.const 5 call $double\n"
             "    i64.add))") == 26);
  const std::string msg = trap_message(
      "(module\n"
      "  (func $spin (result i32) call $spin)\n"
      "  (func (export \"main\") (result i32) call $spin))");
  CHECK(msg.find("depth") != std::string::npos);
}

TEST_CASE("memory operations") {
  CHECK(eval("(module (memory 1) (data (i32.const 8) \"hi\")\n"
             "  (func (export \"main\") (result i32)\n"
             "    i32.const 8 i32.load8_u))") == 'h');
  CHECK(eval("(module (memory 1)\n"
             "  (func (export \"main\") (result i64)\n"
             "    i32.const 64 i64.const -2 i64.store\n"
             "    i32.const 64 i64.load))") == uint64_t(int64_t(-2)));
  CHECK(eval("(module (memory 1)\n"
             "  (func (export \"main\") (result i32)\n"
             "    i32.const 10 i32.const 0xBEEF i32.store16\n"
             "    i32.const 10 i32.load16_u))") == 0xBEEF);
  CHECK(eval("(module (memory 1)\n"
             "  (func (export \"main\") (result i32)\n"
             "    i32.const 10 i32.const 0xBEEF i32.store16\n"
             "    i32.const 10 i32.load16_s))") == 0xFFFFBEEF);
  CHECK(eval("(module (memory 1)\n"
             "  (func (export \"main\") (result i64)\n"
             "    i32.const 0 i64.const 0x1122334455667788 i64.store\n"
             "    i32.const 0 i64.load32_u))") == 0x55667788);
  // offset= folds into the effective address.
  CHECK(eval("(module (memory 1)\n"
             "  (func (export \"main\") (result i32)\n"
             "    i32.const 100 i32.const 77 i32.store offset=12\n"
             "    i32.const 112 i32.load))") == 77);
  CHECK(eval("(module (memory 1 2)\n"
             "  (func (export \"main\") (result i32)\n"
             "    memory.size))") == 1);
  CHECK(eval("(module (memory 1 2)\n"
             "  (func (export \"main\") (result i32)\n"
             "    i32.const 1 memory.grow drop memory.size))") == 2);
  CHECK(eval("(module (memory 1 2)\n"
             "  (func (export \"main\") (result i32)\n"
             "    i32.const 5 memory.grow))") == 0xFFFFFFFF);
}

TEST_CASE("globals") {
  CHECK(eval("(module\n"
             "  (global $g (mut i64) (i64.const 40))\n"
             "  (func (export \"main\") (result i64)\n"
             "    global.get $g i64.const 2 i64.add global.set $g\n"
             "    global.get $g))") == 42);
}

TEST_CASE("traps are contained and named") {
  CHECK(trap_message("(module (func (export \"main\")\n"
                     "  unreachable))")
            .find("unreachable") != std::string::npos);
  CHECK(trap_message("(module (memory 1)\n"
                     "  (func (export \"main\") (result i64)\n"
                     "    i32.const 65530 i64.load))")
            .find("bounds") != std::string::npos);
  CHECK(trap_message("(module (func (export \"main\") (result i32)\n"
                     "  i32.const 1 i32.const 0 i32.div_u))")
            .find("zero") != std::string::npos);
  CHECK(trap_message("(module (func (export \"main\") (result i32)\n"
                     "  i32.const 0x80000000 i32.const -1 i32.div_s))")
            .find("overflow") != std::string::npos);
  CHECK(trap_message("(module (func (export \"main\") (result i64)\n"
                     "  i64.const 3 i64.const 0 i64.rem_u))")
            .find("zero") != std::string::npos);
}

TEST_CASE("fuel bounds execution") {
  const auto image = compile_wat(
      "(module (func (export \"main\")\n"
      "  loop br 0 end))");
  wasm::Instance instance(
      wasm::decode(image),
      [](std::string_view, std::string_view,
         const wasm::FuncType&) -> std::optional<wasm::HostFunc> {
        return std::nullopt;
      });
  instance.set_fuel(10'000);
  CHECK_THROWS_WITH_AS(instance.call_nullary("main"),
                       doctest::Contains("fuel"), wasm::Trap);
  CHECK(instance.fuel_remaining() == 0);
}

TEST_CASE("start function runs at instantiation") {
  const auto image = compile_wat(
      "(module (memory 1)\n"
      "  (func $init i32.const 32 i32.const 123 i32.store)\n"
      "  (start $init)\n"
      "  (func (export \"main\") (result i32)\n"
      "    i32.const 32 i32.load))");
  wasm::Instance instance(
      wasm::decode(image),
      [](std::string_view, std::string_view,
         const wasm::FuncType&) -> std::optional<wasm::HostFunc> {
        return std::nullopt;
      });
  const auto r = instance.call_nullary("main");
  REQUIRE(r.has_value());
  CHECK(*r == 123);
}

TEST_CASE("link errors") {
  const auto image = compile_wat(
      "(module\n"
      "  (import \"env\" \"mystery\" (func $m (result i32)))\n"
      "  (func (export \"main\") (result i32) call $m))");
  const wasm::HostResolver nothing =
      [](std::string_view, std::string_view,
         const wasm::FuncType&) -> std::optional<wasm::HostFunc> {
    return std::nullopt;
  };
  CHECK_THROWS_WITH_AS(wasm::Instance(wasm::decode(image), nothing),
                       doctest::Contains("env.mystery"), wasm::LinkError);

  const auto plain = compile_wat(
      "(module (func (export \"other\") (result i32) i32.const 0))");
  wasm::Instance instance(wasm::decode(plain), nothing);
  CHECK_THROWS_AS(instance.call_nullary("main"), wasm::LinkError);

  const auto needy = compile_wat(
      "(module (func (export \"main\") (param i64) (result i64)\n"
      "  local.get 0))");
  wasm::Instance needy_instance(wasm::decode(needy), nothing);
  CHECK_THROWS_AS(needy_instance.call_nullary("main"), wasm::LinkError);
}

TEST_CASE("decode rejects what the subset excludes") {
  CHECK_THROWS_AS(wasm::decode(std::vector<uint8_t>{1, 2, 3}),
                  wasm::DecodeError);
  const std::vector<uint8_t> bad_magic{0x00, 0x61, 0x73, 0x6E,
                                       0x01, 0x00, 0x00, 0x00};
  CHECK_THROWS_AS(wasm::decode(bad_magic), wasm::DecodeError);
  // Type section declaring (f32) -> (), out of the integer subset.
  const std::vector<uint8_t> with_float{0x00, 0x61, 0x73, 0x6D, 0x01, 0x00,
                                        0x00, 0x00, 0x01, 0x05, 0x01, 0x60,
                                        0x01, 0x7D, 0x00};
  CHECK_THROWS_WITH_AS(wasm::decode(with_float), doctest::Contains("floating"),
                       wasm::DecodeError);
  // A table section is not part of the subset.
  const std::vector<uint8_t> with_table{0x00, 0x61, 0x73, 0x6D, 0x01, 0x00,
                                        0x00, 0x00, 0x04, 0x04, 0x01, 0x70,
                                        0x00, 0x00};
  CHECK_THROWS_AS(wasm::decode(with_table), wasm::DecodeError);
  // Truncated mid-section.
  const std::vector<uint8_t> truncated{0x00, 0x61, 0x73, 0x6D, 0x01, 0x00,
                                       0x00, 0x00, 0x01, 0x7F};
  CHECK_THROWS_AS(wasm::decode(truncated), wasm::DecodeError);
}

TEST_CASE("wat reports source errors") {
  CHECK_THROWS_WITH_AS(compile_wat("(module (func (export \"main\")\n"
                                   "  f64.sqrt))"),
                       doctest::Contains("unknown instruction"), WatError);
  CHECK_THROWS_WITH_AS(compile_wat("(module (func (export \"main\")\n"
                                   "  block i32.const 1))"),
                       doctest::Contains("unclosed"), WatError);
  CHECK_THROWS_AS(compile_wat("(module (func $f) (import \"a\" \"b\"\n"
                              "  (func $g (result i32))))"),
                  WatError);
}

TEST_CASE("host functions see guest memory") {
  const auto image = compile_wat(
      "(module\n"
      "  (import \"env\" \"poke\" (func $poke (param i64 i64) (result i32)))\n"
      "  (memory 1)\n"
      "  (func (export \"main\") (result i64)\n"
      "    i64.const 128 i64.const 77 call $poke drop\n"
      "    i32.const 128 i64.load))");
  const wasm::HostResolver resolve =
      [](std::string_view module, std::string_view name,
         const wasm::FuncType&) -> std::optional<wasm::HostFunc> {
    if (module != "env" || name != "poke") return std::nullopt;
    return wasm::HostFunc(
        [](wasm::GuestView view, std::span<const uint64_t> args) -> uint64_t {
          const uint64_t addr = args[0];
          const uint64_t value = args[1];
          for (int i = 0; i < 8; ++i)
            view.data[addr + i] = uint8_t(value >> (8 * i));
          return 0;
        });
  };
  wasm::Instance instance(wasm::decode(image), resolve);
  const auto r = instance.call_nullary("main");
  REQUIRE(r.has_value());
  CHECK(*r == 77);
}

TEST_CASE("run_guest executes the truth guest") {
  Kernel kernel;
  const auto image = compile_wat(fixture("truth.wat"));
  const GuestRunReport report = run_guest(kernel, image);
  CAPTURE(report.status);
  REQUIRE(report.ok());
  REQUIRE(report.trace.size() == 1);
  CHECK(report.trace[0].number == kSysTheoremAllocateTruthIntro);
  REQUIRE(report.trace[0].args.size() == 1);
  CHECK(report.trace[0].args[0] == 64);
  CHECK(report.trace[0].status == Status::Success);
  CHECK(report.obligations.empty());
  const std::string json = report.to_json();
  CHECK(json.find("\"status\": \"ok\"") != std::string::npos);
}

TEST_CASE("run_guest contains guest failures") {
  Kernel kernel;
  const auto trapping = compile_wat(
      "(module (func (export \"main\") unreachable))");
  CHECK(run_guest(kernel, trapping).status.rfind("trap: ", 0) == 0);

  const auto unlinked = compile_wat(
      "(module (import \"supervisionary\" \"no_such_call\"\n"
      "  (func $f (result i32)))\n"
      "  (func (export \"main\") (result i32) call $f))");
  CHECK(run_guest(kernel, unlinked).status.rfind("link failure: ", 0) == 0);

  const auto mistyped = compile_wat(
      "(module (import \"supervisionary\" \"theorem_allocate_truth_intro\"\n"
      "  (func $f (param i64 i64) (result i32)))\n"
      "  (func (export \"main\") (result i32)\n"
      "    i64.const 0 i64.const 0 call $f))");
  const auto mistyped_report = run_guest(kernel, mistyped);
  CHECK(mistyped_report.status.rfind("link failure: ", 0) == 0);
  CHECK(mistyped_report.status.find("wrong type") != std::string::npos);

  const std::vector<uint8_t> garbage{9, 9, 9};
  CHECK(run_guest(kernel, garbage).status.rfind("invalid module: ", 0) == 0);

  const auto exits = compile_wat(
      "(module (func (export \"main\") (result i32) i32.const 7))");
  CHECK(run_guest(kernel, exits).status == "exit 7");

  // A failing syscall does not kill the guest; the status comes back.
  const auto dangles = compile_wat(
      "(module (import \"supervisionary\" \"term_type_of\"\n"
      "  (func $type_of (param i64 i64) (result i32)))\n"
      "  (memory 1)\n"
      "  (func (export \"main\") (result i32)\n"
      "    i64.const 999 i64.const 64 call $type_of))");
  const auto dangle_report = run_guest(kernel, dangles);
  CHECK(dangle_report.status == "exit 3");
  REQUIRE(dangle_report.trace.size() == 1);
  CHECK(dangle_report.trace[0].status == Status::DanglingHandle);
}

TEST_CASE("guest and script fixtures reach the same state") {
  const char* pairs[][2] = {
      {"truth.wat", "truth.svs"},
      {"read_manifest.wat", "read_manifest.svs"},
      {"jail_bottom.wat", "jail_bottom.svs"},
  };
  const std::string manifest = fixture("manifest.json");
  for (const auto& pair : pairs) {
    CAPTURE(pair[0]);

    Kernel guest_kernel;
    guest_kernel.vfs().load_manifest(manifest);
    const auto image = compile_wat(fixture(pair[0]));
    const GuestRunReport report = run_guest(guest_kernel, image);
    CAPTURE(report.status);
    REQUIRE(report.ok());

    Kernel script_kernel;
    script_kernel.vfs().load_manifest(manifest);
    SyscallClient client(script_kernel);
    const ScriptResult script = run_script(client, fixture(pair[1]));
    CAPTURE(script.error);
    CAPTURE(script.transcript);
    REQUIRE(script.ok);

    CHECK(guest_kernel.state_digest() == script_kernel.state_digest());
  }
}

TEST_CASE("read_manifest guest copies the file it proved it could read") {
  Kernel kernel;
  kernel.vfs().load_manifest(fixture("manifest.json"));
  const auto image = compile_wat(fixture("read_manifest.wat"));
  const GuestRunReport report = run_guest(kernel, image);
  CAPTURE(report.status);
  REQUIRE(report.ok());
  REQUIRE(kernel.vfs().exists("/out"));
  CHECK(kernel.vfs().files().at("/out") == "welcome");
  CHECK(report.obligations.size() == 4);
  for (const auto& ob : report.obligations) CHECK(ob.discharged);
  CHECK(kernel.history().size() == 4);
}

TEST_CASE("jail_bottom guest locks itself out") {
  Kernel kernel;
  kernel.vfs().load_manifest(fixture("manifest.json"));
  const auto image = compile_wat(fixture("jail_bottom.wat"));
  const GuestRunReport report = run_guest(kernel, image);
  CAPTURE(report.status);
  REQUIRE(report.ok());
  // The gate never opened: no filesystem events, one obligation left over.
  CHECK(kernel.history().empty());
  REQUIRE(report.obligations.size() == 1);
  CHECK_FALSE(report.obligations[0].discharged);
}
