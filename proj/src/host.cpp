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

#include "warden/host.hpp"

#include "json.hpp"

namespace warden {

namespace {

class InterpreterEngine final : public GuestEngine {
 public:
  std::optional<uint64_t> run(std::span<const uint8_t> image,
                              const wasm::HostResolver& resolve,
                              const std::string& entry) override {
    wasm::Instance instance(wasm::decode(image), resolve);
    return instance.call_nullary(entry);
  }
};

}  // namespace

std::unique_ptr<GuestEngine> make_interpreter_engine() {
  return std::make_unique<InterpreterEngine>();
}

GuestRunReport run_guest(Kernel& kernel, std::span<const uint8_t> image) {
  GuestRunReport report;

  const wasm::HostResolver resolve =
      [&kernel, &report](std::string_view module, std::string_view name,
                         const wasm::FuncType& type)
      -> std::optional<wasm::HostFunc> {
    if (module != "supervisionary") return std::nullopt;
    const auto number = syscall_by_import(name);
    if (!number) return std::nullopt;
    const auto argc = syscall_arg_count(*number);
    bool shape = argc && type.params.size() == *argc &&
                 type.results.size() == 1 && type.results[0] == wasm::kI32;
    for (const uint8_t p : type.params) shape = shape && p == wasm::kI64;
    if (!shape)
      throw wasm::LinkError("import supervisionary." + std::string(name) +
                            " has the wrong type");
    const uint32_t num = *number;
    return wasm::HostFunc(
        [&kernel, &report, num](wasm::GuestView view,
                                std::span<const uint64_t> args) -> uint64_t {
          SyscallFrame frame;
          frame.number = num;
          for (size_t i = 0; i < args.size() && i < 8; ++i)
            frame.args[i] = args[i];
          GuestMemory memory(view.data, view.size);
          const Status status = dispatch(kernel, frame, memory);
          report.trace.push_back(TraceEntry{
              num, std::vector<uint64_t>(args.begin(), args.end()), status});
          return uint64_t(status);
        });
  };

  try {
    const auto engine = make_interpreter_engine();
    const auto result = engine->run(image, resolve, "main");
    if (result && *result != 0)
      report.status = "exit " + std::to_string(*result);
    else
      report.status = "ok";
  } catch (const wasm::DecodeError& e) {
    report.status = std::string("invalid module: ") + e.what();
  } catch (const wasm::LinkError& e) {
    report.status = std::string("link failure: ") + e.what();
  } catch (const wasm::Trap& e) {
    report.status = std::string("trap: ") + e.what();
  }

  for (const ObligationRecord& record : kernel.obligations()) {
    report.obligations.push_back(ObligationOutcome{
        record.id, print_term(kernel.heaps(), record.challenge),
        record.discharged});
  }
  return report;
}

std::string GuestRunReport::to_json() const {
  nlohmann::json j;
  j["status"] = status;
  j["trace"] = nlohmann::json::array();
  for (const TraceEntry& entry : trace) {
    j["trace"].push_back({{"number", entry.number},
                          {"args", entry.args},
                          {"status", uint64_t(entry.status)}});
  }
  j["obligations"] = nlohmann::json::array();
  for (const ObligationOutcome& ob : obligations) {
    j["obligations"].push_back({{"id", ob.id},
                                {"challenge_text", ob.challenge_text},
                                {"discharged", ob.discharged}});
  }
  return j.dump(2);
}

}  // namespace warden
