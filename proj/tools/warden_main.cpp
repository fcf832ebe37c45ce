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
// Operator entry point. Reports go to stdout as JSON, diagnostics to
// stderr. Exit 0 on success, 1 when a guest or script fails, 2 on usage
// errors.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "warden/host.hpp"
#include "warden/script.hpp"
#include "warden/syntax.hpp"
#include "warden/termio.hpp"
#include "warden/vfs.hpp"
#include "warden/wat.hpp"

namespace {

using namespace warden;

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) return std::nullopt;
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

bool is_binary_image(const std::string& bytes) {
  return bytes.size() >= 4 && bytes[0] == '\0' && bytes[1] == 'a' &&
         bytes[2] == 's' && bytes[3] == 'm';
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

int load_filesystem(Kernel& kernel, const std::string& path) {
  std::error_code ec;
  if (std::filesystem::is_directory(path, ec)) {
    kernel.vfs().load_directory(path);
    return 0;
  }
  const auto text = slurp(path);
  if (!text) {
    std::cerr << "cannot read filesystem image " << path << "\n";
    return 2;
  }
  try {
    kernel.vfs().load_manifest(*text);
  } catch (const std::exception& error) {
    std::cerr << "bad filesystem manifest " << path << ": " << error.what()
              << "\n";
    return 2;
  }
  return 0;
}

int cmd_run(const std::string& image_path, const std::string& policy_path,
            const std::string& refine_path, const std::string& fs_path,
            const std::string& fs_dump_path, bool trace) {
  Kernel kernel;
  if (!fs_path.empty()) {
    if (const int rc = load_filesystem(kernel, fs_path)) return rc;
  }

  SyscallClient client(kernel);

  Handle requested_policy{0};
  if (!policy_path.empty()) {
    const auto text = slurp(policy_path);
    if (!text) {
      std::cerr << "cannot read policy file " << policy_path << "\n";
      return 2;
    }
    try {
      requested_policy = parse_term_text(client, *text);
    } catch (const std::exception& error) {
      std::cerr << "policy " << policy_path << ": " << error.what() << "\n";
      return 2;
    }
  }

  if (!refine_path.empty()) {
    const auto text = slurp(refine_path);
    if (!text) {
      std::cerr << "cannot read refinement script " << refine_path << "\n";
      return 2;
    }
    const ScriptResult result = run_script(client, *text);
    if (!result.ok) {
      std::cerr << "refinement script failed: " << result.error << "\n";
      return 1;
    }
  }

  if (!policy_path.empty() &&
      !syntax::alpha_equal(kernel.heaps(), requested_policy,
                           kernel.current_policy())) {
    if (refine_path.empty()) {
      std::cerr << "policy in " << policy_path
                << " is not the boot policy; installing it needs a "
                   "refinement script (--refine)\n";
      return 2;
    }
    std::cerr << "refinement script did not install the policy in "
              << policy_path << "\n";
    return 1;
  }

  const auto image_text = slurp(image_path);
  if (!image_text) {
    std::cerr << "cannot read guest image " << image_path << "\n";
    return 2;
  }
  std::vector<uint8_t> image;
  if (is_binary_image(*image_text)) {
    image.assign(image_text->begin(), image_text->end());
  } else {
    try {
      image = compile_wat(*image_text);
    } catch (const WatError& error) {
      GuestRunReport report;
      report.status = std::string("invalid module: ") + error.what();
      std::cout << report.to_json() << "\n";
      return 1;
    }
  }

  GuestRunReport report = run_guest(kernel, image);
  if (!trace) report.trace.clear();
  std::cout << report.to_json() << "\n";

  if (!fs_dump_path.empty()) {
    std::ofstream out(fs_dump_path, std::ios::binary);
    out << kernel.vfs().dump_manifest();
    if (!out.good()) {
      std::cerr << "cannot write filesystem dump " << fs_dump_path << "\n";
      return 1;
    }
  }
  return report.ok() ? 0 : 1;
}

int cmd_script(const std::string& path) {
  const auto text = slurp(path);
  if (!text) {
    std::cerr << "cannot read script " << path << "\n";
    return 2;
  }
  Kernel kernel;
  SyscallClient client(kernel);
  const ScriptResult result = run_script(client, *text);

  nlohmann::json j;
  j["ok"] = result.ok;
  if (!result.error.empty()) j["error"] = result.error;
  j["transcript"] = split_lines(result.transcript);
  std::cout << j.dump(2) << "\n";
  return result.ok ? 0 : 1;
}

nlohmann::json dump_heaps(const Kernel& kernel) {
  const HeapSet& heaps = kernel.heaps();
  nlohmann::json j;
  j["formers"] = nlohmann::json::array();
  for (const uint64_t v : heaps.formers().order()) {
    const FormerInfo& info = heaps.former(Handle{v});
    j["formers"].push_back(
        {{"handle", v}, {"name", info.name}, {"arity", info.arity}});
  }
  j["types"] = nlohmann::json::array();
  for (const uint64_t v : heaps.types().order()) {
    j["types"].push_back(
        {{"handle", v}, {"text", print_type(heaps, Handle{v})}});
  }
  j["constants"] = nlohmann::json::array();
  for (const uint64_t v : heaps.constants().order()) {
    const ConstantInfo& info = heaps.constant(Handle{v});
    j["constants"].push_back(
        {{"handle", v},
         {"name", info.name},
         {"type", print_type(heaps, info.declared_type)}});
  }
  j["terms"] = nlohmann::json::array();
  for (const uint64_t v : heaps.terms().order()) {
    j["terms"].push_back(
        {{"handle", v}, {"text", print_term(heaps, Handle{v})}});
  }
  j["theorems"] = nlohmann::json::array();
  for (const uint64_t v : heaps.theorems().order()) {
    const TheoremEntry& entry = heaps.theorem(Handle{v});
    nlohmann::json hyps = nlohmann::json::array();
    for (const Handle h : entry.hypotheses)
      hyps.push_back(print_term(heaps, h));
    j["theorems"].push_back({{"handle", v},
                             {"hypotheses", hyps},
                             {"conclusion", print_term(heaps, entry.conclusion)},
                             {"axiom", entry.axiom}});
  }
  j["policy"] = print_term(heaps, kernel.current_policy());
  return j;
}

nlohmann::json dump_history(const Kernel& kernel) {
  nlohmann::json j;
  j["history"] = nlohmann::json::array();
  for (const SyscallMeta& meta : kernel.history()) {
    j["history"].push_back(
        {{"number", meta.number}, {"arg1", meta.arg1}, {"arg2", meta.arg2}});
  }
  j["obligations"] = nlohmann::json::array();
  for (const ObligationRecord& record : kernel.obligations()) {
    j["obligations"].push_back({{"id", record.id},
                                {"discharged", record.discharged},
                                {"consumed", record.consumed}});
  }
  return j;
}

int cmd_dump(bool heaps, bool history) {
  Kernel kernel;
  nlohmann::json j;
  const bool all = !heaps && !history;
  if (heaps || all) j.update(dump_heaps(kernel));
  if (history || all) j.update(dump_history(kernel));
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proof-checking kernel: guest runner and proof script driver"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a guest image against the kernel");
  std::string image_path, policy_path, refine_path, fs_path, fs_dump_path;
  bool trace = false;
  run->add_option("image", image_path,
                  "Guest image, binary or textual WebAssembly")
      ->required();
  run->add_option("--policy", policy_path,
                  "Term file the installed policy must match before the "
                  "guest starts");
  run->add_option("--refine", refine_path,
                  "Proof script run before the guest, typically proving and "
                  "installing the policy");
  run->add_option("--fs", fs_path,
                  "Filesystem image: JSON manifest file or directory");
  run->add_option("--fs-dump", fs_dump_path,
                  "Write the filesystem out as a JSON manifest after the run");
  run->add_flag("--trace", trace, "Include the syscall trace in the report");

  auto* script = app.add_subcommand("script", "Execute a proof script");
  std::string script_path;
  script->add_option("file", script_path, "Script file")->required();

  auto* dump = app.add_subcommand("dump", "Print kernel boot state as JSON");
  bool dump_heaps_flag = false;
  bool dump_history_flag = false;
  auto* heaps_opt =
      dump->add_flag("--heaps", dump_heaps_flag, "Heap contents only");
  auto* history_opt =
      dump->add_flag("--history", dump_history_flag, "History only");
  heaps_opt->excludes(history_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed())
      return cmd_run(image_path, policy_path, refine_path, fs_path,
                     fs_dump_path, trace);
    if (script->parsed()) return cmd_script(script_path);
    if (dump->parsed()) return cmd_dump(dump_heaps_flag, dump_history_flag);
  } catch (const std::exception& error) {
    std::cerr << error.what() << "\n";
    return 1;
  }
  return 2;
}
