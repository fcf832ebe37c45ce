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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace warden {

// Surface syntax shared by term files, policy files, and scripts.
// Atoms are bare tokens; strings are double-quoted with \" \\ \n \t
// escapes; ';' comments to end of line.
struct Sexpr {
  enum class Tag { Atom, String, List };
  Tag tag = Tag::Atom;
  std::string text;
  std::vector<Sexpr> items;
  uint32_t line = 0;

  bool is_atom(std::string_view s) const {
    return tag == Tag::Atom && text == s;
  }
  bool is_list() const { return tag == Tag::List; }
};

struct ParseError : std::runtime_error {
  ParseError(uint32_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line(line) {}
  uint32_t line;
};

std::vector<Sexpr> parse_sexprs(std::string_view src);

// Escapes back into source form; atoms print bare.
std::string write_sexpr(const Sexpr& e);

// True when the token would read back as a bare atom and not as an
// integer literal; names failing this are printed as strings.
bool is_plain_atom(std::string_view s);

// Integer atoms: decimal or 0x hex, no sign.
bool parse_integer(std::string_view s, uint64_t& out);

}  // namespace warden
