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

#include "warden/sexpr.hpp"

#include <cctype>

namespace warden {

namespace {

struct Reader {
  std::string_view src;
  size_t pos = 0;
  uint32_t line = 1;

  bool done() const { return pos >= src.size(); }
  char peek() const { return src[pos]; }
  char take() {
    const char c = src[pos++];
    if (c == '\n') ++line;
    return c;
  }

  void skip_blank() {
    while (!done()) {
      const char c = peek();
      if (c == ';') {
        while (!done() && peek() != '\n') take();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else {
        return;
      }
    }
  }

  Sexpr read() {
    skip_blank();
    if (done()) throw ParseError(line, "unexpected end of input");
    const uint32_t at = line;
    const char c = peek();
    if (c == '(') {
      take();
      Sexpr list;
      list.tag = Sexpr::Tag::List;
      list.line = at;
      while (true) {
        skip_blank();
        if (done()) throw ParseError(at, "unclosed '('");
        if (peek() == ')') {
          take();
          return list;
        }
        list.items.push_back(read());
      }
    }
    if (c == ')') throw ParseError(at, "unmatched ')'");
    if (c == '"') return read_string(at);
    return read_atom(at);
  }

  Sexpr read_string(uint32_t at) {
    take();
    Sexpr s;
    s.tag = Sexpr::Tag::String;
    s.line = at;
    while (true) {
      if (done()) throw ParseError(at, "unterminated string");
      const char c = take();
      if (c == '"') return s;
      if (c == '\\') {
        if (done()) throw ParseError(at, "unterminated escape");
        const char e = take();
        switch (e) {
          case 'n': s.text.push_back('\n'); break;
          case 't': s.text.push_back('\t'); break;
          case '"': s.text.push_back('"'); break;
          case '\\': s.text.push_back('\\'); break;
          default:
            throw ParseError(at, std::string("bad escape '\\") + e + "'");
        }
      } else {
        s.text.push_back(c);
      }
    }
  }

  Sexpr read_atom(uint32_t at) {
    Sexpr a;
    a.tag = Sexpr::Tag::Atom;
    a.line = at;
    while (!done()) {
      const char c = peek();
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' ||
          c == ')' || c == '"' || c == ';')
        break;
      a.text.push_back(take());
    }
    return a;
  }
};

}  // namespace

std::vector<Sexpr> parse_sexprs(std::string_view src) {
  Reader reader{src};
  std::vector<Sexpr> out;
  while (true) {
    reader.skip_blank();
    if (reader.done()) return out;
    out.push_back(reader.read());
  }
}

bool is_plain_atom(std::string_view s) {
  if (s.empty()) return false;
  for (const char c : s) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' ||
        c == '"' || c == ';' || c == '\\' ||
        !std::isprint(static_cast<unsigned char>(c)))
      return false;
  }
  uint64_t ignored;
  return !parse_integer(s, ignored);
}

bool parse_integer(std::string_view s, uint64_t& out) {
  if (s.empty()) return false;
  size_t i = 0;
  uint64_t base = 10;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    base = 16;
    i = 2;
  }
  uint64_t value = 0;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    uint64_t digit;
    if (c >= '0' && c <= '9') digit = uint64_t(c - '0');
    else if (base == 16 && c >= 'a' && c <= 'f') digit = uint64_t(c - 'a' + 10);
    else if (base == 16 && c >= 'A' && c <= 'F') digit = uint64_t(c - 'A' + 10);
    else return false;
    value = value * base + digit;
  }
  out = value;
  return true;
}

std::string write_sexpr(const Sexpr& e) {
  switch (e.tag) {
    case Sexpr::Tag::Atom:
      return e.text;
    case Sexpr::Tag::String: {
      std::string out = "\"";
      for (const char c : e.text) {
        switch (c) {
          case '"': out += "\\\""; break;
          case '\\': out += "\\\\"; break;
          case '\n': out += "\\n"; break;
          case '\t': out += "\\t"; break;
          default: out.push_back(c);
        }
      }
      out.push_back('"');
      return out;
    }
    case Sexpr::Tag::List: {
      std::string out = "(";
      for (size_t i = 0; i < e.items.size(); ++i) {
        if (i) out.push_back(' ');
        out += write_sexpr(e.items[i]);
      }
      out.push_back(')');
      return out;
    }
  }
  return {};
}

}  // namespace warden
