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

#include "warden/vfs.hpp"

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace warden {

namespace {

constexpr char kB64Alphabet[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int b64_value(char c) {
  if (c >= 'A' && c <= 'Z') return c - 'A';
  if (c >= 'a' && c <= 'z') return c - 'a' + 26;
  if (c >= '0' && c <= '9') return c - '0' + 52;
  if (c == '+') return 62;
  if (c == '/') return 63;
  return -1;
}

}  // namespace

std::string base64_encode(std::string_view bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  size_t i = 0;
  while (i + 3 <= bytes.size()) {
    const uint32_t v = (uint8_t(bytes[i]) << 16) | (uint8_t(bytes[i + 1]) << 8) |
                       uint8_t(bytes[i + 2]);
    out.push_back(kB64Alphabet[(v >> 18) & 63]);
    out.push_back(kB64Alphabet[(v >> 12) & 63]);
    out.push_back(kB64Alphabet[(v >> 6) & 63]);
    out.push_back(kB64Alphabet[v & 63]);
    i += 3;
  }
  const size_t rest = bytes.size() - i;
  if (rest == 1) {
    const uint32_t v = uint8_t(bytes[i]) << 16;
    out.push_back(kB64Alphabet[(v >> 18) & 63]);
    out.push_back(kB64Alphabet[(v >> 12) & 63]);
    out.append("==");
  } else if (rest == 2) {
    const uint32_t v = (uint8_t(bytes[i]) << 16) | (uint8_t(bytes[i + 1]) << 8);
    out.push_back(kB64Alphabet[(v >> 18) & 63]);
    out.push_back(kB64Alphabet[(v >> 12) & 63]);
    out.push_back(kB64Alphabet[(v >> 6) & 63]);
    out.push_back('=');
  }
  return out;
}

std::string base64_decode(std::string_view text) {
  std::string out;
  out.reserve(text.size() / 4 * 3);
  uint32_t acc = 0;
  int bits = 0;
  for (char c : text) {
    if (c == '=' || c == '\n' || c == '\r' || c == ' ') continue;
    const int v = b64_value(c);
    if (v < 0) throw std::runtime_error("invalid base64 input");
    acc = (acc << 6) | uint32_t(v);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(char((acc >> bits) & 0xFF));
    }
  }
  return out;
}

std::string Vfs::normalize(std::string_view path) {
  std::vector<std::string> parts;
  std::string segment;
  auto flush = [&] {
    if (segment.empty() || segment == ".") {
      segment.clear();
      return;
    }
    if (segment == "..") {
      if (!parts.empty()) parts.pop_back();
    } else {
      parts.push_back(segment);
    }
    segment.clear();
  };
  for (char c : path) {
    if (c == '/') {
      flush();
    } else {
      segment.push_back(c);
    }
  }
  flush();
  std::string out = "/";
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i != 0) out.push_back('/');
    out += parts[i];
  }
  return out;
}

void Vfs::load_manifest(const std::string& json_text) {
  const nlohmann::json doc = nlohmann::json::parse(json_text);
  if (!doc.is_object()) {
    throw std::runtime_error("manifest must be a JSON object");
  }
  for (const auto& [path, value] : doc.items()) {
    if (!value.is_string()) {
      throw std::runtime_error("manifest values must be base64 strings");
    }
    files_[normalize(path)] = base64_decode(value.get<std::string>());
  }
}

void Vfs::load_directory(const std::string& root) {
  namespace fs = std::filesystem;
  const fs::path base(root);
  for (const auto& entry : fs::recursive_directory_iterator(base)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string rel = entry.path().lexically_relative(base).generic_string();
    files_[normalize("/" + rel)] = buf.str();
  }
}

std::string Vfs::dump_manifest() const {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& [path, contents] : files_) {
    doc[path] = base64_encode(contents);
  }
  return doc.dump(2);
}

uint32_t Vfs::open(const std::string& normalized, uint64_t flags) {
  if (flags != kFsFlagRead && flags != kFsFlagWrite) {
    throw KernelFault(Status::FsBadFlags, "flags " + std::to_string(flags));
  }
  auto it = files_.find(normalized);
  if (it == files_.end()) {
    if (flags == kFsFlagRead) {
      throw KernelFault(Status::FsNotFound, normalized);
    }
    files_[normalized] = std::string();
  }
  const uint32_t fd = next_fd_++;
  fds_[fd] = OpenFile{normalized, flags, 0};
  return fd;
}

uint64_t Vfs::read(uint32_t fd, uint8_t* out, uint64_t len) {
  auto it = fds_.find(fd);
  if (it == fds_.end()) {
    throw KernelFault(Status::FsBadDescriptor, "fd " + std::to_string(fd));
  }
  OpenFile& file = it->second;
  if (file.flags != kFsFlagRead) {
    throw KernelFault(Status::FsBadFlags, "descriptor is write-only");
  }
  const std::string& contents = files_.at(file.path);
  if (file.cursor >= contents.size()) return 0;
  const uint64_t count = std::min<uint64_t>(len, contents.size() - file.cursor);
  if (count == 0) return 0;
  std::memcpy(out, contents.data() + file.cursor, count);
  file.cursor += count;
  return count;
}

uint64_t Vfs::write(uint32_t fd, const uint8_t* data, uint64_t len) {
  auto it = fds_.find(fd);
  if (it == fds_.end()) {
    throw KernelFault(Status::FsBadDescriptor, "fd " + std::to_string(fd));
  }
  OpenFile& file = it->second;
  if (file.flags != kFsFlagWrite) {
    throw KernelFault(Status::FsBadFlags, "descriptor is read-only");
  }
  if (len == 0) return 0;
  std::string& contents = files_.at(file.path);
  if (file.cursor + len > contents.size()) {
    contents.resize(file.cursor + len);
  }
  std::memcpy(contents.data() + file.cursor, data, len);
  file.cursor += len;
  return len;
}

void Vfs::close(uint32_t fd) {
  auto it = fds_.find(fd);
  if (it == fds_.end()) {
    throw KernelFault(Status::FsBadDescriptor, "fd " + std::to_string(fd));
  }
  fds_.erase(it);
}

void Vfs::mix_into(Fnv1a& digest) const {
  digest.mix_u64(files_.size());
  for (const auto& [path, contents] : files_) {
    digest.mix_string(path);
    digest.mix_string(contents);
  }
  digest.mix_u64(fds_.size());
  for (const auto& [fd, file] : fds_) {
    digest.mix_u64(fd);
    digest.mix_string(file.path);
    digest.mix_u64(file.flags);
    digest.mix_u64(file.cursor);
  }
  digest.mix_u64(next_fd_);
}

}  // namespace warden
