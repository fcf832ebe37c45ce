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
// In-memory filesystem image. Gating happens a layer up; this class only
// keeps files, descriptors, and cursors.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "warden/digest.hpp"
#include "warden/status.hpp"

namespace warden {

inline constexpr uint64_t kFsFlagRead = 0;
inline constexpr uint64_t kFsFlagWrite = 1;

class Vfs {
 public:
  // Collapses duplicate separators and "." segments and resolves ".."
  // lexically; the result always starts with a single '/'.
  static std::string normalize(std::string_view path);

  // Manifest: JSON object mapping normalized paths to base64 contents.
  void load_manifest(const std::string& json_text);
  void load_directory(const std::string& root);
  std::string dump_manifest() const;

  bool exists(const std::string& normalized) const {
    return files_.count(normalized) != 0;
  }
  void put(const std::string& normalized, std::string contents) {
    files_[normalized] = std::move(contents);
  }
  const std::map<std::string, std::string>& files() const { return files_; }

  // Descriptor operations; callers pass normalized paths. open throws
  // FsNotFound or FsBadFlags, the others FsBadDescriptor or FsBadFlags.
  uint32_t open(const std::string& normalized, uint64_t flags);
  uint64_t read(uint32_t fd, uint8_t* out, uint64_t len);
  uint64_t write(uint32_t fd, const uint8_t* data, uint64_t len);
  void close(uint32_t fd);
  bool descriptor_live(uint32_t fd) const { return fds_.count(fd) != 0; }

  void mix_into(Fnv1a& digest) const;

 private:
  struct OpenFile {
    std::string path;
    uint64_t flags = 0;
    uint64_t cursor = 0;
  };

  std::map<std::string, std::string> files_;
  std::map<uint32_t, OpenFile> fds_;
  // Descriptors 0-2 are left unused to match the conventional reservation.
  uint32_t next_fd_ = 3;
};

std::string base64_encode(std::string_view bytes);
std::string base64_decode(std::string_view text);

}  // namespace warden
