// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace stylekit::io {

// Whole file as bytes. Throws Error(kIo) when unreadable.
std::string read_file(const std::filesystem::path& path);

// Writes through "<path>.tmp" and a rename, creating parent directories.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view contents);

// Outputs buffered in memory and written only on commit(), so a failing
// command leaves no partial files behind.
class OutputSet {
 public:
  void add(const std::filesystem::path& path, std::string contents);
  void commit() const;
  const std::map<std::filesystem::path, std::string>& files() const {
    return files_;
  }

 private:
  std::map<std::filesystem::path, std::string> files_;
};

// Exclusive ".stylekit.lock" in an output directory for the lifetime of the
// object. Throws Error(kIo) when another run holds it.
class DirectoryLock {
 public:
  explicit DirectoryLock(const std::filesystem::path& dir);
  ~DirectoryLock();
  DirectoryLock(const DirectoryLock&) = delete;
  DirectoryLock& operator=(const DirectoryLock&) = delete;

 private:
  std::filesystem::path path_;
};

}  // namespace stylekit::io
