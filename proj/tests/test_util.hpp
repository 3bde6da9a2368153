// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stylekit/cli/commands.hpp"
#include "stylekit/error.hpp"

namespace stylekit::testing {

inline std::filesystem::path fixture(const std::string& rel) {
  return std::filesystem::path(STYLEKIT_FIXTURES) / rel;
}

// Fresh directory under the build tree, removed first if present.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::path(STYLEKIT_SCRATCH) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

inline CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "stylekit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(),
                                out, err);
  return {code, out.str(), err.str()};
}

}  // namespace stylekit::testing

// Asserts that `stmt` throws stylekit::Error with the given code.
#define EXPECT_STYLEKIT_ERROR(stmt, error_code)                           \
  do {                                                                    \
    try {                                                                 \
      stmt;                                                               \
      ADD_FAILURE() << "expected " << ::stylekit::to_string(error_code);  \
    } catch (const ::stylekit::Error& e) {                                \
      EXPECT_EQ(e.code(), error_code) << e.what();                        \
    }                                                                     \
  } while (0)
