// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "stylekit/corpus/chunking.hpp"

namespace stylekit::cli {

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr const char* kVersion = "0.1.0";

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInvalid = 2;

// Entry point for the `stylekit` binary. Messages go to `out` / `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

// Chunk store line: {"author_id","book_id","split","index","tokens":[...]}
nlohmann::ordered_json chunk_to_json(const corpus::Chunk& chunk);
corpus::Chunk chunk_from_json(const nlohmann::json& j);
std::vector<corpus::Chunk> read_chunk_store(const std::string& path);

}  // namespace stylekit::cli
