// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stylekit::corpus {

using ByteSpan = std::pair<std::size_t, std::size_t>;  // [begin, end)

struct TokenStream {
  std::vector<std::string> tokens;
  std::vector<ByteSpan> offsets;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
};

enum class TokenizerScheme { kWhitespacePunct, kExternal };

std::string_view to_string(TokenizerScheme scheme);
TokenizerScheme parse_tokenizer_scheme(std::string_view name);

// Splits on Unicode whitespace, then within each whitespace-delimited word:
//   1. leading and trailing punctuation is detached, one token per run of
//      identical characters ("...", "--", "?!" -> "?", "!");
//   2. inside the word, runs of two or more '-' or '.', en/em dashes and
//      the ellipsis character are detached the same way;
//   3. everything else stays attached ("don't", "well-known", "U.S").
TokenStream tokenize(std::string_view text);

// One pre-tokenized sidecar record.
struct SidecarRecord {
  std::string book_id;
  std::vector<std::string> tokens;
  std::vector<ByteSpan> offsets;
};

// Parses a sidecar JSONL file ({"book_id","tokens","offsets"} per line),
// keyed by book_id.
std::map<std::string, SidecarRecord> read_sidecar(const std::string& path);

// Validates a sidecar against its source text: equal token and offset
// counts, strictly increasing non-overlapping in-range offsets, and each
// token equal to its source slice. Throws Error(kAnnotationMismatch) with
// the first offending token index.
TokenStream from_sidecar(std::string_view text, const SidecarRecord& record);

// Joins tokens into readable text: no space before closing punctuation,
// none after opening brackets, dashes attached on both sides, straight
// double quotes alternate opening/closing.
std::string detokenize(std::span<const std::string> tokens);

}  // namespace stylekit::corpus
