// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace stylekit::text {

struct CodePoint {
  char32_t value;
  std::size_t begin;  // byte offset
  std::size_t end;
};

bool is_valid_utf8(std::string_view s);

// Decodes `s`; malformed bytes decode as U+FFFD one byte at a time.
std::vector<CodePoint> decode(std::string_view s);

bool is_space(char32_t c);
bool is_punct(char32_t c);
bool is_letter(char32_t c);

// ASCII and Latin-1 case folding; other code points pass through.
std::string fold_case(std::string_view s);

bool is_all_punct(std::string_view s);
bool starts_upper(std::string_view s);
std::size_t count_letters(std::string_view s);

}  // namespace stylekit::text
