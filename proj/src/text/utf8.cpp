// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "stylekit/text/utf8.hpp"

namespace stylekit::text {
namespace {

// Returns the sequence length, or 0 if the bytes at `i` are not a valid
// UTF-8 scalar value.
std::size_t sequence_at(std::string_view s, std::size_t i, char32_t* out) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  std::size_t len = 0;
  char32_t cp = 0;
  if (b0 < 0x80) {
    *out = b0;
    return 1;
  } else if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return 0;
  }
  if (i + len > s.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (b & 0x3F);
  }
  // Overlong forms, surrogates, out of range.
  if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
      (len == 4 && cp < 0x10000) || cp > 0x10FFFF ||
      (cp >= 0xD800 && cp <= 0xDFFF)) {
    return 0;
  }
  *out = cp;
  return len;
}

}  // namespace

bool is_valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    char32_t cp;
    const std::size_t n = sequence_at(s, i, &cp);
    if (n == 0) return false;
    i += n;
  }
  return true;
}

std::vector<CodePoint> decode(std::string_view s) {
  std::vector<CodePoint> out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    char32_t cp;
    std::size_t n = sequence_at(s, i, &cp);
    if (n == 0) {
      cp = 0xFFFD;
      n = 1;
    }
    out.push_back({cp, i, i + n});
    i += n;
  }
  return out;
}

bool is_space(char32_t c) {
  switch (c) {
    case U' ': case U'\t': case U'\n': case U'\v': case U'\f': case U'\r':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

bool is_punct(char32_t c) {
  if (c < 0x80) {
    return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) ||
           (c >= 0x5B && c <= 0x60) || (c >= 0x7B && c <= 0x7E);
  }
  switch (c) {
    case 0xA1: case 0xA7: case 0xAB: case 0xB6: case 0xB7: case 0xBB:
    case 0xBF:
      return true;
    default:
      // General Punctuation block: dashes, quotes, ellipsis, primes.
      return c >= 0x2010 && c <= 0x2027;
  }
}

bool is_letter(char32_t c) {
  if (c < 0x80) return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z');
  if (c == 0xD7 || c == 0xF7) return false;
  if (c >= 0xC0 && c <= 0x24F) return true;   // Latin-1 + Extended-A/B
  if (c >= 0x370 && c <= 0x3FF) return true;  // Greek
  if (c >= 0x400 && c <= 0x4FF) return true;  // Cyrillic
  return false;
}

std::string fold_case(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto b = static_cast<unsigned char>(s[i]);
    if (b >= 'A' && b <= 'Z') {
      out.push_back(static_cast<char>(b - 'A' + 'a'));
    } else if (b == 0xC3 && i + 1 < s.size()) {
      // U+00C0..U+00DE (except U+00D7) map to +0x20 within the C3 lead byte.
      auto b1 = static_cast<unsigned char>(s[i + 1]);
      if (b1 >= 0x80 && b1 <= 0x9E && b1 != 0x97) b1 += 0x20;
      out.push_back(static_cast<char>(b));
      out.push_back(static_cast<char>(b1));
      ++i;
    } else {
      out.push_back(static_cast<char>(b));
    }
  }
  return out;
}

bool is_all_punct(std::string_view s) {
  if (s.empty()) return false;
  for (const auto& cp : decode(s)) {
    if (!is_punct(cp.value)) return false;
  }
  return true;
}

bool starts_upper(std::string_view s) {
  if (s.empty()) return false;
  const auto cps = decode(s);
  const char32_t c = cps.front().value;
  if (c < 0x80) return c >= U'A' && c <= U'Z';
  return c >= 0xC0 && c <= 0xDE && c != 0xD7;
}

std::size_t count_letters(std::string_view s) {
  std::size_t n = 0;
  for (const auto& cp : decode(s)) {
    if (is_letter(cp.value)) ++n;
  }
  return n;
}

}  // namespace stylekit::text
