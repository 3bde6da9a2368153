// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "stylekit/corpus/document.hpp"

#include <fmt/core.h>

#include <optional>

#include "stylekit/text/utf8.hpp"

namespace stylekit::corpus {
namespace {

std::string normalize_newlines(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == '\r') {
      out.push_back('\n');
      if (i + 1 < raw.size() && raw[i + 1] == '\n') ++i;
    } else {
      out.push_back(raw[i]);
    }
  }
  return out;
}

struct LineSpan {
  std::size_t begin;  // first byte of the line
  std::size_t next;   // first byte after the line's "\n" (or size)
};

std::optional<LineSpan> find_marker_line(const std::string& text,
                                         std::string_view marker) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string_view line(text.data() + pos, eol - pos);
    const auto first = line.find_first_not_of(" \t");
    if (first != std::string_view::npos &&
        line.substr(first).starts_with(marker)) {
      return LineSpan{pos, eol < text.size() ? eol + 1 : eol};
    }
    pos = eol + 1;
  }
  return std::nullopt;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Document ingest_text(std::string_view raw, std::string author_id,
                     std::string book_id, bool strip_boilerplate,
                     Diagnostics* diagnostics) {
  if (!text::is_valid_utf8(raw)) {
    throw Error(ErrorCode::kInvalidEncoding,
                fmt::format("{}/{} is not valid UTF-8", author_id, book_id));
  }
  std::string body = normalize_newlines(raw);

  if (strip_boilerplate) {
    const auto start = find_marker_line(body, "*** START OF");
    const auto end = find_marker_line(body, "*** END OF");
    if (start && end && end->begin >= start->next) {
      body = body.substr(start->next, end->begin - start->next);
    } else if (start || end) {
      warn(diagnostics, ErrorCode::kMalformedBoilerplate,
           fmt::format("{}/{}: only one Gutenberg marker found, keeping full "
                       "text",
                       author_id, book_id));
    } else {
      warn(diagnostics, ErrorCode::kMalformedBoilerplate,
           fmt::format("{}/{}: no Gutenberg markers found, keeping full text",
                       author_id, book_id));
    }
  }

  const std::string_view trimmed = trim(body);
  if (trimmed.empty()) {
    throw Error(ErrorCode::kEmptyDocument,
                fmt::format("{}/{} is empty", author_id, book_id));
  }
  return Document{std::move(author_id), std::move(book_id),
                  std::string(trimmed), {}};
}

}  // namespace stylekit::corpus
