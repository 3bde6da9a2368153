// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include "stylekit/error.hpp"

namespace stylekit::corpus {

struct Document {
  std::string author_id;
  std::string book_id;
  std::string text;
  std::string provenance;
};

// Builds a Document from raw book text. Line endings are normalized to "\n".
// With `strip_boilerplate`, the Project Gutenberg header and footer around
// the "*** START OF" / "*** END OF" marker lines are removed; missing or
// unpaired markers are reported through `diagnostics` and the full text is
// kept.
//
// Throws Error(kInvalidEncoding) for non-UTF-8 input and
// Error(kEmptyDocument) when nothing but whitespace remains.
Document ingest_text(std::string_view raw, std::string author_id,
                     std::string book_id, bool strip_boilerplate,
                     Diagnostics* diagnostics = nullptr);

}  // namespace stylekit::corpus
