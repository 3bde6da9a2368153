// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stylekit/corpus/document.hpp"
#include "stylekit/corpus/tokenizer.hpp"

namespace stylekit::corpus {

enum class Split { kTrain, kValid, kTest };

std::string_view to_string(Split split);
Split parse_split(std::string_view name);

struct Chunk {
  std::string author_id;
  std::string book_id;
  Split split = Split::kTrain;
  std::size_t index = 0;  // ordinal within the book
  std::vector<std::string> tokens;

  friend bool operator==(const Chunk&, const Chunk&) = default;
};

inline constexpr std::size_t kDefaultChunkSize = 256;

// Consecutive non-overlapping windows of `chunk_size` tokens. A shorter tail
// is dropped unless `keep_tail`.
std::vector<Chunk> chunk(const TokenStream& stream, std::string_view author_id,
                         std::string_view book_id, Split split,
                         std::size_t chunk_size = kDefaultChunkSize,
                         bool keep_tail = false);

struct SplitRatios {
  double train = 0.0;
  double valid = 0.0;
  double test = 0.0;
};

using BookKey = std::pair<std::string, std::string>;  // (author_id, book_id)
using SplitAssignment = std::map<BookKey, Split>;

// Assigns whole books to splits, independently per author. With no ratios,
// each author gets one validation book, one test book and the rest for
// training. With ratios, each split with a positive ratio gets
// max(1, round(ratio * n)) books, training absorbing the remainder.
//
// The per-author shuffle is seeded from (seed, author_id), so an author's
// assignment does not depend on which other authors are present.
//
// Throws Error(kInsufficientBooks) naming the author when it has fewer books
// than requested splits.
SplitAssignment split_books(const std::vector<Document>& documents,
                            std::optional<SplitRatios> ratios,
                            std::uint64_t seed);

// ceil(fraction * N) chunks drawn uniformly without replacement, returned in
// their original order. Throws Error(kInvalidFraction) unless 0 < f <= 1.
std::vector<Chunk> subsample(const std::vector<Chunk>& train_chunks,
                             double fraction, std::uint64_t seed);

std::size_t subsample_count(std::size_t n, double fraction);

}  // namespace stylekit::corpus
