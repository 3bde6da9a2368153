// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stylekit/corpus/chunking.hpp"

namespace stylekit::adapters {

inline constexpr std::int64_t kIgnoreIndex = -100;

using Span = std::pair<std::size_t, std::size_t>;  // [begin, end)

struct MaskedExample {
  std::vector<std::int64_t> input_ids;
  std::vector<std::int64_t> attention_mask;
  std::vector<std::int64_t> labels;

  std::size_t masked_count() const;
  friend bool operator==(const MaskedExample&, const MaskedExample&) = default;
};

// labels = ids with kIgnoreIndex on every position covered by a span;
// attention stays 1 everywhere. Spans may be of any class (names, places).
// Throws Error(kSpanOutOfRange) for begin > end or end > ids.size().
MaskedExample mask_labels(std::span<const std::int64_t> ids,
                          std::span<const Span> spans);

// Token ids by position in the sorted set of distinct tokens.
class Vocabulary {
 public:
  Vocabulary() = default;
  static Vocabulary build(std::span<const corpus::Chunk> chunks);

  // Throws Error(kInvalidInput) for an unseen token.
  std::int64_t id(const std::string& token) const;
  std::vector<std::int64_t> encode(std::span<const std::string> tokens) const;
  std::size_t size() const { return ids_.size(); }
  const std::map<std::string, std::int64_t>& ids() const { return ids_; }

 private:
  std::map<std::string, std::int64_t> ids_;
};

// {"input_ids":[...],"attention_mask":[...],"labels":[...]}
std::string to_jsonl_line(const MaskedExample& example);

struct MaskSummary {
  std::size_t masked = 0;
  std::size_t total = 0;
};

// "masked 3/256 (1.17%)"
std::string format_summary(const MaskSummary& summary);

}  // namespace stylekit::adapters
