// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "stylekit/adapters/masking.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <nlohmann/json.hpp>
#include <set>

#include "stylekit/error.hpp"

namespace stylekit::adapters {

std::size_t MaskedExample::masked_count() const {
  return static_cast<std::size_t>(
      std::count(labels.begin(), labels.end(), kIgnoreIndex));
}

MaskedExample mask_labels(std::span<const std::int64_t> ids,
                          std::span<const Span> spans) {
  MaskedExample out;
  out.input_ids.assign(ids.begin(), ids.end());
  out.attention_mask.assign(ids.size(), 1);
  out.labels = out.input_ids;
  for (const auto& [begin, end] : spans) {
    if (begin > end || end > ids.size()) {
      throw Error(ErrorCode::kSpanOutOfRange,
                  fmt::format("span [{},{}) outside {} tokens", begin, end,
                              ids.size()),
                  begin);
    }
    std::fill(out.labels.begin() + static_cast<std::ptrdiff_t>(begin),
              out.labels.begin() + static_cast<std::ptrdiff_t>(end),
              kIgnoreIndex);
  }
  return out;
}

Vocabulary Vocabulary::build(std::span<const corpus::Chunk> chunks) {
  std::set<std::string> distinct;
  for (const auto& c : chunks) distinct.insert(c.tokens.begin(), c.tokens.end());
  Vocabulary v;
  std::int64_t next = 0;
  for (const auto& t : distinct) v.ids_.emplace(t, next++);
  return v;
}

std::int64_t Vocabulary::id(const std::string& token) const {
  const auto it = ids_.find(token);
  if (it == ids_.end()) {
    throw Error(ErrorCode::kInvalidInput,
                fmt::format("token '{}' not in vocabulary", token));
  }
  return it->second;
}

std::vector<std::int64_t> Vocabulary::encode(
    std::span<const std::string> tokens) const {
  std::vector<std::int64_t> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(id(t));
  return out;
}

std::string to_jsonl_line(const MaskedExample& example) {
  nlohmann::ordered_json j;
  j["input_ids"] = example.input_ids;
  j["attention_mask"] = example.attention_mask;
  j["labels"] = example.labels;
  return j.dump();
}

std::string format_summary(const MaskSummary& summary) {
  const double pct =
      summary.total == 0 ? 0.0
                         : 100.0 * static_cast<double>(summary.masked) /
                               static_cast<double>(summary.total);
  return fmt::format("masked {}/{} ({:.2f}%)", summary.masked, summary.total,
                     pct);
}

}  // namespace stylekit::adapters
