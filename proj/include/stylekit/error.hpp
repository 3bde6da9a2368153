// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stylekit {

enum class ErrorCode {
  kEmptyDocument,
  kMalformedBoilerplate,
  kInvalidEncoding,
  kAnnotationMismatch,
  kUnknownTag,
  kInsufficientBooks,
  kInvalidFraction,
  kInsufficientSentences,
  kInsufficientMatches,
  kDimensionMismatch,
  kInvalidDistribution,
  kZeroVector,
  kEmptyInput,
  kInvalidInput,
  kLengthMismatch,
  kUnknownAuthor,
  kTruncated,
  kCorruptHeader,
  kUnsupportedDtype,
  kUnpairedTensor,
  kShapeMismatch,
  kIncompatibleAdapters,
  kInvalidSpec,
  kUnknownTarget,
  kSpanOutOfRange,
  kIo,
  kInvalidConfig,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this type. `index` carries the
// first divergent position for AnnotationMismatch.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> index = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

// Non-fatal conditions (MalformedBoilerplate, InsufficientMatches, ...).
struct Diagnostic {
  ErrorCode code;
  std::string message;
};

using Diagnostics = std::vector<Diagnostic>;

inline void warn(Diagnostics* sink, ErrorCode code, std::string message) {
  if (sink != nullptr) sink->push_back({code, std::move(message)});
}

}  // namespace stylekit
