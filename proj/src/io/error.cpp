// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "stylekit/error.hpp"

#include <fmt/core.h>

namespace stylekit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyDocument: return "EmptyDocument";
    case ErrorCode::kMalformedBoilerplate: return "MalformedBoilerplate";
    case ErrorCode::kInvalidEncoding: return "InvalidEncoding";
    case ErrorCode::kAnnotationMismatch: return "AnnotationMismatch";
    case ErrorCode::kUnknownTag: return "UnknownTag";
    case ErrorCode::kInsufficientBooks: return "InsufficientBooks";
    case ErrorCode::kInvalidFraction: return "InvalidFraction";
    case ErrorCode::kInsufficientSentences: return "InsufficientSentences";
    case ErrorCode::kInsufficientMatches: return "InsufficientMatches";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidDistribution: return "InvalidDistribution";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kUnknownAuthor: return "UnknownAuthor";
    case ErrorCode::kTruncated: return "Truncated";
    case ErrorCode::kCorruptHeader: return "CorruptHeader";
    case ErrorCode::kUnsupportedDtype: return "UnsupportedDtype";
    case ErrorCode::kUnpairedTensor: return "UnpairedTensor";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kIncompatibleAdapters: return "IncompatibleAdapters";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kUnknownTarget: return "UnknownTarget";
    case ErrorCode::kSpanOutOfRange: return "SpanOutOfRange";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> index)
    : std::runtime_error(fmt::format("{}: {}", to_string(code), message)),
      code_(code),
      index_(index) {}

}  // namespace stylekit
