// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stylekit/annotate/annotator.hpp"
#include "stylekit/corpus/chunking.hpp"
#include "stylekit/error.hpp"

namespace stylekit::corpus {

enum class PromptOrigin { kGpt4File, kTestExcerpt, kNameElicitation };

std::string_view to_string(PromptOrigin origin);

struct Prompt {
  std::string text;
  PromptOrigin origin = PromptOrigin::kGpt4File;
  std::optional<std::string> author_id;
  std::string source;  // e.g. "book3#2:5" (book, chunk index, sentence)

  friend bool operator==(const Prompt&, const Prompt&) = default;
};

struct PromptSet {
  std::vector<Prompt> prompts;
};

struct ContinuationOptions {
  std::size_t per_author = 5;
  std::size_t min_words = 6;
  std::size_t max_words = 8;
  // Empty means every author that has chunks in the input.
  std::vector<std::string> authors;
};

// Samples `per_author` test-split sentences per author and keeps the first k
// whitespace words of each, k drawn uniformly from [min_words, max_words].
// A sentence shorter than its drawn k is skipped and the next candidate is
// tried, so every prompt has between min_words and max_words words.
//
// Candidate sentences are those that end in terminal punctuation; the first
// sentence of a chunk other than the book's first is skipped because it may
// start mid-sentence.
//
// Throws Error(kInsufficientSentences) naming the author when fewer than
// `per_author` prompts can be drawn.
PromptSet build_continuation_prompts(const std::vector<Chunk>& test_chunks,
                                     const annotate::Lexicons& lexicons,
                                     const ContinuationOptions& options,
                                     std::uint64_t seed);

// Prompts of the form "some words <verb>" cut from sentences that end in
// "<verb> <person name>". The prefix must hold at least one word before the
// verb and no person token. Returns at most `count` prompts; fewer matches
// produce an InsufficientMatches diagnostic rather than an error.
PromptSet build_name_elicitation_prompts(
    const std::vector<annotate::AnnotatedDocument>& train_docs,
    std::size_t count, std::uint64_t seed, Diagnostics* diagnostics = nullptr);

// One prompt per non-blank line, origin kGpt4File.
PromptSet load_prompt_file(const std::string& path);

}  // namespace stylekit::corpus
