// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stylekit/annotate/lexicons.hpp"
#include "stylekit/annotate/tags.hpp"
#include "stylekit/corpus/tokenizer.hpp"

namespace stylekit::annotate {

enum class SentenceCategory : std::uint8_t {
  kSimple,
  kCompound,
  kComplex,
  kComplexCompound,
  kOther,
};

inline constexpr std::size_t kNumCategories = 5;

std::string_view to_string(SentenceCategory category);
std::optional<SentenceCategory> parse_category(std::string_view name);

struct AnnotatedToken {
  std::string text;
  PosTag tag = PosTag::kOther;
  bool is_person = false;

  friend bool operator==(const AnnotatedToken&, const AnnotatedToken&) =
      default;
};

struct AnnotatedSentence {
  std::vector<AnnotatedToken> tokens;
  // Clause category supplied by an external parse; overrides the heuristic.
  std::optional<SentenceCategory> category;

  friend bool operator==(const AnnotatedSentence&, const AnnotatedSentence&) =
      default;
};

enum class AnnotationSource { kBuiltin, kExternal };
std::string_view to_string(AnnotationSource source);

struct AnnotatedDocument {
  std::string label;  // book id, chunk id or generation id
  std::vector<AnnotatedSentence> sentences;
  AnnotationSource source = AnnotationSource::kBuiltin;

  std::size_t token_count() const;
};

using TokenRange = std::pair<std::size_t, std::size_t>;  // [begin, end)

// Sentence boundaries fall after a token made only of '.', '!', '?' or
// '…', together with any closing quotes or brackets that follow it. A lone
// "." does not end a sentence when the preceding token is a known
// abbreviation or a single capital letter (an initial). The ranges
// partition [0, tokens.size()).
std::vector<TokenRange> segment_sentences(std::span<const std::string> tokens,
                                          const Lexicons& lexicons);

// Rules, first match wins:
//   1. all punctuation                                   -> PUNCT
//   2. digits and no letters                             -> OTHER
//   3. POS lexicon entry                                 -> lexicon tag
//   4. capitalized person-name gazetteer entry           -> PROPN
//   5. capitalized and not the first word of the sentence -> PROPN
//   6. suffixes: -ly ADV; -ness -tion -sion -ment -ity -ship -ism -ence
//      -ance NOUN; -ing -ed VERB; -ous -ful -ive -able -ible -less -ic
//      -ish ADJ (stem of at least three characters)
//   7. otherwise                                         -> OTHER
std::vector<PosTag> pos_tag(std::span<const std::string> tokens,
                            const Lexicons& lexicons);

// Person spans within one tagged sentence. Candidates are maximal runs of
// PROPN tokens; a capitalized sentence-initial OTHER token may open a run.
// A candidate is kept, in order of checks, when
//   1. it is not made up entirely of gazetteered place names, and
//   2. one of its tokens is a gazetteered person name, or
//   3. it directly follows an honorific (optionally with "." between), or
//   4. it is directly preceded or followed by a reporting verb.
// Spans never overlap.
std::vector<TokenRange> detect_person_names(
    std::span<const AnnotatedToken> sentence, const Lexicons& lexicons);

// Segments, tags and marks person names with the built-in heuristics.
AnnotatedDocument annotate(std::span<const std::string> tokens,
                           const Lexicons& lexicons, std::string label = {});

inline AnnotatedDocument annotate(const corpus::TokenStream& stream,
                                  const Lexicons& lexicons,
                                  std::string label = {}) {
  return annotate(std::span<const std::string>(stream.tokens), lexicons,
                  std::move(label));
}

// Person spans in document-global token indices.
std::vector<TokenRange> person_spans(const AnnotatedDocument& doc);

}  // namespace stylekit::annotate
