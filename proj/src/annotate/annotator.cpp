// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "stylekit/annotate/annotator.hpp"

namespace stylekit::annotate {

std::string_view to_string(SentenceCategory category) {
  switch (category) {
    case SentenceCategory::kSimple: return "SIMPLE";
    case SentenceCategory::kCompound: return "COMPOUND";
    case SentenceCategory::kComplex: return "COMPLEX";
    case SentenceCategory::kComplexCompound: return "COMPLEX-COMPOUND";
    case SentenceCategory::kOther: return "OTHER";
  }
  return "OTHER";
}

std::optional<SentenceCategory> parse_category(std::string_view name) {
  if (name == "SIMPLE") return SentenceCategory::kSimple;
  if (name == "COMPOUND") return SentenceCategory::kCompound;
  if (name == "COMPLEX") return SentenceCategory::kComplex;
  if (name == "COMPLEX-COMPOUND") return SentenceCategory::kComplexCompound;
  if (name == "OTHER") return SentenceCategory::kOther;
  return std::nullopt;
}

std::string_view to_string(AnnotationSource source) {
  return source == AnnotationSource::kExternal ? "external" : "builtin";
}

std::size_t AnnotatedDocument::token_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.tokens.size();
  return n;
}

AnnotatedDocument annotate(std::span<const std::string> tokens,
                           const Lexicons& lexicons, std::string label) {
  AnnotatedDocument doc;
  doc.label = std::move(label);
  doc.source = AnnotationSource::kBuiltin;
  for (const auto& [begin, end] : segment_sentences(tokens, lexicons)) {
    const auto words = tokens.subspan(begin, end - begin);
    const auto tags = pos_tag(words, lexicons);
    AnnotatedSentence sentence;
    sentence.tokens.reserve(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
      sentence.tokens.push_back({words[i], tags[i], false});
    }
    for (const auto& [b, e] : detect_person_names(sentence.tokens, lexicons)) {
      for (std::size_t k = b; k < e; ++k) sentence.tokens[k].is_person = true;
    }
    doc.sentences.push_back(std::move(sentence));
  }
  return doc;
}

std::vector<TokenRange> person_spans(const AnnotatedDocument& doc) {
  std::vector<TokenRange> spans;
  std::size_t offset = 0;
  for (const auto& sentence : doc.sentences) {
    const auto& toks = sentence.tokens;
    std::size_t i = 0;
    while (i < toks.size()) {
      if (!toks[i].is_person) {
        ++i;
        continue;
      }
      std::size_t j = i + 1;
      while (j < toks.size() && toks[j].is_person) ++j;
      spans.emplace_back(offset + i, offset + j);
      i = j;
    }
    offset += toks.size();
  }
  return spans;
}

}  // namespace stylekit::annotate
