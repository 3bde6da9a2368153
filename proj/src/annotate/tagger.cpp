// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>

#include "stylekit/annotate/annotator.hpp"
#include "stylekit/text/utf8.hpp"

namespace stylekit::annotate {
namespace {

bool is_terminal(std::string_view t) {
  if (t.empty()) return false;
  for (const auto& cp : text::decode(t)) {
    if (cp.value != U'.' && cp.value != U'!' && cp.value != U'?' &&
        cp.value != 0x2026) {
      return false;
    }
  }
  return true;
}

bool is_closer(std::string_view t) {
  return t == ")" || t == "]" || t == "”" || t == "’" || t == "'" ||
         t == "»";
}

bool is_initial(std::string_view t) {
  return t.size() == 1 && t[0] >= 'A' && t[0] <= 'Z';
}

bool has_digit(std::string_view t) {
  return std::any_of(t.begin(), t.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

struct SuffixRule {
  std::string_view suffix;
  PosTag tag;
};

constexpr SuffixRule kSuffixRules[] = {
    {"ly", PosTag::kAdv},     {"ness", PosTag::kNoun},
    {"tion", PosTag::kNoun},  {"sion", PosTag::kNoun},
    {"ment", PosTag::kNoun},  {"ity", PosTag::kNoun},
    {"ship", PosTag::kNoun},  {"ism", PosTag::kNoun},
    {"ence", PosTag::kNoun},  {"ance", PosTag::kNoun},
    {"ing", PosTag::kVerb},   {"ed", PosTag::kVerb},
    {"ous", PosTag::kAdj},    {"ful", PosTag::kAdj},
    {"ive", PosTag::kAdj},    {"able", PosTag::kAdj},
    {"ible", PosTag::kAdj},   {"less", PosTag::kAdj},
    {"ic", PosTag::kAdj},     {"ish", PosTag::kAdj},
};

std::optional<PosTag> suffix_tag(const std::string& folded) {
  for (const auto& rule : kSuffixRules) {
    if (folded.size() >= rule.suffix.size() + 3 &&
        folded.ends_with(rule.suffix)) {
      return rule.tag;
    }
  }
  return std::nullopt;
}

// Index of the first non-punctuation token, or size.
std::size_t first_word(std::span<const std::string> tokens) {
  std::size_t i = 0;
  while (i < tokens.size() && text::is_all_punct(tokens[i])) ++i;
  return i;
}

}  // namespace

std::vector<TokenRange> segment_sentences(std::span<const std::string> tokens,
                                          const Lexicons& lexicons) {
  std::vector<TokenRange> out;
  std::size_t begin = 0;
  std::size_t quotes = 0;  // straight double quotes seen in this sentence
  std::size_t i = 0;
  while (i < tokens.size()) {
    const std::string& t = tokens[i];
    if (t == "\"") ++quotes;
    if (!is_terminal(t)) {
      ++i;
      continue;
    }
    if (t == "." && i > begin &&
        (lexicons.is_abbreviation(tokens[i - 1]) ||
         is_initial(tokens[i - 1]))) {
      ++i;
      continue;
    }
    std::size_t end = i + 1;
    while (end < tokens.size()) {
      if (is_closer(tokens[end])) {
        ++end;
      } else if (tokens[end] == "\"" && quotes % 2 == 1) {
        ++quotes;
        ++end;
      } else if (is_terminal(tokens[end])) {
        ++end;
      } else {
        break;
      }
    }
    out.emplace_back(begin, end);
    begin = end;
    quotes = 0;
    i = end;
  }
  if (begin < tokens.size()) out.emplace_back(begin, tokens.size());
  return out;
}

std::vector<PosTag> pos_tag(std::span<const std::string> tokens,
                            const Lexicons& lexicons) {
  std::vector<PosTag> tags(tokens.size(), PosTag::kOther);
  const std::size_t initial = first_word(tokens);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& t = tokens[i];
    if (text::is_all_punct(t)) {
      tags[i] = PosTag::kPunct;
      continue;
    }
    if (has_digit(t) && text::count_letters(t) == 0) {
      tags[i] = PosTag::kOther;
      continue;
    }
    if (const PosTag* hit = lexicons.find_pos(t)) {
      tags[i] = *hit;
      continue;
    }
    const bool upper = text::starts_upper(t);
    if (upper && lexicons.is_person_name(t)) {
      tags[i] = PosTag::kPropn;
      continue;
    }
    if (upper && i != initial) {
      tags[i] = PosTag::kPropn;
      continue;
    }
    if (const auto tag = suffix_tag(text::fold_case(t))) {
      tags[i] = *tag;
      continue;
    }
    tags[i] = PosTag::kOther;
  }
  return tags;
}

std::vector<TokenRange> detect_person_names(
    std::span<const AnnotatedToken> sentence, const Lexicons& lexicons) {
  std::vector<TokenRange> spans;
  std::size_t initial = 0;
  while (initial < sentence.size() && sentence[initial].tag == PosTag::kPunct) {
    ++initial;
  }
  auto eligible = [&](std::size_t i) {
    const AnnotatedToken& tok = sentence[i];
    if (tok.tag == PosTag::kPropn) return !lexicons.is_honorific(tok.text);
    return i == initial && tok.tag == PosTag::kOther &&
           text::starts_upper(tok.text) && lexicons.find_pos(tok.text) == nullptr;
  };

  std::size_t i = 0;
  while (i < sentence.size()) {
    if (!eligible(i)) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < sentence.size() && sentence[j].tag == PosTag::kPropn &&
           !lexicons.is_honorific(sentence[j].text)) {
      ++j;
    }

    bool all_places = true;
    bool gazetteer = false;
    for (std::size_t k = i; k < j; ++k) {
      all_places = all_places && lexicons.is_place(sentence[k].text);
      gazetteer = gazetteer || lexicons.is_person_name(sentence[k].text);
    }
    bool honorific = false;
    if (i >= 1) {
      std::size_t h = i - 1;
      if (sentence[h].text == "." && h >= 1) --h;
      honorific = lexicons.is_honorific(sentence[h].text);
    }
    const bool reported =
        (i >= 1 && lexicons.is_reporting_verb(sentence[i - 1].text)) ||
        (j < sentence.size() && lexicons.is_reporting_verb(sentence[j].text));

    if (!all_places && (gazetteer || honorific || reported)) {
      spans.emplace_back(i, j);
    }
    i = j;
  }
  return spans;
}

}  // namespace stylekit::annotate
