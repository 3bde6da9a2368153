// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "stylekit/corpus/prompts.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "stylekit/io/rng.hpp"
#include "stylekit/text/utf8.hpp"

namespace stylekit::corpus {
namespace {

using annotate::PosTag;

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> words;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) words.push_back(std::move(w));
  return words;
}

std::string join_prefix(const std::vector<std::string>& words, std::size_t k) {
  std::string out;
  for (std::size_t i = 0; i < k; ++i) {
    if (i > 0) out.push_back(' ');
    out += words[i];
  }
  return out;
}

bool ends_sentence(std::span<const std::string> tokens) {
  for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
    const std::string& t = *it;
    if (t == "." || t == "!" || t == "?" || t == "…" ||
        (text::is_all_punct(t) && t.find_first_of(".!?") != std::string::npos)) {
      return true;
    }
    if (!text::is_all_punct(t)) return false;
  }
  return false;
}

struct Candidate {
  std::vector<std::string> words;
  std::string source;
};

}  // namespace

std::string_view to_string(PromptOrigin origin) {
  switch (origin) {
    case PromptOrigin::kGpt4File: return "gpt4_file";
    case PromptOrigin::kTestExcerpt: return "test_excerpt";
    case PromptOrigin::kNameElicitation: return "name_elicitation";
  }
  return "gpt4_file";
}

PromptSet build_continuation_prompts(const std::vector<Chunk>& test_chunks,
                                     const annotate::Lexicons& lexicons,
                                     const ContinuationOptions& options,
                                     std::uint64_t seed) {
  if (options.min_words == 0 || options.min_words > options.max_words) {
    throw Error(ErrorCode::kInvalidConfig, "invalid prompt word range");
  }
  std::map<std::string, std::vector<const Chunk*>> by_author;
  for (const auto& c : test_chunks) by_author[c.author_id].push_back(&c);

  std::vector<std::string> authors = options.authors;
  if (authors.empty()) {
    for (const auto& [a, _] : by_author) authors.push_back(a);
  }

  PromptSet out;
  for (const auto& author : authors) {
    auto it = by_author.find(author);
    if (it == by_author.end()) {
      throw Error(ErrorCode::kInsufficientSentences,
                  fmt::format("author '{}' has no test chunks", author));
    }
    auto chunks = it->second;
    std::sort(chunks.begin(), chunks.end(), [](const Chunk* a, const Chunk* b) {
      return std::tie(a->book_id, a->index) < std::tie(b->book_id, b->index);
    });

    std::vector<Candidate> candidates;
    for (const Chunk* c : chunks) {
      const auto ranges = annotate::segment_sentences(c->tokens, lexicons);
      for (std::size_t s = 0; s < ranges.size(); ++s) {
        if (s == 0 && c->index > 0) continue;
        const auto sentence = std::span<const std::string>(c->tokens).subspan(
            ranges[s].first, ranges[s].second - ranges[s].first);
        if (!ends_sentence(sentence)) continue;
        auto words = split_words(detokenize(sentence));
        if (words.size() < options.min_words) continue;
        candidates.push_back(
            {std::move(words), fmt::format("{}#{}:{}", c->book_id, c->index, s)});
      }
    }

    io::Rng rng(io::derive_seed(seed, author));
    rng.shuffle(std::span<Candidate>(candidates));
    std::size_t taken = 0;
    for (const auto& cand : candidates) {
      if (taken == options.per_author) break;
      const auto k = static_cast<std::size_t>(rng.between(
          static_cast<std::int64_t>(options.min_words),
          static_cast<std::int64_t>(options.max_words)));
      if (cand.words.size() < k) continue;
      out.prompts.push_back({join_prefix(cand.words, k),
                             PromptOrigin::kTestExcerpt, author, cand.source});
      ++taken;
    }
    if (taken < options.per_author) {
      throw Error(ErrorCode::kInsufficientSentences,
                  fmt::format("author '{}': {} of {} prompts drawn from {} "
                              "eligible sentences",
                              author, taken, options.per_author,
                              candidates.size()));
    }
  }
  return out;
}

PromptSet build_name_elicitation_prompts(
    const std::vector<annotate::AnnotatedDocument>& train_docs,
    std::size_t count, std::uint64_t seed, Diagnostics* diagnostics) {
  std::vector<Prompt> matches;
  for (const auto& doc : train_docs) {
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      const auto& toks = doc.sentences[s].tokens;
      for (std::size_t v = 1; v + 1 < toks.size(); ++v) {
        if (toks[v].tag != PosTag::kVerb || !toks[v + 1].is_person) continue;
        std::size_t e = v + 1;
        while (e < toks.size() && toks[e].is_person) ++e;
        if (e < toks.size() && toks[e].tag != PosTag::kPunct) continue;
        const bool clean = std::none_of(
            toks.begin(), toks.begin() + static_cast<std::ptrdiff_t>(v),
            [](const auto& t) { return t.is_person; });
        const bool has_word = std::any_of(
            toks.begin(), toks.begin() + static_cast<std::ptrdiff_t>(v),
            [](const auto& t) { return t.tag != PosTag::kPunct; });
        if (!clean || !has_word) continue;
        std::vector<std::string> prefix;
        for (std::size_t k = 0; k <= v; ++k) prefix.push_back(toks[k].text);
        matches.push_back({detokenize(prefix), PromptOrigin::kNameElicitation,
                           std::nullopt, fmt::format("{}:{}", doc.label, s)});
        break;
      }
    }
  }

  PromptSet out;
  if (matches.size() <= count) {
    if (matches.size() < count) {
      warn(diagnostics, ErrorCode::kInsufficientMatches,
           fmt::format("requested {} name-elicitation prompts, found {}", count,
                       matches.size()));
    }
    out.prompts = std::move(matches);
    return out;
  }
  std::vector<std::size_t> idx(matches.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  io::Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(idx));
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  for (const std::size_t i : idx) out.prompts.push_back(matches[i]);
  return out;
}

PromptSet load_prompt_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open prompt file " + path);
  PromptSet out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    out.prompts.push_back({line, PromptOrigin::kGpt4File, std::nullopt,
                           fmt::format("line {}", lineno)});
  }
  return out;
}

}  // namespace stylekit::corpus
