// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "stylekit/features/features.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <map>
#include <unordered_set>

#include "stylekit/error.hpp"
#include "stylekit/text/utf8.hpp"

namespace stylekit::features {
namespace {

using annotate::AnnotatedDocument;
using annotate::AnnotatedSentence;
using annotate::PosTag;
using annotate::SentenceCategory;

void require_sentences(const AnnotatedDocument& doc) {
  if (doc.sentences.empty()) {
    throw Error(ErrorCode::kEmptyDocument,
                fmt::format("document '{}' has no sentences", doc.label));
  }
}

bool is_word(const annotate::AnnotatedToken& t) {
  return t.tag != PosTag::kPunct;
}

enum class Opener { kStart, kSub, kCoord, kComma, kSemi };

bool subject_like(PosTag tag) {
  return tag == PosTag::kNoun || tag == PosTag::kPropn ||
         tag == PosTag::kPron || tag == PosTag::kDet;
}

bool is_relative(const std::string& folded) {
  return folded == "who" || folded == "whom" || folded == "whose" ||
         folded == "which";
}

bool is_semi(const std::string& t) {
  return t == ";" || t == ":" || t == "—" || t == "–" ||
         (t.size() >= 2 && t.find_first_not_of('-') == std::string::npos);
}

}  // namespace

LexicalVector lexical_vector(const AnnotatedDocument& doc,
                             const annotate::Lexicons& lexicons) {
  require_sentences(doc);
  LexicalVector sum = LexicalVector::Zero();
  for (const auto& sentence : doc.sentences) {
    double nouns = 0, verbs = 0, adjectives = 0, concrete = 0;
    double subjectivity_sum = 0;
    std::size_t subjectivity_hits = 0;
    std::unordered_set<std::string> unique;
    for (const auto& tok : sentence.tokens) {
      if (!is_word(tok)) continue;
      switch (tok.tag) {
        case PosTag::kNoun:
        case PosTag::kPropn: nouns += 1; break;
        case PosTag::kVerb: verbs += 1; break;
        case PosTag::kAdj: adjectives += 1; break;
        default: break;
      }
      unique.insert(text::fold_case(tok.text));
      if (const double* s = lexicons.find_subjectivity(tok.text)) {
        subjectivity_sum += *s;
        ++subjectivity_hits;
      }
      if (const double* c = lexicons.find_concreteness(tok.text)) {
        if (*c > 3.0) concrete += 1;
      }
    }
    const double subjectivity =
        subjectivity_hits > 0
            ? subjectivity_sum / static_cast<double>(subjectivity_hits)
            : 0.0;
    sum += (LexicalVector() << nouns, verbs, adjectives,
            static_cast<double>(unique.size()), subjectivity, concrete)
               .finished();
  }
  return sum / static_cast<double>(doc.sentences.size());
}

SentenceCategory classify_sentence(const AnnotatedSentence& sentence) {
  if (sentence.category) return *sentence.category;

  const auto& toks = sentence.tokens;
  const std::size_t n = toks.size();
  std::vector<std::string> folded(n);
  for (std::size_t i = 0; i < n; ++i) folded[i] = text::fold_case(toks[i].text);

  std::size_t first_word = 0;
  while (first_word < n && !is_word(toks[first_word])) ++first_word;

  int independent = 0;
  int dependent = 0;
  Opener opener = Opener::kStart;
  bool subject_seen = false;
  bool has_clause = false;  // current segment already counted

  auto close_segment = [&](Opener next, bool relative) {
    opener = next;
    subject_seen = relative;
    has_clause = false;
  };

  for (std::size_t i = 0; i < n; ++i) {
    const auto& tok = toks[i];
    const std::string& f = folded[i];
    const bool prev_verb_or_comma =
        i > 0 && (toks[i - 1].tag == PosTag::kVerb || toks[i - 1].text == ",");

    if (tok.tag == PosTag::kConjCoord) {
      close_segment(Opener::kCoord, false);
      continue;
    }
    if (tok.tag == PosTag::kConjSub || (f == "that" && prev_verb_or_comma)) {
      close_segment(Opener::kSub, false);
      continue;
    }
    if (is_relative(f) && i != first_word) {
      close_segment(Opener::kSub, true);
      continue;
    }
    if (tok.tag == PosTag::kPunct) {
      if (tok.text == ",") {
        close_segment(Opener::kComma, false);
      } else if (is_semi(tok.text)) {
        close_segment(Opener::kSemi, false);
      }
      continue;
    }
    if (tok.tag != PosTag::kVerb) {
      if (subject_like(tok.tag)) subject_seen = true;
      continue;
    }

    // Verb group: VERB tokens with adverbs allowed between them.
    std::size_t verbs = 0;
    std::size_t last = i;
    std::size_t j = i;
    while (j < n) {
      if (toks[j].tag == PosTag::kVerb) {
        ++verbs;
        last = j;
        ++j;
      } else if (toks[j].tag == PosTag::kAdv && j + 1 < n &&
                 (toks[j + 1].tag == PosTag::kVerb ||
                  toks[j + 1].tag == PosTag::kAdv)) {
        ++j;
      } else {
        break;
      }
    }
    const bool infinitive = i > 0 && folded[i - 1] == "to";
    const bool participle = verbs == 1 && f.ends_with("ing");
    const bool finite = !infinitive && !participle;
    i = last;
    if (!finite || has_clause) continue;

    switch (opener) {
      case Opener::kStart:
      case Opener::kSemi:
        ++independent;
        has_clause = true;
        break;
      case Opener::kSub:
        ++dependent;
        has_clause = true;
        break;
      case Opener::kCoord:
      case Opener::kComma:
        if (subject_seen) {
          ++independent;
          has_clause = true;
        }
        break;
    }
  }

  if (independent == 0) return SentenceCategory::kOther;
  if (dependent == 0) {
    return independent == 1 ? SentenceCategory::kSimple
                            : SentenceCategory::kCompound;
  }
  return independent == 1 ? SentenceCategory::kComplex
                          : SentenceCategory::kComplexCompound;
}

SyntacticDistribution syntactic_distribution(const AnnotatedDocument& doc) {
  require_sentences(doc);
  SyntacticDistribution hist = SyntacticDistribution::Zero();
  for (const auto& sentence : doc.sentences) {
    hist[static_cast<Eigen::Index>(classify_sentence(sentence))] += 1.0;
  }
  return hist / static_cast<double>(doc.sentences.size());
}

SurfaceVector surface_vector(const AnnotatedDocument& doc) {
  require_sentences(doc);
  double commas = 0, semicolons = 0, colons = 0, words = 0, letters = 0;
  for (const auto& sentence : doc.sentences) {
    for (const auto& tok : sentence.tokens) {
      if (tok.tag == PosTag::kPunct) {
        for (const char c : tok.text) {
          if (c == ',') commas += 1;
          if (c == ';') semicolons += 1;
          if (c == ':') colons += 1;
        }
      } else {
        words += 1;
        letters += static_cast<double>(text::count_letters(tok.text));
      }
    }
  }
  const double n = static_cast<double>(doc.sentences.size());
  return (SurfaceVector() << commas / n, semicolons / n, colons / n, words / n,
          words > 0 ? letters / words : 0.0)
      .finished();
}

StyleProfile profile(const AnnotatedDocument& doc,
                     const annotate::Lexicons& lexicons, std::string label) {
  StyleProfile p;
  p.label = std::move(label);
  p.lexical = lexical_vector(doc, lexicons);
  p.syntactic = syntactic_distribution(doc);
  p.surface = surface_vector(doc);
  p.n_sentences = doc.sentences.size();
  return p;
}

StyleProfile profile(std::span<const AnnotatedDocument> docs,
                     const annotate::Lexicons& lexicons, std::string label) {
  AnnotatedDocument pooled;
  pooled.label = label;
  for (const auto& d : docs) {
    pooled.sentences.insert(pooled.sentences.end(), d.sentences.begin(),
                            d.sentences.end());
  }
  return profile(pooled, lexicons, std::move(label));
}

std::vector<AnnotatedDocument> annotate_chunks(
    std::span<const corpus::Chunk* const> chunks,
    const annotate::Lexicons& lexicons,
    const annotate::ExternalAnnotations* external) {
  std::vector<const corpus::Chunk*> ordered(chunks.begin(), chunks.end());
  std::sort(ordered.begin(), ordered.end(),
            [](const corpus::Chunk* a, const corpus::Chunk* b) {
              return std::tie(a->author_id, a->book_id, a->index) <
                     std::tie(b->author_id, b->book_id, b->index);
            });

  // External sentences cover whole books; chunks are consecutive windows, so
  // a book's chunks are annotated together and re-split afterwards.
  std::vector<AnnotatedDocument> out;
  for (std::size_t i = 0; i < ordered.size();) {
    const corpus::Chunk* c = ordered[i];
    const auto* book_sentences =
        external != nullptr && external->contains(c->book_id)
            ? &external->at(c->book_id)
            : nullptr;
    if (book_sentences == nullptr) {
      out.push_back(annotate::annotate(
          c->tokens, lexicons,
          fmt::format("{}/{}#{}", c->author_id, c->book_id, c->index)));
      ++i;
      continue;
    }
    // Flatten the book's annotated tokens, then take each chunk's window.
    std::vector<annotate::AnnotatedToken> flat;
    std::vector<std::size_t> sentence_start;  // token index of each sentence
    for (const auto& s : *book_sentences) {
      sentence_start.push_back(flat.size());
      flat.insert(flat.end(), s.tokens.begin(), s.tokens.end());
    }
    std::size_t end = i;
    std::size_t size = 0;  // full window length; only a kept tail is shorter
    while (end < ordered.size() && ordered[end]->author_id == c->author_id &&
           ordered[end]->book_id == c->book_id) {
      size = std::max(size, ordered[end]->tokens.size());
      ++end;
    }
    std::size_t j = i;
    while (j < end) {
      const corpus::Chunk* chunk = ordered[j];
      const std::size_t begin = chunk->index * size;
      std::vector<AnnotatedSentence> window;
      for (std::size_t s = 0; s < book_sentences->size(); ++s) {
        const std::size_t sb = sentence_start[s];
        const std::size_t se = sb + (*book_sentences)[s].tokens.size();
        const std::size_t lo = std::max(sb, begin);
        const std::size_t hi = std::min(se, begin + chunk->tokens.size());
        if (lo >= hi) continue;
        AnnotatedSentence part;
        part.tokens.assign(flat.begin() + static_cast<std::ptrdiff_t>(lo),
                           flat.begin() + static_cast<std::ptrdiff_t>(hi));
        if (lo == sb && hi == se) part.category = (*book_sentences)[s].category;
        window.push_back(std::move(part));
      }
      out.push_back(annotate::apply_external(
          chunk->tokens, window,
          fmt::format("{}/{}#{}", chunk->author_id, chunk->book_id,
                      chunk->index)));
      ++j;
    }
    i = j;
  }
  return out;
}

StyleProfile author_reference_profile(
    const std::vector<corpus::Chunk>& chunks, const std::string& author_id,
    const annotate::Lexicons& lexicons,
    const annotate::ExternalAnnotations* external) {
  std::vector<const corpus::Chunk*> selected;
  for (const auto& c : chunks) {
    if (c.author_id == author_id && c.split == corpus::Split::kTest) {
      selected.push_back(&c);
    }
  }
  if (selected.empty()) {
    throw Error(ErrorCode::kUnknownAuthor,
                fmt::format("no test chunks for author '{}'", author_id));
  }
  const auto docs = annotate_chunks(selected, lexicons, external);
  return profile(std::span<const AnnotatedDocument>(docs), lexicons, author_id);
}

}  // namespace stylekit::features
