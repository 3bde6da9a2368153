// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <span>
#include <string>
#include <vector>

#include "stylekit/annotate/annotator.hpp"
#include "stylekit/annotate/external.hpp"
#include "stylekit/annotate/lexicons.hpp"
#include "stylekit/corpus/chunking.hpp"

namespace stylekit::features {

template <typename Scalar>
using Vector5 = Eigen::Matrix<Scalar, 5, 1>;
template <typename Scalar>
using Vector6 = Eigen::Matrix<Scalar, 6, 1>;

// Per-sentence averages: nouns (NOUN and PROPN), verbs, adjectives, unique
// case-folded words, subjectivity, words with concreteness above 3.
using LexicalVector = Vector6<double>;
// Probability over SIMPLE, COMPOUND, COMPLEX, COMPLEX-COMPOUND, OTHER.
using SyntacticDistribution = Vector5<double>;
// Per-sentence commas, semicolons, colons and words, then mean word length
// in letters over all words.
using SurfaceVector = Vector5<double>;

struct StyleProfile {
  std::string label;
  std::size_t n_sentences = 0;
  LexicalVector lexical = LexicalVector::Zero();
  SyntacticDistribution syntactic = SyntacticDistribution::Zero();
  SurfaceVector surface = SurfaceVector::Zero();

  friend bool operator==(const StyleProfile& a, const StyleProfile& b) {
    return a.label == b.label && a.n_sentences == b.n_sentences &&
           a.lexical == b.lexical && a.syntactic == b.syntactic &&
           a.surface == b.surface;
  }
};

// All extractors throw Error(kEmptyDocument) for documents without
// sentences.
LexicalVector lexical_vector(const annotate::AnnotatedDocument& doc,
                             const annotate::Lexicons& lexicons);

// Clause-counting heuristic. The sentence is cut into segments at
// coordinating conjunctions, subordinating conjunctions, relative pronouns
// (who, whom, whose, which), commas, semicolons, colons and dashes. A
// segment contributes a clause only if it holds a finite verb group (a run
// of VERB tokens, adverbs allowed inside, not introduced by "to" and not a
// lone -ing form). Then, by what opened the segment:
//   sentence start                      -> independent
//   subordinator or relative pronoun    -> dependent
//   semicolon, colon or dash            -> independent
//   comma or coordinator                -> independent if a subject-like
//                                          token (NOUN, PROPN, PRON, DET)
//                                          precedes its verb, else it
//                                          extends the previous clause
// With I independent and D dependent clauses:
//   I = 0 -> OTHER, I = 1 & D = 0 -> SIMPLE, I >= 2 & D = 0 -> COMPOUND,
//   I = 1 & D >= 1 -> COMPLEX, I >= 2 & D >= 1 -> COMPLEX-COMPOUND.
// An externally supplied category on the sentence wins.
annotate::SentenceCategory classify_sentence(
    const annotate::AnnotatedSentence& sentence);

SyntacticDistribution syntactic_distribution(
    const annotate::AnnotatedDocument& doc);

SurfaceVector surface_vector(const annotate::AnnotatedDocument& doc);

StyleProfile profile(const annotate::AnnotatedDocument& doc,
                     const annotate::Lexicons& lexicons, std::string label);

// Pools the sentences of several documents (micro-average) before
// profiling.
StyleProfile profile(std::span<const annotate::AnnotatedDocument> docs,
                     const annotate::Lexicons& lexicons, std::string label);

// Annotates a set of chunks (built-in heuristics, or external sentences
// when `external` holds the chunk's book) in (book_id, index) order.
std::vector<annotate::AnnotatedDocument> annotate_chunks(
    std::span<const corpus::Chunk* const> chunks,
    const annotate::Lexicons& lexicons,
    const annotate::ExternalAnnotations* external = nullptr);

// Profile over the pooled test-split chunks of one author, labeled with the
// author id. Throws Error(kUnknownAuthor) when the author has no test
// chunks.
StyleProfile author_reference_profile(
    const std::vector<corpus::Chunk>& chunks, const std::string& author_id,
    const annotate::Lexicons& lexicons,
    const annotate::ExternalAnnotations* external = nullptr);

}  // namespace stylekit::features
