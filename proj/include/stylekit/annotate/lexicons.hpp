// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "stylekit/annotate/tags.hpp"

namespace stylekit::annotate {

// Word lists consumed by the tagger, the person-name heuristics and the
// lexical features. Every key is stored case-folded; lookups fold too.
struct Lexicons {
  std::unordered_map<std::string, PosTag> pos;
  std::unordered_map<std::string, double> subjectivity;   // [0, 1]
  std::unordered_map<std::string, double> concreteness;   // [1, 5]
  std::unordered_set<std::string> abbreviations;          // stored with "."
  std::unordered_set<std::string> person_names;
  std::unordered_set<std::string> honorifics;
  std::unordered_set<std::string> places;
  std::unordered_set<std::string> reporting_verbs;

  // Provenance: one entry per loaded source ("builtin", "pos.tsv#<hash>").
  std::vector<std::string> sources;

  // Closed-class words, common irregular verbs, honorifics, reporting verbs
  // and abbreviations. No subjectivity or concreteness scores.
  static Lexicons builtin();
  // A lexicon with nothing loaded.
  static Lexicons empty();

  const PosTag* find_pos(std::string_view word) const;
  const double* find_subjectivity(std::string_view word) const;
  const double* find_concreteness(std::string_view word) const;
  bool is_abbreviation(std::string_view token) const;
  bool is_person_name(std::string_view word) const;
  bool is_honorific(std::string_view word) const;
  bool is_place(std::string_view word) const;
  bool is_reporting_verb(std::string_view word) const;

  // File loaders merge into this lexicon, later entries winning.
  // Formats: `word<TAB>tag`, `word<TAB>score`, one entry per line for word
  // lists. Blank lines and lines starting with '#' are skipped.
  void load_pos(const std::string& path);
  void load_subjectivity(const std::string& path);
  void load_concreteness(const std::string& path);
  void load_word_list(const std::string& path,
                      std::unordered_set<std::string>& target);

  // Loads whichever of pos.tsv, subjectivity.tsv, concreteness.tsv,
  // abbreviations.txt, person_names.txt, honorifics.txt, places.txt and
  // reporting_verbs.txt exist in `dir`.
  void load_directory(const std::string& dir);
};

}  // namespace stylekit::annotate
