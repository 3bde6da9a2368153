// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace stylekit::annotate {

enum class PosTag : std::uint8_t {
  kNoun,
  kPropn,
  kVerb,
  kAdj,
  kAdv,
  kDet,
  kPron,
  kConjCoord,
  kConjSub,
  kPunct,
  kOther,
};

std::string_view to_string(PosTag tag);

// Accepts the eleven native names plus the mappings below; returns nullopt
// for anything else.
//
//   Universal Dependencies      native
//   AUX                         VERB
//   CCONJ                       CONJ_COORD
//   SCONJ                       CONJ_SUB
//   ADP NUM PART INTJ SYM X     OTHER
//   SPACE
//
//   Penn Treebank               native
//   NN NNS                      NOUN
//   NNP NNPS                    PROPN
//   VB VBD VBG VBN VBP VBZ MD   VERB
//   JJ JJR JJS                  ADJ
//   RB RBR RBS WRB              ADV
//   DT PDT WDT                  DET
//   PRP PRP$ WP WP$ EX          PRON
//   CC                          CONJ_COORD
//   IN                          OTHER (prepositions dominate)
//   punctuation tags            PUNCT
std::optional<PosTag> parse_tag(std::string_view name);

}  // namespace stylekit::annotate
