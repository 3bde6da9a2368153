// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "stylekit/annotate/annotator.hpp"

namespace stylekit::annotate {

// Sentences from an external pipeline, per book, in sent_index order.
using ExternalAnnotations =
    std::map<std::string, std::vector<AnnotatedSentence>>;

// Reads annotation JSONL, one sentence per line:
//   {"book_id", "sent_index", "tokens": [{"t", "pos", "person"}],
//    "category"?: "SIMPLE" | ... }
// Tags go through parse_tag(). Throws Error(kUnknownTag) for unmapped tags
// and Error(kInvalidInput) for malformed records or a person flag on a tag
// other than PROPN, NOUN or OTHER.
ExternalAnnotations load_external_annotations(const std::string& path);

// Replaces built-in annotation with the external sentences for one book.
// Token texts must equal `tokens` position by position; with
// `allow_prefix`, `tokens` may be a prefix of the annotated text (chunk
// stores drop the tail) and the sentences are truncated to it.
// Throws Error(kAnnotationMismatch) carrying the first divergent index.
AnnotatedDocument apply_external(std::span<const std::string> tokens,
                                 const std::vector<AnnotatedSentence>& external,
                                 std::string label, bool allow_prefix = false);

}  // namespace stylekit::annotate
