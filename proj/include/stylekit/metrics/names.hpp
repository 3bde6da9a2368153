// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>

#include "stylekit/annotate/annotator.hpp"

namespace stylekit::metrics {

struct NameOverlapStats {
  double pct_in_training = 0;  // fraction in [0, 1]
  std::size_t n_unique_names = 0;
};

// Case-folded surface forms of every person span ("bertie wooster").
std::set<std::string> person_names(
    std::span<const annotate::AnnotatedDocument> docs);

// Unique generated names and the fraction of them present in
// `training_names` (exact case-folded match). No names gives (0, 0).
NameOverlapStats name_overlap(
    std::span<const annotate::AnnotatedDocument> generated,
    const std::set<std::string>& training_names);

NameOverlapStats name_overlap(const std::set<std::string>& generated_names,
                              const std::set<std::string>& training_names);

}  // namespace stylekit::metrics
