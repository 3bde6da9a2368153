// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "stylekit/metrics/names.hpp"

#include <algorithm>

#include "stylekit/metrics/metrics.hpp"
#include "stylekit/text/utf8.hpp"

namespace stylekit::metrics {

ClassificationStats classification_stats(std::span<const std::string> gold,
                                         std::span<const std::string> predicted,
                                         std::vector<std::string> labels) {
  if (gold.size() != predicted.size() || gold.empty()) {
    throw Error(ErrorCode::kLengthMismatch,
                fmt::format("{} gold and {} predicted labels", gold.size(),
                            predicted.size()));
  }
  auto index_of = [&](const std::string& label) -> Eigen::Index {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) {
      throw Error(ErrorCode::kUnknownAuthor,
                  fmt::format("label '{}' is not a known author", label));
    }
    return it - labels.begin();
  };
  ClassificationStats stats;
  const auto n = static_cast<Eigen::Index>(labels.size());
  stats.confusion = Eigen::MatrixXi::Zero(n, n);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const Eigen::Index g = index_of(gold[i]);
    const Eigen::Index p = index_of(predicted[i]);
    stats.confusion(g, p) += 1;
    if (g == p) ++correct;
  }
  stats.accuracy =
      static_cast<double>(correct) / static_cast<double>(gold.size());
  stats.labels = std::move(labels);
  return stats;
}

std::set<std::string> person_names(
    std::span<const annotate::AnnotatedDocument> docs) {
  std::set<std::string> names;
  for (const auto& doc : docs) {
    for (const auto& sentence : doc.sentences) {
      const auto& toks = sentence.tokens;
      std::size_t i = 0;
      while (i < toks.size()) {
        if (!toks[i].is_person) {
          ++i;
          continue;
        }
        std::string name;
        for (; i < toks.size() && toks[i].is_person; ++i) {
          if (!name.empty()) name.push_back(' ');
          name += text::fold_case(toks[i].text);
        }
        names.insert(std::move(name));
      }
    }
  }
  return names;
}

NameOverlapStats name_overlap(const std::set<std::string>& generated_names,
                              const std::set<std::string>& training_names) {
  NameOverlapStats stats;
  std::set<std::string> unique;
  for (const auto& n : generated_names) unique.insert(text::fold_case(n));
  stats.n_unique_names = unique.size();
  if (unique.empty()) return stats;
  std::set<std::string> folded_training;
  for (const auto& n : training_names) folded_training.insert(text::fold_case(n));
  std::size_t hits = 0;
  for (const auto& n : unique) {
    if (folded_training.contains(n)) ++hits;
  }
  stats.pct_in_training =
      static_cast<double>(hits) / static_cast<double>(unique.size());
  return stats;
}

NameOverlapStats name_overlap(
    std::span<const annotate::AnnotatedDocument> generated,
    const std::set<std::string>& training_names) {
  return name_overlap(person_names(generated), training_names);
}

}  // namespace stylekit::metrics
