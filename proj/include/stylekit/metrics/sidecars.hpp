// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "stylekit/metrics/report.hpp"

namespace stylekit::metrics {

// Sidecar unit ids and generation labels follow "<author>/<method>/<id>"
// ("<author>/<id>" for base-model NLL dumps).
struct UnitKey {
  std::string author_id;
  std::string method;
  std::string rest;
};

// Splits at the first two '/'. Fewer parts leave the later fields empty.
UnitKey parse_unit_key(std::string_view id);

struct EmbeddingRecord {
  std::string label;
  Eigen::VectorXd vector;
};

// {"label", "vector": [...]} per line; one dimension per file, finite
// values. Throws Error(kDimensionMismatch) on dimension drift.
std::vector<EmbeddingRecord> read_embeddings(const std::string& path);

struct PredictionRecord {
  std::string unit_id;
  std::string gold;
  std::string pred;
};

// {"unit_id", "gold", "pred"} per line.
std::vector<PredictionRecord> read_predictions(const std::string& path);

struct NllDump {
  std::string unit_id;
  std::vector<double> nlls;  // nats
};

// {"unit_id", "log_base": "e" | "2", "nlls": [...]} per line; base-2 values
// are converted to nats on load.
std::vector<NllDump> read_nll_dumps(const std::string& path);

struct Generation {
  std::string gen_id;
  std::string author_id;
  std::string method;
  std::string prompt_id;
  std::string text;
};

// {"gen_id", "author_id", "method", "prompt_id"?, "text"} per line.
std::vector<Generation> read_generations(const std::string& path);

// Mean over generations of cosine(generation, author's mean reference
// embedding), keyed by (author, method). Reference records are labeled with
// the author id; generation labels follow the unit-key convention.
std::map<RowKey, double> mean_cosine_by_row(
    const std::vector<EmbeddingRecord>& references,
    const std::vector<EmbeddingRecord>& generations);

// Per (author, method): accuracy over units whose gold label is the author.
// Unit ids follow "<author>/<method>/<id>"; `labels` is the author set.
std::map<RowKey, double> accuracy_by_row(
    const std::vector<PredictionRecord>& predictions,
    const std::vector<std::string>& labels);

// Token-pooled perplexity per author ("<author>/..." unit ids), or per
// (author, method) when `by_method`.
std::map<RowKey, double> perplexity_by_row(const std::vector<NllDump>& dumps,
                                           bool by_method);

}  // namespace stylekit::metrics
