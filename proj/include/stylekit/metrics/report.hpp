// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stylekit/features/features.hpp"

namespace stylekit::metrics {

struct ReportRow {
  std::string author_id;
  std::string method;
  std::optional<double> pct_in_training;
  std::optional<double> n_names;  // fractional in averaged rows
  std::optional<double> ppl;
  std::optional<double> cosine;
  std::optional<double> accuracy;
  double lexical_mse = 0;
  double syntactic_jsd = 0;
  double surface_mse = 0;
  std::optional<double> ppl_base;
  std::optional<double> ppl_reduction_pct;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

// Optional columns for one (author, method) row, computed from sidecars.
struct RowExtras {
  std::optional<double> pct_in_training;
  std::optional<double> n_names;
  std::optional<double> ppl;
  std::optional<double> ppl_base;
  std::optional<double> cosine;
  std::optional<double> accuracy;
};

using RowKey = std::pair<std::string, std::string>;  // (author, method)

struct GenerationProfile {
  std::string author_id;
  std::string method;
  features::StyleProfile profile;
};

struct AlignmentReport {
  std::vector<ReportRow> rows;
  // One macro-averaged row per method, author "average".
  std::vector<ReportRow> averages;
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();
};

// Column order of the CSV and JSON renderings.
const std::vector<std::string>& report_columns();

// One row per generation profile, in input order: lexical and surface MSE
// and syntactic JSD against the author's reference profile, plus any
// extras. PPL reduction is filled when both ppl_base and ppl are present.
// Throws Error(kUnknownAuthor) naming the row when no reference exists.
AlignmentReport alignment_report(
    const std::vector<GenerationProfile>& generations,
    const std::map<std::string, features::StyleProfile>& references,
    const std::map<RowKey, RowExtras>& extras = {},
    nlohmann::ordered_json metadata = nlohmann::ordered_json::object());

// Recomputes the per-method macro averages from `rows`.
std::vector<ReportRow> macro_averages(const std::vector<ReportRow>& rows);

// Two "#" lines (format tag, compact metadata JSON), the header, data rows,
// then average rows. Reals use the shortest representation that reads back
// exactly; absent values are empty cells.
std::string render_csv(const AlignmentReport& report);

nlohmann::ordered_json to_json(const AlignmentReport& report);
AlignmentReport report_from_json(const nlohmann::ordered_json& j);

// Bar charts of PPL reduction per author and cosine similarity per row.
std::string render_svg(const AlignmentReport& report);

// Shortest round-trip decimal form ("0.5", "68", "9.68").
std::string format_real(double value);

}  // namespace stylekit::metrics
