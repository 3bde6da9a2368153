// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "stylekit/metrics/report.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

#include "stylekit/error.hpp"
#include "stylekit/metrics/metrics.hpp"

namespace stylekit::metrics {
namespace {

using OptionalField = std::optional<double> ReportRow::*;

struct OptionalColumn {
  const char* name;
  OptionalField field;
};

constexpr std::array<OptionalColumn, 7> kOptionalColumns = {{
    {"pct_in_training", &ReportRow::pct_in_training},
    {"n_names", &ReportRow::n_names},
    {"ppl", &ReportRow::ppl},
    {"cosine", &ReportRow::cosine},
    {"accuracy", &ReportRow::accuracy},
    {"ppl_base", &ReportRow::ppl_base},
    {"ppl_reduction_pct", &ReportRow::ppl_reduction_pct},
}};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string cell(const std::optional<double>& v) {
  return v ? format_real(*v) : std::string();
}

std::string csv_row(const ReportRow& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n",
                     csv_field(r.author_id), csv_field(r.method),
                     cell(r.pct_in_training), cell(r.n_names), cell(r.ppl),
                     cell(r.cosine), cell(r.accuracy),
                     format_real(r.lexical_mse), format_real(r.syntactic_jsd),
                     format_real(r.surface_mse), cell(r.ppl_base),
                     cell(r.ppl_reduction_pct));
}

nlohmann::ordered_json row_json(const ReportRow& r) {
  auto opt = [](const std::optional<double>& v) -> nlohmann::ordered_json {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json();
  };
  nlohmann::ordered_json j;
  j["author"] = r.author_id;
  j["method"] = r.method;
  j["pct_in_training"] = opt(r.pct_in_training);
  j["n_names"] = opt(r.n_names);
  j["ppl"] = opt(r.ppl);
  j["cosine"] = opt(r.cosine);
  j["accuracy"] = opt(r.accuracy);
  j["lexical_mse"] = r.lexical_mse;
  j["syntactic_jsd"] = r.syntactic_jsd;
  j["surface_mse"] = r.surface_mse;
  j["ppl_base"] = opt(r.ppl_base);
  j["ppl_reduction_pct"] = opt(r.ppl_reduction_pct);
  return j;
}

ReportRow row_from_json(const nlohmann::ordered_json& j) {
  auto opt = [&](const char* key) -> std::optional<double> {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
  };
  ReportRow r;
  r.author_id = j.at("author").get<std::string>();
  r.method = j.at("method").get<std::string>();
  r.pct_in_training = opt("pct_in_training");
  r.n_names = opt("n_names");
  r.ppl = opt("ppl");
  r.cosine = opt("cosine");
  r.accuracy = opt("accuracy");
  r.lexical_mse = j.at("lexical_mse").get<double>();
  r.syntactic_jsd = j.at("syntactic_jsd").get<double>();
  r.surface_mse = j.at("surface_mse").get<double>();
  r.ppl_base = opt("ppl_base");
  r.ppl_reduction_pct = opt("ppl_reduction_pct");
  return r;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

struct Bar {
  std::string label;
  double value;
};

// Vertical bar panel at vertical offset `top`; returns its height.
double bar_panel(std::string& svg, const std::string& title,
                 const std::vector<Bar>& bars, double top, double width,
                 int decimals) {
  constexpr double kPanelHeight = 220;
  constexpr double kPlotTop = 40;
  constexpr double kPlotHeight = 130;
  svg += fmt::format(
      "<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"14\" "
      "text-anchor=\"middle\">{}</text>\n",
      width / 2, top + 20, xml_escape(title));
  if (bars.empty()) {
    svg += fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"12\" "
        "text-anchor=\"middle\">no data</text>\n",
        width / 2, top + kPlotTop + kPlotHeight / 2);
    return kPanelHeight;
  }
  double max_abs = 0;
  for (const auto& b : bars) max_abs = std::max(max_abs, std::abs(b.value));
  if (max_abs == 0) max_abs = 1;
  const double slot = (width - 40) / static_cast<double>(bars.size());
  const double base = top + kPlotTop + kPlotHeight;
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const double h = kPlotHeight * std::abs(bars[i].value) / max_abs;
    const double x = 20 + slot * static_cast<double>(i) + slot * 0.15;
    const double w = slot * 0.7;
    const double y = bars[i].value >= 0 ? base - h : base;
    svg += fmt::format(
        "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" "
        "fill=\"{}\"/>\n",
        x, y, w, h, bars[i].value >= 0 ? "#4c72b0" : "#c44e52");
    svg += fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"10\" "
        "text-anchor=\"middle\">{:.{}f}</text>\n",
        x + w / 2, y - 4, bars[i].value, decimals);
    svg += fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"10\" "
        "text-anchor=\"middle\">{}</text>\n",
        x + w / 2, base + 16, xml_escape(bars[i].label));
  }
  svg += fmt::format(
      "<line x1=\"20\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" "
      "stroke=\"black\"/>\n",
      base, width - 20, base);
  return kPanelHeight;
}

}  // namespace

std::string format_real(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) {
    throw Error(ErrorCode::kInvalidInput, "cannot format value");
  }
  return std::string(buf.data(), ptr);
}

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> kColumns = {
      "author",      "method",        "pct_in_training", "n_names",
      "ppl",         "cosine",        "accuracy",        "lexical_mse",
      "syntactic_jsd", "surface_mse", "ppl_base",        "ppl_reduction_pct"};
  return kColumns;
}

std::vector<ReportRow> macro_averages(const std::vector<ReportRow>& rows) {
  std::vector<std::string> methods;
  for (const auto& r : rows) {
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) {
      methods.push_back(r.method);
    }
  }
  std::vector<ReportRow> out;
  for (const auto& method : methods) {
    ReportRow avg;
    avg.author_id = "average";
    avg.method = method;
    std::size_t n = 0;
    for (const auto& r : rows) {
      if (r.method != method) continue;
      avg.lexical_mse += r.lexical_mse;
      avg.syntactic_jsd += r.syntactic_jsd;
      avg.surface_mse += r.surface_mse;
      ++n;
    }
    const auto dn = static_cast<double>(n);
    avg.lexical_mse /= dn;
    avg.syntactic_jsd /= dn;
    avg.surface_mse /= dn;
    for (const auto& col : kOptionalColumns) {
      double sum = 0;
      std::size_t present = 0;
      for (const auto& r : rows) {
        if (r.method == method && (r.*col.field)) {
          sum += *(r.*col.field);
          ++present;
        }
      }
      if (present > 0) avg.*col.field = sum / static_cast<double>(present);
    }
    out.push_back(std::move(avg));
  }
  return out;
}

AlignmentReport alignment_report(
    const std::vector<GenerationProfile>& generations,
    const std::map<std::string, features::StyleProfile>& references,
    const std::map<RowKey, RowExtras>& extras,
    nlohmann::ordered_json metadata) {
  AlignmentReport report;
  for (const auto& gen : generations) {
    const auto ref = references.find(gen.author_id);
    if (ref == references.end()) {
      throw Error(ErrorCode::kUnknownAuthor,
                  fmt::format("no reference profile for row ({}, {})",
                              gen.author_id, gen.method));
    }
    ReportRow row;
    row.author_id = gen.author_id;
    row.method = gen.method;
    row.lexical_mse = mse(gen.profile.lexical, ref->second.lexical);
    row.syntactic_jsd = jsd(gen.profile.syntactic, ref->second.syntactic);
    row.surface_mse = mse(gen.profile.surface, ref->second.surface);
    if (const auto it = extras.find({gen.author_id, gen.method});
        it != extras.end()) {
      const RowExtras& x = it->second;
      row.pct_in_training = x.pct_in_training;
      row.n_names = x.n_names;
      row.ppl = x.ppl;
      row.ppl_base = x.ppl_base;
      row.cosine = x.cosine;
      row.accuracy = x.accuracy;
      if (x.ppl && x.ppl_base) {
        row.ppl_reduction_pct = ppl_reduction(*x.ppl_base, *x.ppl);
      }
    }
    report.rows.push_back(std::move(row));
  }
  report.averages = macro_averages(report.rows);
  metadata["jsd_log_base"] = 2;
  metadata["averaging"] = "macro";
  report.metadata = std::move(metadata);
  return report;
}

std::string render_csv(const AlignmentReport& report) {
  std::string out = "# stylekit alignment report v1\n";
  out += "# metadata " + report.metadata.dump() + "\n";
  const auto& cols = report_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += cols[i];
  }
  out.push_back('\n');
  for (const auto& r : report.rows) out += csv_row(r);
  for (const auto& r : report.averages) out += csv_row(r);
  return out;
}

nlohmann::ordered_json to_json(const AlignmentReport& report) {
  nlohmann::ordered_json j;
  j["metadata"] = report.metadata;
  j["columns"] = report_columns();
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) j["rows"].push_back(row_json(r));
  j["averages"] = nlohmann::ordered_json::array();
  for (const auto& r : report.averages) j["averages"].push_back(row_json(r));
  return j;
}

AlignmentReport report_from_json(const nlohmann::ordered_json& j) {
  try {
    AlignmentReport report;
    report.metadata = j.value("metadata", nlohmann::ordered_json::object());
    for (const auto& r : j.at("rows")) report.rows.push_back(row_from_json(r));
    if (j.contains("averages")) {
      for (const auto& r : j.at("averages")) {
        report.averages.push_back(row_from_json(r));
      }
    } else {
      report.averages = macro_averages(report.rows);
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidInput,
                fmt::format("malformed report JSON: {}", e.what()));
  }
}

std::string render_svg(const AlignmentReport& report) {
  std::vector<Bar> reductions;
  std::vector<Bar> cosines;
  for (const auto& r : report.rows) {
    if (r.ppl_reduction_pct) {
      reductions.push_back({r.author_id, *r.ppl_reduction_pct});
    }
    if (r.cosine) cosines.push_back({r.author_id + " " + r.method, *r.cosine});
  }
  constexpr double kWidth = 720;
  std::string body;
  double y = 0;
  y += bar_panel(body, "PPL reduction after finetuning (%)", reductions, y,
                 kWidth, 1);
  y += bar_panel(body, "Average cosine similarity to author embedding",
                 cosines, y, kWidth, 2);
  return fmt::format(
             "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" "
             "height=\"{:.0f}\" viewBox=\"0 0 {:.0f} {:.0f}\">\n",
             kWidth, y, kWidth, y) +
         "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" + body +
         "</svg>\n";
}

}  // namespace stylekit::metrics
