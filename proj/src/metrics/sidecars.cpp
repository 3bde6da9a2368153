// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "stylekit/metrics/sidecars.hpp"

#include <fmt/core.h>

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <numbers>

#include "stylekit/error.hpp"
#include "stylekit/metrics/metrics.hpp"

namespace stylekit::metrics {
namespace {

template <typename Fn>
void for_each_record(const std::string& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      fn(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kInvalidInput,
                  fmt::format("{}:{}: {}", path, lineno, e.what()));
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("{}:{}: {}", path, lineno, e.what()));
    }
  }
}

}  // namespace

UnitKey parse_unit_key(std::string_view id) {
  UnitKey key;
  const auto a = id.find('/');
  key.author_id = std::string(id.substr(0, a));
  if (a == std::string_view::npos) return key;
  const auto rest = id.substr(a + 1);
  const auto b = rest.find('/');
  key.method = std::string(rest.substr(0, b));
  if (b != std::string_view::npos) key.rest = std::string(rest.substr(b + 1));
  return key;
}

std::vector<EmbeddingRecord> read_embeddings(const std::string& path) {
  std::vector<EmbeddingRecord> out;
  for_each_record(path, [&](const nlohmann::json& j) {
    const auto values = j.at("vector").get<std::vector<double>>();
    if (values.empty()) throw Error(ErrorCode::kEmptyInput, "empty vector");
    if (!out.empty() && static_cast<Eigen::Index>(values.size()) !=
                            out.front().vector.size()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  fmt::format("vector of size {} in a file of size {}",
                              values.size(), out.front().vector.size()));
    }
    EmbeddingRecord rec;
    rec.label = j.at("label").get<std::string>();
    rec.vector = Eigen::Map<const Eigen::VectorXd>(
        values.data(), static_cast<Eigen::Index>(values.size()));
    if (!rec.vector.allFinite()) {
      throw Error(ErrorCode::kInvalidInput, "non-finite embedding component");
    }
    out.push_back(std::move(rec));
  });
  return out;
}

std::vector<PredictionRecord> read_predictions(const std::string& path) {
  std::vector<PredictionRecord> out;
  for_each_record(path, [&](const nlohmann::json& j) {
    out.push_back({j.at("unit_id").get<std::string>(),
                   j.at("gold").get<std::string>(),
                   j.at("pred").get<std::string>()});
  });
  return out;
}

std::vector<NllDump> read_nll_dumps(const std::string& path) {
  std::vector<NllDump> out;
  for_each_record(path, [&](const nlohmann::json& j) {
    NllDump dump;
    dump.unit_id = j.at("unit_id").get<std::string>();
    const std::string base = j.value("log_base", "e");
    double scale = 1.0;
    if (base == "2") {
      scale = std::numbers::ln2;
    } else if (base != "e") {
      throw Error(ErrorCode::kInvalidInput,
                  fmt::format("unsupported log_base '{}'", base));
    }
    dump.nlls = j.at("nlls").get<std::vector<double>>();
    for (double& x : dump.nlls) {
      if (!std::isfinite(x) || x < 0) {
        throw Error(ErrorCode::kInvalidInput,
                    fmt::format("NLL {} in unit '{}'", x, dump.unit_id));
      }
      x *= scale;
    }
    out.push_back(std::move(dump));
  });
  return out;
}

std::vector<Generation> read_generations(const std::string& path) {
  std::vector<Generation> out;
  for_each_record(path, [&](const nlohmann::json& j) {
    Generation g;
    g.gen_id = j.at("gen_id").get<std::string>();
    g.author_id = j.at("author_id").get<std::string>();
    g.method = j.at("method").get<std::string>();
    g.prompt_id = j.value("prompt_id", "");
    g.text = j.at("text").get<std::string>();
    out.push_back(std::move(g));
  });
  return out;
}

std::map<RowKey, double> mean_cosine_by_row(
    const std::vector<EmbeddingRecord>& references,
    const std::vector<EmbeddingRecord>& generations) {
  std::map<std::string, std::vector<Eigen::VectorXd>> by_author;
  for (const auto& r : references) by_author[r.label].push_back(r.vector);
  std::map<std::string, Eigen::VectorXd> centroids;
  for (const auto& [author, vectors] : by_author) {
    centroids[author] = average_embedding<double>(vectors);
  }

  std::map<RowKey, std::pair<double, std::size_t>> sums;
  for (const auto& g : generations) {
    const UnitKey key = parse_unit_key(g.label);
    const auto it = centroids.find(key.author_id);
    if (it == centroids.end()) {
      throw Error(ErrorCode::kUnknownAuthor,
                  fmt::format("no reference embeddings for author of '{}'",
                              g.label));
    }
    auto& [sum, n] = sums[{key.author_id, key.method}];
    sum += cosine(g.vector, it->second);
    ++n;
  }
  std::map<RowKey, double> out;
  for (const auto& [key, acc] : sums) {
    out[key] = acc.first / static_cast<double>(acc.second);
  }
  return out;
}

std::map<RowKey, double> accuracy_by_row(
    const std::vector<PredictionRecord>& predictions,
    const std::vector<std::string>& labels) {
  std::map<std::string, std::pair<std::vector<std::string>,
                                  std::vector<std::string>>>
      by_method;
  for (const auto& p : predictions) {
    auto& [gold, pred] = by_method[parse_unit_key(p.unit_id).method];
    gold.push_back(p.gold);
    pred.push_back(p.pred);
  }
  std::map<RowKey, double> out;
  for (const auto& [method, pair] : by_method) {
    const auto stats = classification_stats(pair.first, pair.second, labels);
    for (Eigen::Index a = 0; a < stats.confusion.rows(); ++a) {
      const int total = stats.confusion.row(a).sum();
      if (total == 0) continue;
      out[{stats.labels[static_cast<std::size_t>(a)], method}] =
          static_cast<double>(stats.confusion(a, a)) / total;
    }
  }
  return out;
}

std::map<RowKey, double> perplexity_by_row(const std::vector<NllDump>& dumps,
                                           bool by_method) {
  std::map<RowKey, std::vector<double>> pooled;
  for (const auto& d : dumps) {
    const UnitKey key = parse_unit_key(d.unit_id);
    auto& v = pooled[{key.author_id, by_method ? key.method : std::string()}];
    v.insert(v.end(), d.nlls.begin(), d.nlls.end());
  }
  std::map<RowKey, double> out;
  for (const auto& [key, nlls] : pooled) out[key] = perplexity(nlls);
  return out;
}

}  // namespace stylekit::metrics
