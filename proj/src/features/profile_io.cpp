// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "stylekit/features/profile_io.hpp"

#include <fmt/core.h>

#include <cmath>
#include <fstream>

#include "stylekit/error.hpp"

namespace stylekit::features {
namespace {

template <typename Vec>
nlohmann::ordered_json array_of(const Vec& v) {
  auto a = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

template <typename Vec>
Vec vector_from(const nlohmann::json& j, const char* key) {
  const auto& a = j.at(key);
  Vec v;
  if (!a.is_array() || static_cast<Eigen::Index>(a.size()) != v.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                fmt::format("profile field '{}' must have {} values", key,
                            v.size()));
  }
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v[i] = a[static_cast<std::size_t>(i)].get<double>();
    if (!std::isfinite(v[i])) {
      throw Error(ErrorCode::kInvalidInput,
                  fmt::format("profile field '{}' is not finite", key));
    }
  }
  return v;
}

}  // namespace

nlohmann::ordered_json to_json(const StyleProfile& p) {
  nlohmann::ordered_json j;
  j["label"] = p.label;
  j["n_sentences"] = p.n_sentences;
  j["lexical"] = array_of(p.lexical);
  j["syntactic"] = array_of(p.syntactic);
  j["surface"] = array_of(p.surface);
  return j;
}

StyleProfile profile_from_json(const nlohmann::json& j) {
  try {
    StyleProfile p;
    p.label = j.at("label").get<std::string>();
    p.n_sentences = j.at("n_sentences").get<std::size_t>();
    p.lexical = vector_from<LexicalVector>(j, "lexical");
    p.syntactic = vector_from<SyntacticDistribution>(j, "syntactic");
    p.surface = vector_from<SurfaceVector>(j, "surface");
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidInput,
                fmt::format("malformed profile: {}", e.what()));
  }
}

std::vector<StyleProfile> read_profiles(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open profiles " + path);
  std::vector<StyleProfile> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(profile_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kInvalidInput,
                  fmt::format("{}:{}: {}", path, lineno, e.what()));
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("{}:{}: {}", path, lineno, e.what()));
    }
  }
  return out;
}

std::string profiles_to_jsonl(const std::vector<StyleProfile>& profiles) {
  std::string out;
  for (const auto& p : profiles) {
    out += to_json(p).dump();
    out.push_back('\n');
  }
  return out;
}

}  // namespace stylekit::features
