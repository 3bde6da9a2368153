// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "stylekit/annotate/external.hpp"

#include <fmt/core.h>

#include <fstream>
#include <nlohmann/json.hpp>

#include "stylekit/error.hpp"

namespace stylekit::annotate {

ExternalAnnotations load_external_annotations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open annotations " + path);

  std::map<std::string, std::map<std::size_t, AnnotatedSentence>> staged;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kInvalidInput,
                  fmt::format("{}:{}: {}", path, lineno, e.what()));
    }
    try {
      AnnotatedSentence sentence;
      for (const auto& tok : j.at("tokens")) {
        const auto pos_name = tok.at("pos").get<std::string>();
        const auto tag = parse_tag(pos_name);
        if (!tag) {
          throw Error(ErrorCode::kUnknownTag,
                      fmt::format("{}:{}: unknown tag '{}'", path, lineno,
                                  pos_name));
        }
        AnnotatedToken t{tok.at("t").get<std::string>(), *tag,
                         tok.value("person", false)};
        if (t.is_person && *tag != PosTag::kPropn && *tag != PosTag::kNoun &&
            *tag != PosTag::kOther) {
          throw Error(ErrorCode::kInvalidInput,
                      fmt::format("{}:{}: person flag on {} token '{}'", path,
                                  lineno, pos_name, t.text));
        }
        sentence.tokens.push_back(std::move(t));
      }
      if (j.contains("category")) {
        const auto name = j.at("category").get<std::string>();
        sentence.category = parse_category(name);
        if (!sentence.category) {
          throw Error(ErrorCode::kInvalidInput,
                      fmt::format("{}:{}: unknown category '{}'", path, lineno,
                                  name));
        }
      }
      const auto book = j.at("book_id").get<std::string>();
      const auto index = j.at("sent_index").get<std::size_t>();
      auto [it, inserted] = staged[book].emplace(index, std::move(sentence));
      if (!inserted) {
        throw Error(ErrorCode::kInvalidInput,
                    fmt::format("{}:{}: duplicate sentence {} for book '{}'",
                                path, lineno, index, book));
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kInvalidInput,
                  fmt::format("{}:{}: {}", path, lineno, e.what()));
    }
  }

  ExternalAnnotations out;
  for (auto& [book, sentences] : staged) {
    auto& list = out[book];
    for (auto& [index, sentence] : sentences) list.push_back(std::move(sentence));
  }
  return out;
}

AnnotatedDocument apply_external(std::span<const std::string> tokens,
                                 const std::vector<AnnotatedSentence>& external,
                                 std::string label, bool allow_prefix) {
  AnnotatedDocument doc;
  doc.label = std::move(label);
  doc.source = AnnotationSource::kExternal;

  std::size_t pos = 0;
  for (const auto& sentence : external) {
    if (pos == tokens.size() && allow_prefix) break;
    AnnotatedSentence kept;
    kept.category = sentence.category;
    for (const auto& tok : sentence.tokens) {
      if (pos == tokens.size()) {
        if (allow_prefix) break;
        throw Error(ErrorCode::kAnnotationMismatch,
                    fmt::format("{}: annotations have more tokens than the "
                                "text ({})",
                                doc.label, tokens.size()),
                    pos);
      }
      if (tok.text != tokens[pos]) {
        throw Error(ErrorCode::kAnnotationMismatch,
                    fmt::format("{}: token {} is '{}' in the annotations but "
                                "'{}' in the text",
                                doc.label, pos, tok.text, tokens[pos]),
                    pos);
      }
      kept.tokens.push_back(tok);
      ++pos;
    }
    if (kept.tokens.size() < sentence.tokens.size()) kept.category.reset();
    if (!kept.tokens.empty()) doc.sentences.push_back(std::move(kept));
  }
  if (pos != tokens.size()) {
    throw Error(ErrorCode::kAnnotationMismatch,
                fmt::format("{}: annotations cover {} of {} tokens", doc.label,
                            pos, tokens.size()),
                pos);
  }
  return doc;
}

}  // namespace stylekit::annotate
