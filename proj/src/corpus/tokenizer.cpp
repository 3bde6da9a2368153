// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "stylekit/corpus/tokenizer.hpp"

#include <fmt/core.h>

#include <fstream>
#include <nlohmann/json.hpp>

#include "stylekit/error.hpp"
#include "stylekit/text/utf8.hpp"

namespace stylekit::corpus {
namespace {

using text::CodePoint;

bool is_dash_like(char32_t c) { return c == 0x2013 || c == 0x2014; }

class Splitter {
 public:
  Splitter(std::string_view source, TokenStream* out)
      : source_(source), out_(out) {}

  void emit(std::size_t begin, std::size_t end) {
    out_->tokens.emplace_back(source_.substr(begin, end - begin));
    out_->offsets.emplace_back(begin, end);
  }

  // Emits [first, last) as runs of identical punctuation characters.
  void emit_punct_runs(const std::vector<CodePoint>& cps, std::size_t first,
                       std::size_t last) {
    std::size_t i = first;
    while (i < last) {
      std::size_t j = i + 1;
      while (j < last && cps[j].value == cps[i].value) ++j;
      emit(cps[i].begin, cps[j - 1].end);
      i = j;
    }
  }

  // Length of an internal break sequence starting at i, or 0.
  static std::size_t break_length(const std::vector<CodePoint>& cps,
                                  std::size_t i, std::size_t last) {
    const char32_t c = cps[i].value;
    if (is_dash_like(c) || c == 0x2026) {
      std::size_t j = i + 1;
      while (j < last && cps[j].value == c) ++j;
      return j - i;
    }
    if (c == U'-' || c == U'.') {
      std::size_t j = i + 1;
      while (j < last && cps[j].value == c) ++j;
      return j - i >= 2 ? j - i : 0;
    }
    return 0;
  }

  void word(const std::vector<CodePoint>& cps, std::size_t first,
            std::size_t last) {
    std::size_t b = first;
    while (b < last && text::is_punct(cps[b].value)) ++b;
    if (b == last) {
      emit_punct_runs(cps, first, last);
      return;
    }
    std::size_t e = last;
    while (e > b && text::is_punct(cps[e - 1].value)) --e;

    emit_punct_runs(cps, first, b);
    std::size_t piece = b;
    std::size_t i = b;
    while (i < e) {
      const std::size_t n = break_length(cps, i, e);
      if (n == 0) {
        ++i;
        continue;
      }
      if (i > piece) word(cps, piece, i);
      emit_punct_runs(cps, i, i + n);
      i += n;
      piece = i;
    }
    if (piece == b) {
      emit(cps[b].begin, cps[e - 1].end);  // no internal break
    } else if (e > piece) {
      word(cps, piece, e);
    }
    emit_punct_runs(cps, e, last);
  }

 private:
  std::string_view source_;
  TokenStream* out_;
};

bool closes(std::string_view t) {
  static constexpr std::string_view kClosing[] = {
      ",", ".", ";", ":", "!", "?", ")", "]", "}", "”", "’",
      "…", "'", "%"};
  for (auto c : kClosing) {
    if (t.starts_with(c) && text::is_all_punct(t)) return true;
  }
  return false;
}

bool opens(std::string_view t) {
  return t == "(" || t == "[" || t == "{" || t == "“" || t == "‘";
}

bool is_dash_token(std::string_view t) {
  if (t.empty() || !text::is_all_punct(t)) return false;
  for (const auto& cp : text::decode(t)) {
    if (cp.value != U'-' && !is_dash_like(cp.value)) return false;
  }
  return true;
}

}  // namespace

std::string_view to_string(TokenizerScheme scheme) {
  return scheme == TokenizerScheme::kExternal ? "external" : "whitespace_punct";
}

TokenizerScheme parse_tokenizer_scheme(std::string_view name) {
  if (name == "whitespace_punct") return TokenizerScheme::kWhitespacePunct;
  if (name == "external") return TokenizerScheme::kExternal;
  throw Error(ErrorCode::kInvalidConfig,
              fmt::format("unknown tokenizer scheme '{}'", name));
}

TokenStream tokenize(std::string_view source) {
  TokenStream out;
  const auto cps = text::decode(source);
  Splitter splitter(source, &out);
  std::size_t i = 0;
  while (i < cps.size()) {
    if (text::is_space(cps[i].value)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < cps.size() && !text::is_space(cps[j].value)) ++j;
    splitter.word(cps, i, j);
    i = j;
  }
  return out;
}

std::map<std::string, SidecarRecord> read_sidecar(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open sidecar " + path);
  std::map<std::string, SidecarRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      SidecarRecord rec;
      rec.book_id = j.at("book_id").get<std::string>();
      rec.tokens = j.at("tokens").get<std::vector<std::string>>();
      for (const auto& o : j.at("offsets")) {
        rec.offsets.emplace_back(o.at(0).get<std::size_t>(),
                                 o.at(1).get<std::size_t>());
      }
      records[rec.book_id] = std::move(rec);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kInvalidInput,
                  fmt::format("{}:{}: {}", path, lineno, e.what()));
    }
  }
  return records;
}

TokenStream from_sidecar(std::string_view source, const SidecarRecord& record) {
  if (record.tokens.size() != record.offsets.size()) {
    const std::size_t n = std::min(record.tokens.size(), record.offsets.size());
    throw Error(ErrorCode::kAnnotationMismatch,
                fmt::format("{}: {} tokens but {} offsets", record.book_id,
                            record.tokens.size(), record.offsets.size()),
                n);
  }
  std::size_t prev_end = 0;
  for (std::size_t i = 0; i < record.tokens.size(); ++i) {
    const auto [b, e] = record.offsets[i];
    if (b >= e || e > source.size() || b < prev_end) {
      throw Error(ErrorCode::kAnnotationMismatch,
                  fmt::format("{}: bad offsets [{},{}] at token {}",
                              record.book_id, b, e, i),
                  i);
    }
    if (source.substr(b, e - b) != record.tokens[i]) {
      throw Error(ErrorCode::kAnnotationMismatch,
                  fmt::format("{}: token {} '{}' differs from source slice",
                              record.book_id, i, record.tokens[i]),
                  i);
    }
    prev_end = e;
  }
  return TokenStream{record.tokens, record.offsets};
}

std::string detokenize(std::span<const std::string> tokens) {
  std::string out;
  bool attach_next = true;
  bool open_quote = false;
  for (const auto& t : tokens) {
    bool attach = attach_next;
    attach_next = false;
    if (t == "\"") {
      if (open_quote) {
        attach = true;
      } else {
        attach_next = true;
      }
      open_quote = !open_quote;
    } else if (closes(t)) {
      attach = true;
    } else if (opens(t)) {
      attach_next = true;
    } else if (is_dash_token(t) && t.size() > 1) {
      attach = true;
      attach_next = true;
    }
    if (!out.empty() && !attach) out.push_back(' ');
    out += t;
  }
  return out;
}

}  // namespace stylekit::corpus
