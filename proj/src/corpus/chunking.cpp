// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "stylekit/corpus/chunking.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stylekit/error.hpp"
#include "stylekit/io/rng.hpp"

namespace stylekit::corpus {

std::string_view to_string(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kValid: return "valid";
    case Split::kTest: return "test";
  }
  return "train";
}

Split parse_split(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "valid") return Split::kValid;
  if (name == "test") return Split::kTest;
  throw Error(ErrorCode::kInvalidInput, fmt::format("unknown split '{}'", name));
}

std::vector<Chunk> chunk(const TokenStream& stream, std::string_view author_id,
                         std::string_view book_id, Split split,
                         std::size_t chunk_size, bool keep_tail) {
  if (chunk_size == 0) {
    throw Error(ErrorCode::kInvalidInput, "chunk_size must be positive");
  }
  std::vector<Chunk> out;
  const std::size_t n = stream.size();
  for (std::size_t begin = 0, index = 0; begin < n; begin += chunk_size) {
    const std::size_t end = std::min(n, begin + chunk_size);
    if (end - begin < chunk_size && !keep_tail) break;
    Chunk c;
    c.author_id = author_id;
    c.book_id = book_id;
    c.split = split;
    c.index = index++;
    c.tokens.assign(stream.tokens.begin() + static_cast<std::ptrdiff_t>(begin),
                    stream.tokens.begin() + static_cast<std::ptrdiff_t>(end));
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

struct Counts {
  std::size_t train, valid, test;
};

Counts split_counts(const std::string& author, std::size_t n,
                    const std::optional<SplitRatios>& ratios) {
  if (!ratios) {
    if (n < 3) {
      throw Error(ErrorCode::kInsufficientBooks,
                  fmt::format("author '{}' has {} book(s); 3 are needed for "
                              "train/valid/test",
                              author, n));
    }
    return {n - 2, 1, 1};
  }
  const SplitRatios& r = *ratios;
  if (r.train < 0 || r.valid < 0 || r.test < 0 ||
      r.train + r.valid + r.test <= 0) {
    throw Error(ErrorCode::kInvalidConfig, "split ratios must be non-negative "
                                           "with a positive sum");
  }
  const double total = r.train + r.valid + r.test;
  auto share = [&](double ratio) -> std::size_t {
    if (ratio <= 0) return 0;
    const auto k = static_cast<std::size_t>(
        std::llround(ratio / total * static_cast<double>(n)));
    return std::max<std::size_t>(1, k);
  };
  const std::size_t requested =
      (r.train > 0) + (r.valid > 0) + (r.test > 0);
  std::size_t valid = share(r.valid);
  std::size_t test = share(r.test);
  const std::size_t reserve_train = r.train > 0 ? 1 : 0;
  // Shrink the held-out splits toward one book each before giving up.
  while (valid + test + reserve_train > n && (valid > 1 || test > 1)) {
    if (valid >= test && valid > 1) {
      --valid;
    } else {
      --test;
    }
  }
  if (n < requested || valid + test + reserve_train > n) {
    throw Error(ErrorCode::kInsufficientBooks,
                fmt::format("author '{}' has {} book(s); {} split(s) "
                            "requested",
                            author, n, requested));
  }
  std::size_t train = n - valid - test;
  if (r.train <= 0 && train > 0) {
    (r.test > 0 ? test : valid) += train;
    train = 0;
  }
  return {train, valid, test};
}

}  // namespace

SplitAssignment split_books(const std::vector<Document>& documents,
                            std::optional<SplitRatios> ratios,
                            std::uint64_t seed) {
  std::map<std::string, std::vector<std::string>> books;
  for (const auto& d : documents) {
    auto& list = books[d.author_id];
    if (std::find(list.begin(), list.end(), d.book_id) != list.end()) {
      throw Error(ErrorCode::kInvalidInput,
                  fmt::format("duplicate book '{}/{}'", d.author_id, d.book_id));
    }
    list.push_back(d.book_id);
  }

  SplitAssignment out;
  for (auto& [author, ids] : books) {
    std::sort(ids.begin(), ids.end());
    const Counts counts = split_counts(author, ids.size(), ratios);
    io::Rng rng(io::derive_seed(seed, author));
    rng.shuffle(std::span<std::string>(ids));
    std::size_t i = 0;
    for (; i < counts.train; ++i) out[{author, ids[i]}] = Split::kTrain;
    for (std::size_t k = 0; k < counts.valid; ++k, ++i) {
      out[{author, ids[i]}] = Split::kValid;
    }
    for (std::size_t k = 0; k < counts.test; ++k, ++i) {
      out[{author, ids[i]}] = Split::kTest;
    }
  }
  return out;
}

std::size_t subsample_count(std::size_t n, double fraction) {
  if (!(fraction > 0.0) || fraction > 1.0) {
    throw Error(ErrorCode::kInvalidFraction,
                fmt::format("fraction {} is outside (0, 1]", fraction));
  }
  // The epsilon keeps products such as 0.7 * 100 = 70.00000000000001 from
  // rounding up to 71.
  const double exact = fraction * static_cast<double>(n);
  const auto k = static_cast<std::size_t>(std::ceil(exact - 1e-9));
  return std::min(n, k);
}

std::vector<Chunk> subsample(const std::vector<Chunk>& train_chunks,
                             double fraction, std::uint64_t seed) {
  const std::size_t n = train_chunks.size();
  const std::size_t k = subsample_count(n, fraction);
  if (k == n) return train_chunks;

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  io::Rng rng(seed);
  // Partial Fisher-Yates: the first k slots hold the sample.
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.below(n - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  std::vector<Chunk> out;
  out.reserve(k);
  for (const std::size_t i : idx) out.push_back(train_chunks[i]);
  return out;
}

}  // namespace stylekit::corpus
