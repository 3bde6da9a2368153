// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "stylekit/annotate/annotator.hpp"
#include "stylekit/annotate/lexicons.hpp"
#include "stylekit/corpus/chunking.hpp"
#include "stylekit/corpus/document.hpp"
#include "stylekit/corpus/prompts.hpp"
#include "stylekit/corpus/tokenizer.hpp"
#include "stylekit/text/utf8.hpp"
#include "test_util.hpp"

#include <fmt/core.h>

namespace stylekit::corpus {
namespace {

using Tokens = std::vector<std::string>;

std::string join_words(const std::vector<std::string>& words, std::size_t k) {
  std::string s;
  for (std::size_t i = 0; i < k; ++i) s += (i ? " " : "") + words[i];
  return s;
}

std::vector<std::string> whitespace_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> w;
  for (std::string x; in >> x;) w.push_back(x);
  return w;
}

TEST(Utf8, ValidityAndFolding) {
  EXPECT_TRUE(text::is_valid_utf8("caf\xc3\xa9"));
  EXPECT_FALSE(text::is_valid_utf8("\xff"));
  EXPECT_FALSE(text::is_valid_utf8("\xc3"));
  EXPECT_EQ(text::fold_case("\xc3\x80" "B"), "\xc3\xa0" "b");
  EXPECT_TRUE(text::is_all_punct("\xe2\x80\x94"));  // em dash
  EXPECT_EQ(text::count_letters("don't"), 4u);
}

TEST(Ingest, StripsBetweenMarkers) {
  const std::string raw =
      "Header junk\r\n*** START OF THE PROJECT GUTENBERG EBOOK X ***\r\n"
      "Body line one.\r\nBody line two.\r\n*** END OF THE PROJECT GUTENBERG "
      "EBOOK X ***\r\nLicense";
  Diagnostics diags;
  const auto doc = ingest_text(raw, "PGW", "b1", true, &diags);
  EXPECT_EQ(doc.text, "Body line one.\nBody line two.");
  EXPECT_TRUE(diags.empty());
}

TEST(Ingest, NoMarkersWarnsAndKeepsText) {
  Diagnostics diags;
  const auto doc = ingest_text("Plain text.", "VW", "b", true, &diags);
  EXPECT_EQ(doc.text, "Plain text.");
  ASSERT_EQ(diags.size(), 1u);
  EXPECT_EQ(diags[0].code, ErrorCode::kMalformedBoilerplate);
}

TEST(Ingest, SingleMarkerWarns) {
  Diagnostics diags;
  const auto doc =
      ingest_text("*** START OF IT ***\nText.", "VW", "b", true, &diags);
  EXPECT_NE(doc.text.find("Text."), std::string::npos);
  ASSERT_EQ(diags.size(), 1u);
  EXPECT_EQ(diags[0].code, ErrorCode::kMalformedBoilerplate);
}

TEST(Ingest, Errors) {
  EXPECT_STYLEKIT_ERROR(ingest_text("", "A", "b", true), ErrorCode::kEmptyDocument);
  EXPECT_STYLEKIT_ERROR(ingest_text("*** START OF X ***\n \n*** END OF X ***",
                                    "A", "b", true),
                        ErrorCode::kEmptyDocument);
  EXPECT_STYLEKIT_ERROR(ingest_text("bad \xff byte", "A", "b", false),
                        ErrorCode::kInvalidEncoding);
}

TEST(Tokenize, Examples) {
  EXPECT_EQ(tokenize("I came, I saw.").tokens,
            (Tokens{"I", "came", ",", "I", "saw", "."}));
  EXPECT_EQ(tokenize("don't").tokens, Tokens{"don't"});
  EXPECT_EQ(tokenize("a--b").tokens, (Tokens{"a", "--", "b"}));
  EXPECT_EQ(tokenize("(\"Yes!\")").tokens,
            (Tokens{"(", "\"", "Yes", "!", "\"", ")"}));
  EXPECT_EQ(tokenize("Wait...").tokens, (Tokens{"Wait", "..."}));
  EXPECT_TRUE(tokenize(" \n\t").empty());
}

TEST(Tokenize, OffsetsReproduceSource) {
  const std::string text =
      "\xe2\x80\x9cWell,\xe2\x80\x9d said Mrs. Dalloway\xe2\x80\x94quite "
      "so; yes:  (perhaps) it's 3.5 o'clock... Fine!";
  const auto stream = tokenize(text);
  ASSERT_EQ(stream.tokens.size(), stream.offsets.size());
  std::size_t prev = 0;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    const auto [b, e] = stream.offsets[i];
    EXPECT_LT(b, e);
    EXPECT_GE(b, prev);
    EXPECT_EQ(text.substr(b, e - b), stream.tokens[i]);
    prev = e;
  }
}

TEST(Tokenize, SidecarMismatchCarriesIndex) {
  const std::string text = "Hi there.";
  SidecarRecord ok{"b", {"Hi", "there", "."}, {{0, 2}, {3, 8}, {8, 9}}};
  EXPECT_EQ(from_sidecar(text, ok).tokens, ok.tokens);
  SidecarRecord bad = ok;
  bad.tokens[1] = "thera";
  try {
    from_sidecar(text, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAnnotationMismatch);
    EXPECT_EQ(e.index(), 1u);
  }
}

TEST(Detokenize, Spacing) {
  EXPECT_EQ(detokenize(tokenize("I don't believe this, said John").tokens),
            "I don't believe this, said John");
  EXPECT_EQ(detokenize(Tokens{"He", "said", "\"", "go", "\"", "."}),
            "He said \"go\".");
  EXPECT_EQ(detokenize(Tokens{"a", "--", "b"}), "a--b");
}

TokenStream n_tokens(std::size_t n) {
  TokenStream s;
  for (std::size_t i = 0; i < n; ++i) {
    s.tokens.push_back("w" + std::to_string(i));
    s.offsets.push_back({i * 10, i * 10 + 2});
  }
  return s;
}

TEST(Chunk, Counts) {
  EXPECT_EQ(chunk(n_tokens(512), "A", "b", Split::kTrain).size(), 2u);
  EXPECT_EQ(chunk(n_tokens(600), "A", "b", Split::kTrain).size(), 2u);
  EXPECT_EQ(chunk(n_tokens(100), "A", "b", Split::kTrain).size(), 0u);
  const auto kept = chunk(n_tokens(600), "A", "b", Split::kTrain, 256, true);
  ASSERT_EQ(kept.size(), 3u);
  EXPECT_EQ(kept[2].tokens.size(), 88u);
  EXPECT_EQ(kept[1].index, 1u);
  EXPECT_EQ(kept[1].tokens.front(), "w256");
}

TEST(Chunk, Totality) {
  for (std::size_t n : {0u, 1u, 255u, 256u, 257u, 1000u}) {
    for (std::size_t size : {1u, 7u, 256u}) {
      std::size_t total = 0;
      for (const auto& c : chunk(n_tokens(n), "A", "b", Split::kTest, size)) {
        EXPECT_EQ(c.tokens.size(), size);
        total += c.tokens.size();
      }
      EXPECT_EQ(total, size * (n / size));
    }
  }
}

std::vector<Document> books(const std::string& author, int n) {
  std::vector<Document> docs;
  for (int i = 0; i < n; ++i) {
    docs.push_back({author, fmt::format("book{:02}", i), "text", ""});
  }
  return docs;
}

std::map<Split, int> split_counts(const SplitAssignment& a) {
  std::map<Split, int> counts;
  for (const auto& [k, s] : a) ++counts[s];
  return counts;
}

TEST(SplitBooks, RatiosAreRepeatable) {
  const auto docs = books("PGW", 10);
  const SplitRatios r{0.8, 0.1, 0.1};
  const auto a = split_books(docs, r, 7);
  const auto counts = split_counts(a);
  EXPECT_EQ(counts.at(Split::kTrain), 8);
  EXPECT_EQ(counts.at(Split::kValid), 1);
  EXPECT_EQ(counts.at(Split::kTest), 1);
  EXPECT_EQ(a, split_books(docs, r, 7));
}

TEST(SplitBooks, DefaultHoldsOutOneBookEach) {
  const auto a = split_books(books("SR", 5), std::nullopt, 1);
  const auto counts = split_counts(a);
  EXPECT_EQ(counts.at(Split::kTrain), 3);
  EXPECT_EQ(counts.at(Split::kValid), 1);
  EXPECT_EQ(counts.at(Split::kTest), 1);
}

TEST(SplitBooks, TooFewBooks) {
  try {
    split_books(books("JA", 2), SplitRatios{0.8, 0.1, 0.1}, 7);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientBooks);
    EXPECT_NE(std::string(e.what()).find("JA"), std::string::npos);
  }
}

TEST(SplitBooks, PartitionForEverySeed) {
  auto docs = books("A", 6);
  const auto more = books("B", 4);
  docs.insert(docs.end(), more.begin(), more.end());
  for (std::uint64_t seed : {7u, 8u, 9u, 1234u}) {
    const auto a = split_books(docs, std::nullopt, seed);
    EXPECT_EQ(a.size(), docs.size());
    for (const char* author : {"A", "B"}) {
      std::set<Split> seen;
      for (const auto& [k, s] : a) {
        if (k.first == author) seen.insert(s);
      }
      EXPECT_EQ(seen.size(), 3u);
    }
  }
}

TEST(SplitBooks, AuthorAssignmentIndependentOfOthers) {
  const auto alone = split_books(books("A", 6), std::nullopt, 3);
  auto docs = books("A", 6);
  const auto more = books("Z", 5);
  docs.insert(docs.end(), more.begin(), more.end());
  const auto together = split_books(docs, std::nullopt, 3);
  for (const auto& [k, s] : alone) EXPECT_EQ(together.at(k), s);
}

std::vector<Chunk> train_chunks(std::size_t n) {
  std::vector<Chunk> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({"A", "b", Split::kTrain, i, {"t" + std::to_string(i)}});
  }
  return out;
}

TEST(Subsample, CeilingCounts) {
  EXPECT_EQ(subsample(train_chunks(312), 0.35, 1).size(), 110u);
  EXPECT_EQ(subsample_count(312, 0.05), 16u);
  EXPECT_EQ(subsample_count(312, 0.70), 219u);
  EXPECT_EQ(subsample_count(100, 0.7), 70u);
  EXPECT_EQ(subsample_count(10, 0.01), 1u);
}

TEST(Subsample, IdentityAndDeterminism) {
  const auto chunks = train_chunks(50);
  EXPECT_EQ(subsample(chunks, 1.0, 3), chunks);
  const auto a = subsample(chunks, 0.05, 11);
  EXPECT_EQ(a, subsample(chunks, 0.05, 11));
  const auto b = subsample(chunks, 0.35, 11);
  EXPECT_TRUE(std::is_sorted(b.begin(), b.end(), [](const auto& x, const auto& y) {
    return x.index < y.index;
  }));
}

TEST(Subsample, InvalidFraction) {
  const auto chunks = train_chunks(5);
  EXPECT_STYLEKIT_ERROR(subsample(chunks, 0.0, 1), ErrorCode::kInvalidFraction);
  EXPECT_STYLEKIT_ERROR(subsample(chunks, 1.5, 1), ErrorCode::kInvalidFraction);
  EXPECT_STYLEKIT_ERROR(subsample(chunks, -0.1, 1), ErrorCode::kInvalidFraction);
}

Chunk test_chunk(const std::string& author, const std::string& text,
                 std::size_t index = 0) {
  return {author, author + "_book", Split::kTest, index, tokenize(text).tokens};
}

TEST(ContinuationPrompts, PrefixOfSentence) {
  const std::string sentence =
      "It is a truth universally acknowledged, that a single man in "
      "possession of a good fortune must be in want of a wife.";
  const auto words = whitespace_words(sentence);
  const auto lex = annotate::Lexicons::builtin();
  std::set<std::size_t> ks;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    ContinuationOptions opts;
    opts.per_author = 1;
    const auto set =
        build_continuation_prompts({test_chunk("JA", sentence)}, lex, opts, seed);
    ASSERT_EQ(set.prompts.size(), 1u);
    const auto& p = set.prompts[0];
    const std::size_t k = whitespace_words(p.text).size();
    ks.insert(k);
    EXPECT_EQ(p.text, join_words(words, k));
    EXPECT_EQ(p.origin, PromptOrigin::kTestExcerpt);
    EXPECT_EQ(p.author_id, "JA");
  }
  EXPECT_EQ(ks, (std::set<std::size_t>{6, 7, 8}));
  // k = 7 gives the documented example prefix.
  EXPECT_EQ(join_words(words, 7), "It is a truth universally acknowledged, that");
}

TEST(ContinuationPrompts, ShortSentencesNeverEmitted) {
  const auto lex = annotate::Lexicons::builtin();
  std::string text;
  for (int i = 0; i < 20; ++i) text += "We sat by the quiet river. ";
  text += "Too short here. ";
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ContinuationOptions opts;
    opts.per_author = 3;
    const auto set =
        build_continuation_prompts({test_chunk("VW", text)}, lex, opts, seed);
    for (const auto& p : set.prompts) {
      EXPECT_EQ(whitespace_words(p.text).size(), 6u);
    }
  }
  ContinuationOptions opts;
  opts.per_author = 1;
  EXPECT_STYLEKIT_ERROR(
      build_continuation_prompts({test_chunk("VW", "Too short here.")}, lex,
                                 opts, 1),
      ErrorCode::kInsufficientSentences);
}

TEST(ContinuationPrompts, TenAuthorsFiveEach) {
  const auto lex = annotate::Lexicons::builtin();
  std::vector<Chunk> chunks;
  const std::vector<std::string> authors{"SR", "JA", "NH", "MT", "OW",
                                         "CPG", "VW", "VL", "PGW", "GO"};
  for (const auto& a : authors) {
    std::string text;
    for (int i = 0; i < 8; ++i) {
      text += fmt::format("The {} walked slowly along the old road number {}. ",
                          a, i);
    }
    chunks.push_back(test_chunk(a, text));
  }
  const auto set = build_continuation_prompts(chunks, lex, {}, 5);
  EXPECT_EQ(set.prompts.size(), 50u);
  for (const auto& p : set.prompts) {
    const auto n = whitespace_words(p.text).size();
    EXPECT_GE(n, 6u);
    EXPECT_LE(n, 8u);
  }
  EXPECT_EQ(set.prompts, build_continuation_prompts(chunks, lex, {}, 5).prompts);
}

TEST(NamePrompts, DeletesTrailingName) {
  const auto lex = annotate::Lexicons::builtin();
  const auto doc = annotate::annotate(
      tokenize("I don't believe this, said John. The rain kept falling.").tokens,
      lex, "d");
  Diagnostics diags;
  const auto set = build_name_elicitation_prompts({doc}, 1, 3, &diags);
  ASSERT_EQ(set.prompts.size(), 1u);
  EXPECT_EQ(set.prompts[0].text, "I don't believe this, said");
  EXPECT_EQ(set.prompts[0].origin, PromptOrigin::kNameElicitation);
  EXPECT_TRUE(diags.empty());
}

TEST(NamePrompts, ShortfallWarns) {
  const auto lex = annotate::Lexicons::builtin();
  std::string text;
  for (int i = 0; i < 12; ++i) text += "Nothing happened there, said John. ";
  text += "The rain kept falling on the roof. ";
  const auto doc = annotate::annotate(tokenize(text).tokens, lex, "d");
  Diagnostics diags;
  const auto set = build_name_elicitation_prompts({doc}, 50, 3, &diags);
  EXPECT_EQ(set.prompts.size(), 12u);
  ASSERT_EQ(diags.size(), 1u);
  EXPECT_EQ(diags[0].code, ErrorCode::kInsufficientMatches);
  for (const auto& p : set.prompts) {
    EXPECT_EQ(p.text.find("John"), std::string::npos);
  }
  const auto fewer = build_name_elicitation_prompts({doc}, 5, 3, nullptr);
  EXPECT_EQ(fewer.prompts.size(), 5u);
}

}  // namespace
}  // namespace stylekit::corpus
