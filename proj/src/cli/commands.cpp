// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "stylekit/cli/commands.hpp"

#include <fmt/core.h>

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "stylekit/adapters/lora.hpp"
#include "stylekit/adapters/masking.hpp"
#include "stylekit/adapters/recipe.hpp"
#include "stylekit/adapters/safetensors.hpp"
#include "stylekit/annotate/annotator.hpp"
#include "stylekit/annotate/external.hpp"
#include "stylekit/annotate/lexicons.hpp"
#include "stylekit/corpus/document.hpp"
#include "stylekit/corpus/prompts.hpp"
#include "stylekit/corpus/tokenizer.hpp"
#include "stylekit/error.hpp"
#include "stylekit/features/features.hpp"
#include "stylekit/features/profile_io.hpp"
#include "stylekit/io/files.hpp"
#include "stylekit/io/rng.hpp"
#include "stylekit/metrics/names.hpp"
#include "stylekit/metrics/report.hpp"
#include "stylekit/metrics/sidecars.hpp"

namespace stylekit::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

nlohmann::ordered_json chunk_to_json(const corpus::Chunk& chunk) {
  ordered_json j;
  j["author_id"] = chunk.author_id;
  j["book_id"] = chunk.book_id;
  j["split"] = std::string(corpus::to_string(chunk.split));
  j["index"] = chunk.index;
  j["tokens"] = chunk.tokens;
  return j;
}

corpus::Chunk chunk_from_json(const nlohmann::json& j) {
  corpus::Chunk c;
  try {
    c.author_id = j.at("author_id").get<std::string>();
    c.book_id = j.at("book_id").get<std::string>();
    c.split = corpus::parse_split(j.at("split").get<std::string>());
    c.index = j.at("index").get<std::size_t>();
    c.tokens = j.at("tokens").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, fmt::format("chunk record: {}", e.what()));
  }
  return c;
}

std::vector<corpus::Chunk> read_chunk_store(const std::string& path) {
  std::istringstream in(io::read_file(path));
  std::vector<corpus::Chunk> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(chunk_from_json(json::parse(line)));
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kInvalidInput,
                  fmt::format("{}:{}: {}", path, line_no, e.what()));
    }
  }
  return out;
}

namespace {

struct Globals {
  std::uint64_t seed = kDefaultSeed;
  std::string config;
  std::string out = "out";
};

struct Io {
  std::ostream& out;
  std::ostream& err;
};

std::string dump_json(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string jsonl(const std::vector<ordered_json>& records) {
  std::string s;
  for (const auto& r : records) s += r.dump() + "\n";
  return s;
}

void report_diagnostics(const Diagnostics& diags, std::ostream& err) {
  for (const auto& d : diags) {
    err << "warning: " << to_string(d.code) << ": " << d.message << "\n";
  }
}

ordered_json run_metadata(const std::string& command, const Globals& g,
                          ordered_json inputs) {
  ordered_json m;
  m["tool"] = "stylekit";
  m["version"] = kVersion;
  m["command"] = command;
  m["seed"] = g.seed;
  m["inputs"] = std::move(inputs);
  return m;
}

annotate::Lexicons load_lexicons(const std::string& dir) {
  auto lex = annotate::Lexicons::builtin();
  if (!dir.empty()) lex.load_directory(dir);
  return lex;
}

std::vector<corpus::Chunk> sorted_chunks(std::vector<corpus::Chunk> chunks) {
  std::sort(chunks.begin(), chunks.end(), [](const auto& a, const auto& b) {
    return std::tie(a.author_id, a.book_id, a.index) <
           std::tie(b.author_id, b.book_id, b.index);
  });
  return chunks;
}

std::vector<annotate::AnnotatedDocument> annotate_all(
    const std::vector<corpus::Chunk>& chunks, const annotate::Lexicons& lex,
    const annotate::ExternalAnnotations* external) {
  std::vector<const corpus::Chunk*> ptrs;
  for (const auto& c : chunks) ptrs.push_back(&c);
  return features::annotate_chunks(ptrs, lex, external);
}

ordered_json prompt_to_json(const corpus::Prompt& p) {
  ordered_json j;
  j["text"] = p.text;
  j["origin"] = std::string(corpus::to_string(p.origin));
  if (p.author_id) j["author_id"] = *p.author_id;
  j["source"] = p.source;
  return j;
}

// ---------------------------------------------------------------- ingest

struct IngestArgs {
  std::string corpus_root;
  std::vector<std::string> authors;
  std::size_t chunk_size = corpus::kDefaultChunkSize;
  bool keep_tail = false;
  bool no_strip = false;
  std::vector<double> ratios;
  double subsample = 1.0;
  std::string tokens_sidecar;
  std::string prompts_file;
  std::size_t prompts_per_author = 5;
  std::size_t name_prompts = 0;
  std::string lexicons;
};

int cmd_ingest(const IngestArgs& a, const Globals& g, Io io) {
  const fs::path root(a.corpus_root);
  if (a.corpus_root.empty() || !fs::is_directory(root)) {
    throw Error(ErrorCode::kInvalidInput,
                "corpus root is not a directory: " + a.corpus_root);
  }
  std::vector<std::string> authors = a.authors;
  if (authors.empty()) {
    for (const auto& entry : fs::directory_iterator(root)) {
      if (entry.is_directory()) authors.push_back(entry.path().filename());
    }
  }
  std::sort(authors.begin(), authors.end());
  authors.erase(std::unique(authors.begin(), authors.end()), authors.end());
  if (authors.empty()) throw Error(ErrorCode::kInvalidInput, "no author directories");
  for (const auto& author : authors) {
    if (!fs::is_directory(root / author)) {
      throw Error(ErrorCode::kInvalidInput,
                  "missing author directory: " + (root / author).string());
    }
  }
  if (a.chunk_size == 0) throw Error(ErrorCode::kInvalidConfig, "chunk size must be positive");

  Diagnostics diags;
  std::vector<corpus::Document> docs;
  for (const auto& author : authors) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(root / author)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      const std::string rel = (fs::path(author) / file.filename()).string();
      try {
        auto doc = corpus::ingest_text(io::read_file(file), author,
                                       file.stem().string(), !a.no_strip, &diags);
        doc.provenance = rel;
        docs.push_back(std::move(doc));
      } catch (const Error& e) {
        throw Error(e.code(), rel + ": " + e.what());
      }
    }
  }

  std::map<std::string, corpus::SidecarRecord> sidecar;
  if (!a.tokens_sidecar.empty()) sidecar = corpus::read_sidecar(a.tokens_sidecar);

  std::optional<corpus::SplitRatios> ratios;
  if (!a.ratios.empty()) {
    if (a.ratios.size() != 3) {
      throw Error(ErrorCode::kInvalidConfig, "--ratios takes train,valid,test");
    }
    ratios = corpus::SplitRatios{a.ratios[0], a.ratios[1], a.ratios[2]};
  }
  const auto assignment = corpus::split_books(docs, ratios, g.seed);

  std::map<std::string, std::vector<corpus::Chunk>> by_author;
  for (const auto& doc : docs) {
    corpus::TokenStream stream;
    if (!a.tokens_sidecar.empty()) {
      const auto it = sidecar.find(doc.book_id);
      if (it == sidecar.end()) {
        throw Error(ErrorCode::kAnnotationMismatch,
                    "no pre-tokenized record for book " + doc.book_id);
      }
      stream = corpus::from_sidecar(doc.text, it->second);
    } else {
      stream = corpus::tokenize(doc.text);
    }
    const auto split = assignment.at({doc.author_id, doc.book_id});
    auto chunks = corpus::chunk(stream, doc.author_id, doc.book_id, split,
                                a.chunk_size, a.keep_tail);
    auto& dest = by_author[doc.author_id];
    dest.insert(dest.end(), std::make_move_iterator(chunks.begin()),
                std::make_move_iterator(chunks.end()));
  }

  std::vector<corpus::Chunk> all;
  for (auto& [author, chunks] : by_author) {
    chunks = sorted_chunks(std::move(chunks));
    if (a.subsample != 1.0) {
      std::vector<corpus::Chunk> train, rest;
      for (auto& c : chunks) {
        (c.split == corpus::Split::kTrain ? train : rest).push_back(std::move(c));
      }
      train = corpus::subsample(train, a.subsample,
                                io::derive_seed(g.seed, "subsample/" + author));
      chunks = std::move(train);
      chunks.insert(chunks.end(), rest.begin(), rest.end());
      chunks = sorted_chunks(std::move(chunks));
    }
    all.insert(all.end(), chunks.begin(), chunks.end());
  }

  const auto lex = load_lexicons(a.lexicons);
  ordered_json inputs;
  inputs["corpus_root"] = a.corpus_root;
  inputs["authors"] = authors;
  inputs["chunk_size"] = a.chunk_size;
  inputs["keep_tail"] = a.keep_tail;
  inputs["strip_boilerplate"] = !a.no_strip;
  inputs["ratios"] = a.ratios;
  inputs["subsample"] = a.subsample;
  inputs["tokenizer"] = std::string(corpus::to_string(
      a.tokens_sidecar.empty() ? corpus::TokenizerScheme::kWhitespacePunct
                               : corpus::TokenizerScheme::kExternal));
  inputs["tokens_sidecar"] = a.tokens_sidecar;
  inputs["prompts_file"] = a.prompts_file;
  inputs["lexicons"] = lex.sources;
  const auto meta = run_metadata("ingest", g, inputs);

  io::OutputSet outputs;
  const fs::path out(g.out);
  std::vector<ordered_json> records;
  for (const auto& c : all) records.push_back(chunk_to_json(c));
  outputs.add(out / "chunks.jsonl", jsonl(records));

  for (const auto& author : authors) {
    ordered_json manifest;
    manifest["author_id"] = author;
    ordered_json books = ordered_json::object();
    std::map<std::string, std::size_t> counts{{"train", 0}, {"valid", 0}, {"test", 0}};
    for (const auto& [key, split] : assignment) {
      if (key.first != author) continue;
      books[key.second] = std::string(corpus::to_string(split));
    }
    for (const auto& c : by_author[author]) ++counts[std::string(corpus::to_string(c.split))];
    manifest["books"] = books;
    manifest["chunks"] = {{"train", counts["train"]},
                          {"valid", counts["valid"]},
                          {"test", counts["test"]}};
    manifest["metadata"] = meta;
    outputs.add(out / "manifests" / (author + ".json"), dump_json(manifest));
  }

  std::vector<ordered_json> prompt_records;
  if (!a.prompts_file.empty()) {
    for (const auto& p : corpus::load_prompt_file(a.prompts_file).prompts) {
      prompt_records.push_back(prompt_to_json(p));
    }
  }
  if (a.prompts_per_author > 0) {
    std::vector<corpus::Chunk> test;
    for (const auto& c : all) {
      if (c.split == corpus::Split::kTest) test.push_back(c);
    }
    corpus::ContinuationOptions opts;
    opts.per_author = a.prompts_per_author;
    opts.authors = authors;
    for (const auto& p :
         corpus::build_continuation_prompts(test, lex, opts, g.seed).prompts) {
      prompt_records.push_back(prompt_to_json(p));
    }
  }
  outputs.add(out / "prompts.jsonl", jsonl(prompt_records));

  if (a.name_prompts > 0) {
    std::vector<corpus::Chunk> train;
    for (const auto& c : all) {
      if (c.split == corpus::Split::kTrain) train.push_back(c);
    }
    const auto docs_annotated = annotate_all(train, lex, nullptr);
    std::vector<ordered_json> name_records;
    for (const auto& p : corpus::build_name_elicitation_prompts(
                             docs_annotated, a.name_prompts, g.seed, &diags)
                             .prompts) {
      name_records.push_back(prompt_to_json(p));
    }
    outputs.add(out / "name_prompts.jsonl", jsonl(name_records));
  }
  outputs.add(out / "ingest.json", dump_json(meta));

  report_diagnostics(diags, io.err);
  outputs.commit();
  io.out << fmt::format("ingested {} books, {} chunks, {} authors\n",
                        docs.size(), all.size(), authors.size());
  return kExitOk;
}

// ---------------------------------------------------------------- profile

struct ProfileArgs {
  std::string chunks;
  std::string generations;
  std::string annotations;
  std::string lexicons;
};

int cmd_profile(const ProfileArgs& a, const Globals& g, Io io) {
  const auto lex = load_lexicons(a.lexicons);
  std::optional<annotate::ExternalAnnotations> external;
  if (!a.annotations.empty()) {
    external = annotate::load_external_annotations(a.annotations);
  }
  ordered_json inputs;
  inputs["chunks"] = a.chunks;
  inputs["generations"] = a.generations;
  inputs["annotations"] = a.annotations.empty() ? "builtin" : a.annotations;
  inputs["lexicons"] = lex.sources;
  const auto meta = run_metadata("profile", g, inputs);

  io::OutputSet outputs;
  const fs::path out(g.out);
  if (!a.chunks.empty()) {
    const auto chunks = read_chunk_store(a.chunks);
    std::set<std::string> authors;
    for (const auto& c : chunks) {
      if (c.split == corpus::Split::kTest) authors.insert(c.author_id);
    }
    if (authors.empty()) {
      throw Error(ErrorCode::kEmptyInput, "no test-split chunks in " + a.chunks);
    }
    std::vector<features::StyleProfile> profiles;
    for (const auto& author : authors) {
      profiles.push_back(features::author_reference_profile(
          chunks, author, lex, external ? &*external : nullptr));
    }
    outputs.add(out / "references.jsonl", features::profiles_to_jsonl(profiles));
    io.out << fmt::format("profiled {} authors\n", profiles.size());
  } else {
    const auto gens = metrics::read_generations(a.generations);
    if (gens.empty()) {
      throw Error(ErrorCode::kEmptyInput, "no generations in " + a.generations);
    }
    std::vector<features::StyleProfile> per_text;
    std::map<std::string, std::vector<annotate::AnnotatedDocument>> pooled;
    Diagnostics diags;
    for (const auto& gen : gens) {
      const auto stream = corpus::tokenize(gen.text);
      if (stream.empty()) {
        warn(&diags, ErrorCode::kEmptyDocument,
             fmt::format("generation '{}' is empty, skipped", gen.gen_id));
        continue;
      }
      auto doc = annotate::annotate(stream, lex, gen.gen_id);
      per_text.push_back(features::profile(doc, lex, gen.gen_id));
      pooled[gen.author_id + "/" + gen.method].push_back(std::move(doc));
    }
    report_diagnostics(diags, io.err);
    if (per_text.empty()) {
      throw Error(ErrorCode::kEmptyDocument, "every generation was empty");
    }
    std::vector<features::StyleProfile> pooled_profiles;
    for (const auto& [label, docs] : pooled) {
      pooled_profiles.push_back(features::profile(
          std::span<const annotate::AnnotatedDocument>(docs), lex, label));
    }
    outputs.add(out / "profiles_generations.jsonl",
                features::profiles_to_jsonl(per_text));
    outputs.add(out / "profiles_pooled.jsonl",
                features::profiles_to_jsonl(pooled_profiles));
    io.out << fmt::format("profiled {} generations in {} groups\n",
                          per_text.size(), pooled_profiles.size());
  }
  outputs.add(out / "profile.json", dump_json(meta));
  outputs.commit();
  return kExitOk;
}

// ---------------------------------------------------------------- mask

struct MaskArgs {
  std::string chunks;
  std::string annotations;
  std::string lexicons;
  bool no_mask = false;
  std::string recipe_overrides;  // JSON text or a path to a JSON file
};

json parse_overrides(const std::string& text) {
  if (text.empty()) return json::object();
  try {
    if (fs::is_regular_file(text)) return json::parse(io::read_file(text));
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kInvalidConfig, fmt::format("recipe overrides: {}", e.what()));
  }
}

int cmd_mask(const MaskArgs& a, const Globals& g, Io io) {
  const auto lex = load_lexicons(a.lexicons);
  std::optional<annotate::ExternalAnnotations> external;
  if (!a.annotations.empty()) {
    external = annotate::load_external_annotations(a.annotations);
  }
  const auto overrides = parse_overrides(a.recipe_overrides);
  const auto store = read_chunk_store(a.chunks);
  const auto vocab = adapters::Vocabulary::build(store);

  std::vector<corpus::Chunk> selected;
  for (const auto& c : store) {
    if (c.split != corpus::Split::kTest) selected.push_back(c);
  }
  selected = sorted_chunks(std::move(selected));
  if (selected.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no train or valid chunks in " + a.chunks);
  }
  std::vector<annotate::AnnotatedDocument> docs;
  if (!a.no_mask) docs = annotate_all(selected, lex, external ? &*external : nullptr);

  std::map<std::string, std::string> files;  // relative path -> contents
  adapters::MaskSummary summary;
  std::set<std::string> authors;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    const auto& c = selected[i];
    std::vector<adapters::Span> spans;
    if (!a.no_mask) spans = annotate::person_spans(docs[i]);
    adapters::MaskedExample ex;
    try {
      ex = adapters::mask_labels(vocab.encode(c.tokens), spans);
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("chunk {}/{}#{}: {}", c.author_id,
                                        c.book_id, c.index, e.what()));
    }
    summary.masked += ex.masked_count();
    summary.total += ex.labels.size();
    authors.insert(c.author_id);
    files[fmt::format("masked/{}.{}.jsonl", c.author_id,
                      corpus::to_string(c.split))] +=
        adapters::to_jsonl_line(ex) + "\n";
  }

  ordered_json inputs;
  inputs["chunks"] = a.chunks;
  inputs["annotations"] = a.annotations.empty() ? "builtin" : a.annotations;
  inputs["lexicons"] = lex.sources;
  inputs["mask"] = !a.no_mask;
  inputs["span_class"] = "person";
  auto meta = run_metadata("mask", g, inputs);
  meta["masked_tokens"] = summary.masked;
  meta["total_tokens"] = summary.total;

  io::OutputSet outputs;
  const fs::path out(g.out);
  for (const auto& [rel, contents] : files) outputs.add(out / rel, contents);
  for (const auto& author : authors) {
    auto recipe = adapters::emit_training_recipe(
        author,
        {fmt::format("masked/{}.train.jsonl", author),
         fmt::format("masked/{}.valid.jsonl", author)},
        overrides);
    outputs.add(out / "recipes" / (author + ".json"), dump_json(recipe));
  }
  ordered_json vocab_json;
  vocab_json["size"] = vocab.size();
  vocab_json["ids"] = vocab.ids();
  outputs.add(out / "vocab.json", dump_json(vocab_json));
  outputs.add(out / "mask.json", dump_json(meta));
  outputs.commit();
  io.out << adapters::format_summary(summary) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- merge

struct MergeArgs {
  std::vector<std::string> adapters;
  std::string ratios;
  std::vector<std::string> adapter_configs;
  std::string name = "merged";
};

std::vector<double> parse_ratio_list(const std::string& text, std::size_t n) {
  if (text.empty()) return std::vector<double>(n, 1.0);
  std::vector<double> out;
  std::string item;
  std::istringstream in(text);
  const char sep = text.find(':') != std::string::npos ? ':' : ',';
  while (std::getline(in, item, sep)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidSpec, "bad ratio '" + item + "'");
    }
  }
  if (out.size() != n) {
    throw Error(ErrorCode::kInvalidSpec,
                fmt::format("{} ratios for {} adapters", out.size(), n));
  }
  return out;
}

int cmd_merge(const MergeArgs& a, const Globals& g, Io io) {
  const std::size_t n = a.adapters.size();
  if (n == 0) throw Error(ErrorCode::kInvalidSpec, "no adapters given");
  if (a.adapter_configs.size() != 1 && a.adapter_configs.size() != n) {
    throw Error(ErrorCode::kInvalidConfig,
                "give one adapter config, or one per adapter");
  }
  const auto ratios = parse_ratio_list(a.ratios, n);

  std::vector<adapters::LoraAdapter<float>> loaded;
  for (std::size_t i = 0; i < n; ++i) {
    const auto config =
        adapters::read_adapter_config(a.adapter_configs[a.adapter_configs.size() == 1 ? 0 : i]);
    try {
      loaded.push_back(adapters::load_adapter(
          adapters::TensorFile::read_file(a.adapters[i]), config));
    } catch (const Error& e) {
      throw Error(e.code(), a.adapters[i] + ": " + e.what());
    }
  }
  adapters::MergeSpec<float> spec;
  for (std::size_t i = 0; i < n; ++i) spec.push_back({&loaded[i], ratios[i]});
  const auto merged = adapters::merge(spec);
  const double residual = adapters::merge_residual<float>(merged, spec);
  const std::string ratio_text = adapters::format_ratios(ratios);

  std::map<std::string, std::string> st_meta{
      {"merge_ratios", ratio_text},
      {"rank", std::to_string(merged.rank)},
      {"alpha", metrics::format_real(merged.alpha)},
      {"base_model_tag", merged.base_model_tag}};
  const auto bytes = adapters::save_adapter(merged, st_meta).write();

  ordered_json inputs;
  inputs["adapters"] = a.adapters;
  inputs["adapter_configs"] = a.adapter_configs;
  auto meta = run_metadata("merge", g, inputs);
  ordered_json doc;
  ordered_json operands = ordered_json::array();
  for (std::size_t i = 0; i < n; ++i) {
    operands.push_back({{"path", a.adapters[i]},
                        {"ratio", ratios[i]},
                        {"rank", loaded[i].rank},
                        {"alpha", loaded[i].alpha},
                        {"dtype", std::string(adapters::to_string(loaded[i].storage_dtype))}});
  }
  doc["operands"] = operands;
  doc["ratios"] = ratio_text;
  doc["rank"] = merged.rank;
  doc["alpha"] = merged.alpha;
  doc["base_model_tag"] = merged.base_model_tag;
  doc["dtype"] = std::string(adapters::to_string(merged.storage_dtype));
  ordered_json targets = ordered_json::array();
  for (const auto& [t, pair] : merged.modules) targets.push_back(t);
  doc["targets"] = targets;
  doc["max_residual"] = residual;
  doc["residual_limit"] = 1e-6;
  doc["metadata"] = meta;

  io::OutputSet outputs;
  const fs::path out(g.out);
  outputs.add(out / (a.name + ".safetensors"),
              std::string(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  outputs.add(out / (a.name + ".json"), dump_json(doc));
  outputs.commit();
  io.out << fmt::format("merged {} adapters at {} -> rank {}, alpha {}\n", n,
                        ratio_text, merged.rank, metrics::format_real(merged.alpha));
  io.out << fmt::format("max |delta-sum residual| = {:.3e} ({})\n", residual,
                        residual < 1e-6 ? "ok" : "FAILED");
  return residual < 1e-6 ? kExitOk : kExitInternal;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string references;
  std::string generations;
  std::string ref_embeddings;
  std::string gen_embeddings;
  std::string predictions;
  std::string nll;
  std::string nll_base;
  std::string generation_texts;
  std::string chunks;
  std::string lexicons;
  bool svg = false;
};

void write_report(const metrics::AlignmentReport& report, bool svg,
                  io::OutputSet& outputs, const fs::path& out) {
  outputs.add(out / "report.csv", metrics::render_csv(report));
  outputs.add(out / "report.json", dump_json(metrics::to_json(report)));
  if (svg) outputs.add(out / "report.svg", metrics::render_svg(report));
}

int cmd_evaluate(const EvaluateArgs& a, const Globals& g, Io io) {
  std::map<std::string, features::StyleProfile> refs;
  for (auto& p : features::read_profiles(a.references)) refs[p.label] = p;

  std::vector<metrics::GenerationProfile> gens;
  for (auto& p : features::read_profiles(a.generations)) {
    auto key = metrics::parse_unit_key(p.label);
    if (key.method.empty()) key.method = "self";
    gens.push_back({key.author_id, key.method, std::move(p)});
  }
  if (gens.empty()) throw Error(ErrorCode::kEmptyInput, "no generation profiles");

  std::map<metrics::RowKey, metrics::RowExtras> extras;
  if (!a.ref_embeddings.empty() != !a.gen_embeddings.empty()) {
    throw Error(ErrorCode::kInvalidConfig,
                "--ref-embeddings and --gen-embeddings go together");
  }
  if (!a.ref_embeddings.empty()) {
    for (const auto& [key, v] : metrics::mean_cosine_by_row(
             metrics::read_embeddings(a.ref_embeddings),
             metrics::read_embeddings(a.gen_embeddings))) {
      extras[key].cosine = v;
    }
  }
  if (!a.predictions.empty()) {
    std::vector<std::string> labels;
    for (const auto& [author, p] : refs) labels.push_back(author);
    for (const auto& [key, v] : metrics::accuracy_by_row(
             metrics::read_predictions(a.predictions), labels)) {
      extras[key].accuracy = v;
    }
  }
  if (!a.nll.empty()) {
    for (const auto& [key, v] :
         metrics::perplexity_by_row(metrics::read_nll_dumps(a.nll), true)) {
      extras[key].ppl = v;
    }
  }
  if (!a.nll_base.empty()) {
    const auto base =
        metrics::perplexity_by_row(metrics::read_nll_dumps(a.nll_base), false);
    for (const auto& gen : gens) {
      const auto it = base.find({gen.author_id, std::string()});
      if (it != base.end()) extras[{gen.author_id, gen.method}].ppl_base = it->second;
    }
  }
  const auto lex = load_lexicons(a.lexicons);
  if (!a.generation_texts.empty() != !a.chunks.empty()) {
    throw Error(ErrorCode::kInvalidConfig,
                "--generation-texts and --chunks go together");
  }
  if (!a.generation_texts.empty()) {
    std::map<std::string, std::vector<corpus::Chunk>> train;
    for (auto& c : read_chunk_store(a.chunks)) {
      if (c.split == corpus::Split::kTrain) train[c.author_id].push_back(std::move(c));
    }
    std::map<metrics::RowKey, std::vector<annotate::AnnotatedDocument>> generated;
    for (const auto& gen : metrics::read_generations(a.generation_texts)) {
      generated[{gen.author_id, gen.method}].push_back(
          annotate::annotate(corpus::tokenize(gen.text), lex, gen.gen_id));
    }
    std::map<std::string, std::set<std::string>> training_names;
    for (const auto& [key, docs] : generated) {
      if (!training_names.contains(key.first)) {
        const auto docs_train = annotate_all(sorted_chunks(train[key.first]), lex, nullptr);
        training_names[key.first] = metrics::person_names(docs_train);
      }
      const auto stats = metrics::name_overlap(
          std::span<const annotate::AnnotatedDocument>(docs),
          training_names[key.first]);
      extras[key].pct_in_training = stats.pct_in_training;
      extras[key].n_names = static_cast<double>(stats.n_unique_names);
    }
  }

  ordered_json inputs;
  inputs["references"] = a.references;
  inputs["generations"] = a.generations;
  inputs["ref_embeddings"] = a.ref_embeddings;
  inputs["gen_embeddings"] = a.gen_embeddings;
  inputs["predictions"] = a.predictions;
  inputs["nll"] = a.nll;
  inputs["nll_base"] = a.nll_base;
  inputs["generation_texts"] = a.generation_texts;
  inputs["chunks"] = a.chunks;
  inputs["lexicons"] = lex.sources;
  const auto report =
      metrics::alignment_report(gens, refs, extras, run_metadata("evaluate", g, inputs));

  io::OutputSet outputs;
  write_report(report, a.svg, outputs, fs::path(g.out));
  outputs.commit();
  io.out << fmt::format("{} rows, {} averages\n", report.rows.size(),
                        report.averages.size());
  return kExitOk;
}

// ---------------------------------------------------------------- report

struct ReportArgs {
  std::string input;
  bool svg = false;
};

int cmd_report(const ReportArgs& a, const Globals& g, Io io) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(io::read_file(a.input));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kInvalidInput, fmt::format("{}: {}", a.input, e.what()));
  }
  const auto report = metrics::report_from_json(j);
  io::OutputSet outputs;
  const fs::path out(g.out);
  outputs.add(out / "report.csv", metrics::render_csv(report));
  if (a.svg) outputs.add(out / "report.svg", metrics::render_svg(report));
  outputs.commit();
  io.out << fmt::format("rendered {} rows\n", report.rows.size());
  return kExitOk;
}

// Fills options not given on the command line from the JSON config. Keys use
// underscores where flags use dashes ("corpus_root" -> --corpus-root).
void apply_config(const std::string& path, CLI::App& app, CLI::App* sub) {
  json config;
  try {
    config = json::parse(io::read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kInvalidConfig, fmt::format("{}: {}", path, e.what()));
  }
  if (!config.is_object()) throw Error(ErrorCode::kInvalidConfig, "config must be an object");
  for (const auto& [key, value] : config.items()) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    CLI::Option* opt = nullptr;
    for (CLI::App* scope : {sub, &app}) {
      if (scope == nullptr) continue;
      try {
        opt = scope->get_option(flag);
        break;
      } catch (const CLI::OptionNotFound&) {
      }
    }
    if (opt == nullptr || opt->count() > 0 || flag == "--config") continue;
    auto as_text = [](const json& v) {
      return v.is_string() ? v.get<std::string>() : v.dump();
    };
    if (value.is_array()) {
      for (const auto& v : value) opt->add_result(as_text(v));
    } else {
      opt->add_result(as_text(value));
    }
    opt->run_callback();
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"stylekit: corpus preparation, style profiling, adapter merging"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random choice")
      ->capture_default_str();
  app.add_option("--config", g.config, "JSON run configuration");
  app.add_option("--out", g.out, "Output directory")->capture_default_str();

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Chunk a corpus and split books");
  ingest_cmd->add_option("--corpus-root", ingest.corpus_root, "<root>/<author>/<book>.txt");
  ingest_cmd->add_option("--authors", ingest.authors, "Author ids to include");
  ingest_cmd->add_option("--chunk-size", ingest.chunk_size);
  ingest_cmd->add_flag("--keep-tail", ingest.keep_tail);
  ingest_cmd->add_flag("--no-strip", ingest.no_strip, "Keep Gutenberg boilerplate");
  ingest_cmd->add_option("--ratios", ingest.ratios, "train,valid,test")->delimiter(',');
  ingest_cmd->add_option("--subsample", ingest.subsample, "Fraction of training chunks");
  ingest_cmd->add_option("--tokens-sidecar", ingest.tokens_sidecar);
  ingest_cmd->add_option("--prompts-file", ingest.prompts_file);
  ingest_cmd->add_option("--prompts-per-author", ingest.prompts_per_author);
  ingest_cmd->add_option("--name-prompts", ingest.name_prompts);
  ingest_cmd->add_option("--lexicons", ingest.lexicons);

  ProfileArgs profile;
  auto* profile_cmd = app.add_subcommand("profile", "Style profiles");
  auto* chunks_opt = profile_cmd->add_option("--chunks", profile.chunks,
                                             "Chunk store: author references");
  auto* gens_opt = profile_cmd->add_option("--generations", profile.generations,
                                           "Generation JSONL");
  chunks_opt->excludes(gens_opt);
  profile_cmd->add_option("--annotations", profile.annotations);
  profile_cmd->add_option("--lexicons", profile.lexicons);

  MaskArgs mask;
  auto* mask_cmd = app.add_subcommand("mask", "Masked training examples");
  mask_cmd->add_option("--chunks", mask.chunks);
  mask_cmd->add_option("--annotations", mask.annotations);
  mask_cmd->add_option("--lexicons", mask.lexicons);
  mask_cmd->add_flag("--no-mask", mask.no_mask);
  mask_cmd->add_option("--recipe-overrides", mask.recipe_overrides);

  MergeArgs merge;
  auto* merge_cmd = app.add_subcommand("merge", "Merge LoRA adapters");
  merge_cmd->add_option("adapters", merge.adapters, "Adapter .safetensors files");
  merge_cmd->add_option("--ratios", merge.ratios, "e.g. 0.9,1");
  merge_cmd->add_option("--adapter-configs", merge.adapter_configs,
                        "One JSON config, or one per adapter");
  merge_cmd->add_option("--name", merge.name)->capture_default_str();

  EvaluateArgs evaluate;
  auto* eval_cmd = app.add_subcommand("evaluate", "Alignment report");
  eval_cmd->add_option("--references", evaluate.references);
  eval_cmd->add_option("--generations", evaluate.generations);
  eval_cmd->add_option("--ref-embeddings", evaluate.ref_embeddings);
  eval_cmd->add_option("--gen-embeddings", evaluate.gen_embeddings);
  eval_cmd->add_option("--predictions", evaluate.predictions);
  eval_cmd->add_option("--nll", evaluate.nll);
  eval_cmd->add_option("--nll-base", evaluate.nll_base);
  eval_cmd->add_option("--generation-texts", evaluate.generation_texts);
  eval_cmd->add_option("--chunks", evaluate.chunks);
  eval_cmd->add_option("--lexicons", evaluate.lexicons);
  eval_cmd->add_flag("--svg", evaluate.svg);

  ReportArgs report;
  auto* report_cmd = app.add_subcommand("report", "Render report.json");
  report_cmd->add_option("--input", report.input);
  report_cmd->add_flag("--svg", report.svg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  Io io{out, err};
  try {
    CLI::App* sub = app.get_subcommands().front();
    if (!g.config.empty()) apply_config(g.config, app, sub);
    auto need = [](const std::string& v, const char* flag) {
      if (v.empty()) {
        throw Error(ErrorCode::kInvalidConfig, fmt::format("{} is required", flag));
      }
    };
    if (sub == profile_cmd && profile.chunks.empty() == profile.generations.empty()) {
      throw Error(ErrorCode::kInvalidConfig, "give exactly one of --chunks, --generations");
    }
    if (sub == mask_cmd) need(mask.chunks, "--chunks");
    if (sub == merge_cmd && merge.adapter_configs.empty()) {
      throw Error(ErrorCode::kInvalidConfig, "--adapter-configs is required");
    }
    if (sub == eval_cmd) {
      need(evaluate.references, "--references");
      need(evaluate.generations, "--generations");
    }
    if (sub == report_cmd) need(report.input, "--input");

    io::DirectoryLock lock(g.out);
    if (sub == ingest_cmd) return cmd_ingest(ingest, g, io);
    if (sub == profile_cmd) return cmd_profile(profile, g, io);
    if (sub == mask_cmd) return cmd_mask(mask, g, io);
    if (sub == merge_cmd) return cmd_merge(merge, g, io);
    if (sub == eval_cmd) return cmd_evaluate(evaluate, g, io);
    return cmd_report(report, g, io);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace stylekit::cli
