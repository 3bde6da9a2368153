// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <map>

#include "stylekit/adapters/lora.hpp"
#include "stylekit/adapters/safetensors.hpp"
#include "stylekit/cli/commands.hpp"
#include "stylekit/features/profile_io.hpp"
#include "stylekit/io/files.hpp"
#include "test_util.hpp"

namespace stylekit::cli {
namespace {

namespace fs = std::filesystem;
using testing::fixture;
using testing::run;
using testing::scratch_dir;

std::string corpus_root() { return fixture("corpus/authors").string(); }

std::map<std::string, std::string> tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) {
      out[fs::relative(e.path(), dir).string()] = io::read_file(e.path().string());
    }
  }
  return out;
}

void write(const fs::path& path, const std::string& text) {
  std::ofstream(path) << text;
}

// Ingests the fixture corpus once per test binary.
const fs::path& ingested() {
  static const fs::path dir = [] {
    auto d = scratch_dir("cli_ingest_shared");
    const auto r = run({"--out", d.string(), "ingest", "--corpus-root", corpus_root()});
    EXPECT_EQ(r.code, 0) << r.err;
    return d;
  }();
  return dir;
}

const fs::path& references() {
  static const fs::path dir = [] {
    auto d = scratch_dir("cli_refs_shared");
    const auto r = run({"--out", d.string(), "profile", "--chunks",
                        (ingested() / "chunks.jsonl").string()});
    EXPECT_EQ(r.code, 0) << r.err;
    return d;
  }();
  return dir;
}

TEST(Ingest, TenManifestsAndByteIdenticalRerun) {
  const auto dir = ingested();
  std::size_t manifests = 0;
  for (const auto& e : fs::directory_iterator(dir / "manifests")) {
    ++manifests;
    const auto j = nlohmann::json::parse(io::read_file(e.path().string()));
    EXPECT_EQ(j["books"].size(), 3u);
    EXPECT_EQ(j["metadata"]["seed"], kDefaultSeed);
  }
  EXPECT_EQ(manifests, 10u);
  const auto again = scratch_dir("cli_ingest_again");
  ASSERT_EQ(run({"--out", again.string(), "ingest", "--corpus-root", corpus_root()}).code, 0);
  EXPECT_EQ(tree(again), tree(dir));
}

TEST(Ingest, ChunksAreFullLengthAndBookDisjoint) {
  std::map<std::pair<std::string, std::string>, std::string> split_of;
  std::ifstream in(ingested() / "chunks.jsonl");
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    const auto c = chunk_from_json(nlohmann::json::parse(line));
    EXPECT_EQ(c.tokens.size(), 256u);
    const auto split = std::string(corpus::to_string(c.split));
    const auto [it, fresh] = split_of.emplace(std::pair{c.author_id, c.book_id}, split);
    EXPECT_EQ(it->second, split);
    ++n;
  }
  EXPECT_GT(n, 30u);
}

TEST(Ingest, PromptsAndNamePrompts) {
  const auto d = scratch_dir("cli_ingest_prompts");
  ASSERT_EQ(run({"--out", d.string(), "ingest", "--corpus-root", corpus_root(),
                 "--name-prompts", "10"})
                .code,
            0);
  std::ifstream in(d / "prompts.jsonl");
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j["origin"], "test_excerpt");
    ++n;
  }
  EXPECT_EQ(n, 50u);
  EXPECT_TRUE(fs::exists(d / "name_prompts.jsonl"));
}

TEST(Ingest, Errors) {
  const auto d = scratch_dir("cli_ingest_errors");
  const auto missing = run({"--out", d.string(), "ingest", "--corpus-root", corpus_root(),
                            "--authors", "SR,XX"});
  EXPECT_EQ(missing.code, kExitInvalid);
  EXPECT_NE(missing.err.find("XX"), std::string::npos);
  EXPECT_EQ(run({"--out", d.string(), "ingest", "--corpus-root", "/nonexistent"}).code,
            kExitInvalid);
  EXPECT_EQ(run({"--out", d.string(), "ingest", "--corpus-root", corpus_root(), "--ratios",
                 "0.5,0.5"})
                .code,
            kExitInvalid);
  EXPECT_EQ(run({"--out", d.string(), "bogus"}).code, kExitInvalid);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Ingest, ConfigFileFillsOptions) {
  const auto d = scratch_dir("cli_ingest_config");
  const auto cfg = d / "run.json";
  write(cfg, nlohmann::json{{"corpus_root", corpus_root()}, {"seed", 42}}.dump());
  const auto out = d / "out";
  ASSERT_EQ(run({"--config", cfg.string(), "--out", out.string(), "ingest"}).code, 0);
  EXPECT_EQ(io::read_file((out / "chunks.jsonl").string()),
            io::read_file((ingested() / "chunks.jsonl").string()));
}

TEST(Profile, ReferencesForTenAuthors) {
  const auto profiles = features::read_profiles((references() / "references.jsonl").string());
  ASSERT_EQ(profiles.size(), 10u);
  for (const auto& p : profiles) {
    EXPECT_GT(p.n_sentences, 0u);
    EXPECT_NEAR(p.syntactic.sum(), 1.0, 1e-9);
  }
}

TEST(Profile, GoldenFixtureThroughCli) {
  const auto d = scratch_dir("cli_profile_golden");
  std::ifstream text(fixture("features/text.txt"));
  const std::string body((std::istreambuf_iterator<char>(text)), {});
  corpus::Chunk c;
  c.author_id = "GOLD";
  c.book_id = "golden";
  c.split = corpus::Split::kTest;
  c.tokens = corpus::tokenize(body).tokens;
  write(d / "chunks.jsonl", chunk_to_json(c).dump() + "\n");
  const auto r = run({"--out", (d / "out").string(), "profile", "--chunks",
                      (d / "chunks.jsonl").string(), "--annotations",
                      fixture("features/annotations.jsonl").string(), "--lexicons",
                      fixture("features").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto p = features::read_profiles((d / "out/references.jsonl").string()).at(0);
  const auto golden = nlohmann::json::parse(io::read_file(fixture("features/golden.json").string()));
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(p.lexical(i), golden["lexical"][i].get<double>(), 1e-9);
  for (int i = 0; i < 5; ++i) {
    EXPECT_NEAR(p.syntactic(i), golden["syntactic"][i].get<double>(), 1e-9);
    EXPECT_NEAR(p.surface(i), golden["surface"][i].get<double>(), 1e-9);
  }
  const auto meta = nlohmann::json::parse(io::read_file((d / "out/profile.json").string()));
  EXPECT_EQ(meta["inputs"]["annotations"], fixture("features/annotations.jsonl").string());
}

TEST(Profile, HundredGenerations) {
  const auto d = scratch_dir("cli_profile_gens");
  const auto r = run({"--out", d.string(), "profile", "--generations",
                      fixture("corpus/generations.jsonl").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(features::read_profiles((d / "profiles_generations.jsonl").string()).size(), 100u);
  const auto pooled = features::read_profiles((d / "profiles_pooled.jsonl").string());
  ASSERT_EQ(pooled.size(), 10u);
  EXPECT_EQ(pooled.front().label, "CPG/ours");
}

TEST(Profile, EmptyGenerationsFail) {
  const auto d = scratch_dir("cli_profile_empty");
  write(d / "empty.jsonl", "");
  EXPECT_EQ(run({"--out", (d / "out").string(), "profile", "--generations",
                 (d / "empty.jsonl").string()})
                .code,
            kExitInvalid);
  write(d / "blank.jsonl",
        R"({"gen_id":"SR/ours/0","author_id":"SR","method":"ours","text":"   "})" "\n");
  EXPECT_EQ(run({"--out", (d / "out").string(), "profile", "--generations",
                 (d / "blank.jsonl").string()})
                .code,
            kExitInvalid);
}

TEST(Mask, FixtureSummaryAndNoMask) {
  const auto d = scratch_dir("cli_mask");
  const auto chunks = fixture("corpus/mask/chunks.jsonl").string();
  const auto ann = fixture("corpus/mask/annotations.jsonl").string();
  const auto r = run({"--out", (d / "a").string(), "mask", "--chunks", chunks,
                      "--annotations", ann});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "masked 3/256 (1.17%)\n");
  const auto again = run({"--out", (d / "b").string(), "mask", "--chunks", chunks,
                          "--annotations", ann});
  EXPECT_EQ(tree(d / "a"), tree(d / "b"));

  const auto plain = run({"--out", (d / "c").string(), "mask", "--chunks", chunks,
                          "--annotations", ann, "--no-mask"});
  ASSERT_EQ(plain.code, 0);
  EXPECT_EQ(plain.out, "masked 0/256 (0.00%)\n");
  const auto ex = nlohmann::json::parse(io::read_file((d / "c/masked/PGW.train.jsonl").string()));
  EXPECT_EQ(ex["labels"], ex["input_ids"]);
}

TEST(Mask, RecipesForIngestedCorpus) {
  const auto d = scratch_dir("cli_mask_corpus");
  const auto r = run({"--out", d.string(), "mask", "--chunks",
                      (ingested() / "chunks.jsonl").string(), "--recipe-overrides",
                      R"({"num_epoch":1})"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto recipe = nlohmann::json::parse(io::read_file((d / "recipes/VW.json").string()));
  EXPECT_EQ(recipe["num_epoch"], 1);
  EXPECT_EQ(recipe["learning_rate"], 5e-5);
  EXPECT_EQ(recipe["overridden"], nlohmann::json::array({"num_epoch"}));
  EXPECT_TRUE(fs::exists(d / "masked/VW.valid.jsonl"));
  EXPECT_FALSE(fs::exists(d / "masked/VW.test.jsonl"));
}

std::string st(const std::string& name) { return fixture("safetensors/" + name).string(); }

TEST(Merge, EqualRatiosPassSelfCheck) {
  const auto d = scratch_dir("cli_merge");
  const auto r = run({"--out", d.string(), "merge", st("lora_r2.safetensors"),
                      st("lora_r2_bf16.safetensors"), "--ratios", "1,1", "--adapter-configs",
                      st("lora_r2.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto meta = nlohmann::json::parse(io::read_file((d / "merged.json").string()));
  EXPECT_LT(meta["max_residual"].get<double>(), 1e-6);
  EXPECT_EQ(meta["rank"], 4);
  EXPECT_EQ(meta["ratios"], "1:1");
  const auto file = adapters::TensorFile::read_file((d / "merged.safetensors").string());
  EXPECT_EQ(file.metadata().at("rank"), "4");
  EXPECT_EQ(file.at("base_model.model.model.layers.0.self_attn.q_proj.lora_A.weight").shape,
            (std::vector<std::int64_t>{4, 16}));
}

TEST(Merge, ZeroRatioAndColonNotation) {
  const auto d = scratch_dir("cli_merge_ratios");
  auto r = run({"--out", (d / "zero").string(), "merge", st("lora_r2.safetensors"),
                st("lora_r2.safetensors"), "--ratios", "0,1", "--adapter-configs",
                st("lora_r2.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto merged = adapters::load_adapter(
      adapters::TensorFile::read_file((d / "zero/merged.safetensors").string()),
      {4, 4, "llama-2-7b", {}});
  const auto single = adapters::load_adapter(
      adapters::TensorFile::read_file(st("lora_r2.safetensors")),
      adapters::read_adapter_config(st("lora_r2.json")));
  const std::string q = "model.layers.0.self_attn.q_proj";
  EXPECT_LT((adapters::effective_delta(merged, q) - adapters::effective_delta(single, q))
                .cwiseAbs()
                .maxCoeff(),
            1e-9);

  r = run({"--out", (d / "colon").string(), "merge", st("lora_r2.safetensors"),
           st("lora_r2.safetensors"), "--ratios", "0.9:1", "--adapter-configs",
           st("lora_r2.json"), "--name", "vw_lima"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto file = adapters::TensorFile::read_file((d / "colon/vw_lima.safetensors").string());
  EXPECT_EQ(file.metadata().at("merge_ratios"), "0.9:1");
  EXPECT_NE(r.out.find("max |delta-sum residual|"), std::string::npos);
}

TEST(Merge, Errors) {
  const auto d = scratch_dir("cli_merge_errors");
  auto r = run({"--out", d.string(), "merge", st("lora_r2.safetensors"),
                st("lora_r2.safetensors"), "--adapter-configs", st("lora_r2.json"),
                st("lora_r2_other_base.json")});
  EXPECT_EQ(r.code, kExitInvalid);
  EXPECT_NE(r.err.find("IncompatibleAdapters"), std::string::npos);
  r = run({"--out", d.string(), "merge", st("lora_r2.safetensors"), "--ratios", "0",
           "--adapter-configs", st("lora_r2.json")});
  EXPECT_EQ(r.code, kExitInvalid);
  r = run({"--out", d.string(), "merge", st("lora_r2.safetensors"), "--ratios", "1,1",
           "--adapter-configs", st("lora_r2.json")});
  EXPECT_EQ(r.code, kExitInvalid);
  r = run({"--out", d.string(), "merge", st("lora_unpaired.safetensors"),
           "--adapter-configs", st("lora_r2.json")});
  EXPECT_EQ(r.code, kExitInvalid);
}

TEST(Evaluate, SelfAlignmentIsZero) {
  const auto d = scratch_dir("cli_eval_self");
  const auto refs = (references() / "references.jsonl").string();
  const auto r = run({"--out", d.string(), "evaluate", "--references", refs, "--generations",
                      refs, "--svg"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = nlohmann::json::parse(io::read_file((d / "report.json").string()));
  ASSERT_EQ(report["rows"].size(), 10u);
  for (const auto& row : report["rows"]) {
    EXPECT_EQ(row["method"], "self");
    EXPECT_EQ(row["lexical_mse"], 0.0);
    EXPECT_EQ(row["syntactic_jsd"], 0.0);
    EXPECT_EQ(row["surface_mse"], 0.0);
  }
  EXPECT_TRUE(fs::exists(d / "report.svg"));
  const auto csv = io::read_file((d / "report.csv").string());
  EXPECT_NE(csv.find("\n" + io::read_file(fixture("report/header.csv").string())),
            std::string::npos);
}

TEST(Evaluate, SidecarsFillOptionalColumns) {
  const auto d = scratch_dir("cli_eval_sidecars");
  const auto gens = scratch_dir("cli_eval_sidecars_gens");
  ASSERT_EQ(run({"--out", gens.string(), "profile", "--generations",
                 fixture("corpus/generations.jsonl").string()})
                .code,
            0);
  write(d / "nll.jsonl", R"({"unit_id":"SR/ours/0","nlls":[2.0,2.0]})" "\n");
  write(d / "nll_base.jsonl", R"({"unit_id":"SR/base/0","nlls":[2.5,2.5]})" "\n");
  write(d / "pred.jsonl", R"({"unit_id":"SR/ours/0","gold":"SR","pred":"SR"})" "\n");
  const auto r = run({"--out", (d / "out").string(), "evaluate", "--references",
                      (references() / "references.jsonl").string(), "--generations",
                      (gens / "profiles_pooled.jsonl").string(), "--nll",
                      (d / "nll.jsonl").string(), "--nll-base",
                      (d / "nll_base.jsonl").string(), "--predictions",
                      (d / "pred.jsonl").string(), "--generation-texts",
                      fixture("corpus/generations.jsonl").string(), "--chunks",
                      (ingested() / "chunks.jsonl").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = nlohmann::json::parse(io::read_file((d / "out/report.json").string()));
  bool seen = false;
  for (const auto& row : report["rows"]) {
    if (row["author"] != "SR") continue;
    seen = true;
    EXPECT_NEAR(row["ppl"].get<double>(), std::exp(2.0), 1e-12);
    EXPECT_NEAR(row["ppl_base"].get<double>(), std::exp(2.5), 1e-12);
    EXPECT_NEAR(row["ppl_reduction_pct"].get<double>(),
                100 * (std::exp(2.5) - std::exp(2.0)) / std::exp(2.5), 1e-9);
    EXPECT_EQ(row["accuracy"], 1.0);
    EXPECT_GT(row["n_names"].get<double>(), 0.0);
  }
  EXPECT_TRUE(seen);

  // report reproduces evaluate's CSV from the JSON.
  const auto re = run({"--out", (d / "re").string(), "report", "--input",
                       (d / "out/report.json").string()});
  ASSERT_EQ(re.code, 0) << re.err;
  EXPECT_EQ(io::read_file((d / "re/report.csv").string()),
            io::read_file((d / "out/report.csv").string()));
}

TEST(Evaluate, UnknownAuthorNamesRow) {
  const auto d = scratch_dir("cli_eval_unknown");
  write(d / "gens.jsonl",
        features::profiles_to_jsonl({[] {
          features::StyleProfile p;
          p.label = "XX/ours";
          p.n_sentences = 1;
          p.syntactic << 1, 0, 0, 0, 0;
          return p;
        }()}));
  const auto r = run({"--out", (d / "out").string(), "evaluate", "--references",
                      (references() / "references.jsonl").string(), "--generations",
                      (d / "gens.jsonl").string()});
  EXPECT_EQ(r.code, kExitInvalid);
  EXPECT_NE(r.err.find("XX"), std::string::npos);
}

TEST(Locking, SecondWriterIsRefused) {
  const auto d = scratch_dir("cli_lock");
  io::DirectoryLock lock(d.string());
  const auto r = run({"--out", d.string(), "ingest", "--corpus-root", corpus_root()});
  EXPECT_EQ(r.code, kExitInvalid);
}

}  // namespace
}  // namespace stylekit::cli
