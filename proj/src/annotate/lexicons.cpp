// Copyright 2026 The Stylekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "stylekit/annotate/lexicons.hpp"

#include <fmt/core.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>

#include "stylekit/error.hpp"
#include "stylekit/io/rng.hpp"
#include "stylekit/text/utf8.hpp"

namespace stylekit::annotate {

std::string_view to_string(PosTag tag) {
  switch (tag) {
    case PosTag::kNoun: return "NOUN";
    case PosTag::kPropn: return "PROPN";
    case PosTag::kVerb: return "VERB";
    case PosTag::kAdj: return "ADJ";
    case PosTag::kAdv: return "ADV";
    case PosTag::kDet: return "DET";
    case PosTag::kPron: return "PRON";
    case PosTag::kConjCoord: return "CONJ_COORD";
    case PosTag::kConjSub: return "CONJ_SUB";
    case PosTag::kPunct: return "PUNCT";
    case PosTag::kOther: return "OTHER";
  }
  return "OTHER";
}

std::optional<PosTag> parse_tag(std::string_view name) {
  static const std::unordered_map<std::string_view, PosTag> kTable = {
      {"NOUN", PosTag::kNoun},        {"PROPN", PosTag::kPropn},
      {"VERB", PosTag::kVerb},        {"ADJ", PosTag::kAdj},
      {"ADV", PosTag::kAdv},          {"DET", PosTag::kDet},
      {"PRON", PosTag::kPron},        {"CONJ_COORD", PosTag::kConjCoord},
      {"CONJ_SUB", PosTag::kConjSub}, {"PUNCT", PosTag::kPunct},
      {"OTHER", PosTag::kOther},
      // Universal Dependencies
      {"AUX", PosTag::kVerb},         {"CCONJ", PosTag::kConjCoord},
      {"SCONJ", PosTag::kConjSub},    {"ADP", PosTag::kOther},
      {"NUM", PosTag::kOther},        {"PART", PosTag::kOther},
      {"INTJ", PosTag::kOther},       {"SYM", PosTag::kOther},
      {"X", PosTag::kOther},          {"SPACE", PosTag::kOther},
      // Penn Treebank
      {"NN", PosTag::kNoun},          {"NNS", PosTag::kNoun},
      {"NNP", PosTag::kPropn},        {"NNPS", PosTag::kPropn},
      {"VB", PosTag::kVerb},          {"VBD", PosTag::kVerb},
      {"VBG", PosTag::kVerb},         {"VBN", PosTag::kVerb},
      {"VBP", PosTag::kVerb},         {"VBZ", PosTag::kVerb},
      {"MD", PosTag::kVerb},          {"JJ", PosTag::kAdj},
      {"JJR", PosTag::kAdj},          {"JJS", PosTag::kAdj},
      {"RB", PosTag::kAdv},           {"RBR", PosTag::kAdv},
      {"RBS", PosTag::kAdv},          {"WRB", PosTag::kAdv},
      {"DT", PosTag::kDet},           {"PDT", PosTag::kDet},
      {"WDT", PosTag::kDet},          {"PRP", PosTag::kPron},
      {"PRP$", PosTag::kPron},        {"WP", PosTag::kPron},
      {"WP$", PosTag::kPron},         {"EX", PosTag::kPron},
      {"CC", PosTag::kConjCoord},     {"IN", PosTag::kOther},
      {".", PosTag::kPunct},          {",", PosTag::kPunct},
      {":", PosTag::kPunct},          {"``", PosTag::kPunct},
      {"''", PosTag::kPunct},         {"-LRB-", PosTag::kPunct},
      {"-RRB-", PosTag::kPunct},      {"HYPH", PosTag::kPunct},
      {"NFP", PosTag::kPunct},
  };
  const auto it = kTable.find(name);
  if (it == kTable.end()) return std::nullopt;
  return it->second;
}

namespace {

struct Entry {
  std::string_view words;
  PosTag tag;
};

// Closed classes and high-frequency open-class words. Space separated.
constexpr Entry kBuiltinPos[] = {
    {"a an the this that these those every each either neither some any no "
     "another such all both half",
     PosTag::kDet},
    {"i me my mine myself you your yours yourself yourselves he him his "
     "himself she her hers herself it its itself we us our ours ourselves "
     "they them their theirs themselves who whom whose which what whoever "
     "whatever one nobody somebody anybody everybody nothing something "
     "anything everything none someone anyone everyone",
     PosTag::kPron},
    {"and but or nor yet so", PosTag::kConjCoord},
    {"although though because since unless whereas while whilst if when "
     "whenever where wherever after before until till once than whether "
     "lest",
     PosTag::kConjSub},
    {"not very too quite rather almost always never often sometimes soon "
     "now then here there still just only even also again already perhaps "
     "indeed ever thus however yet away back down up out once twice well "
     "much more most less least far",
     PosTag::kAdv},
    {"is am are was were be been being has have had having do does did "
     "doing done will would shall should can could may might must ought "
     "said say says saying asked replied cried answered exclaimed "
     "whispered shouted remarked continued added observed returned "
     "murmured told tell tells thought think thinks wrote write writes "
     "declared inquired enquired muttered responded went go goes gone came "
     "come comes saw see sees seen left leave leaves took take takes taken "
     "made make makes got get gets knew know knows known found find finds "
     "gave give gives given felt feel feels became become becomes began "
     "begin begins ran run runs sat sit sits stood stand stands heard hear "
     "hears held hold holds brought bring brings kept keep keeps let lets "
     "met meet meets paid pay pays put puts sent send sends spoke speak "
     "speaks lay lie lies looked look looks seemed seem seems wanted want "
     "wants liked like likes loved love loves rose rise rises fell fall "
     "falls slept sleep sleeps ate eat eats drank drink drinks wore wear "
     "wears won win wins lost lose loses sang sing sings struck strike "
     "strikes broke break breaks chose choose chooses drove drive drives "
     "flew fly flies grew grow grows threw throw throws understood "
     "understand understands",
     PosTag::kVerb},
    {"good bad great little small large big old young new long short high "
     "low dear poor rich own other same different certain whole full "
     "early late happy sad strange quiet dark light white black red",
     PosTag::kAdj},
    {"man woman men women child children day night time life world house "
     "hand hands eye eyes head face room door way thing things mind heart "
     "word words moment year years morning evening mother father sister "
     "brother friend place water",
     PosTag::kNoun},
    {"mr mrs ms miss dr sir madam lady lord st prof capt col gen rev",
     PosTag::kNoun},
    {"of in on at by for with from to into onto upon over under about "
     "against between among through during without within along across "
     "behind beyond toward towards near like as",
     PosTag::kOther},
};

constexpr std::string_view kBuiltinHonorifics =
    "mr mrs ms miss dr sir madam lady lord prof capt col gen rev master "
    "uncle aunt";
constexpr std::string_view kBuiltinReportingVerbs =
    "said says say asked replied cried answered exclaimed whispered "
    "shouted remarked continued added observed returned murmured told "
    "declared inquired enquired muttered responded called began";
constexpr std::string_view kBuiltinAbbreviations =
    "mr. mrs. ms. dr. st. prof. capt. col. gen. rev. jr. sr. etc. vs. "
    "e.g. i.e. no. vol. ch. mt. ft.";

void add_words(std::string_view words,
               const auto& insert) {
  std::size_t pos = 0;
  while (pos < words.size()) {
    const auto end = words.find(' ', pos);
    const auto w = words.substr(pos, end == std::string_view::npos
                                         ? std::string_view::npos
                                         : end - pos);
    if (!w.empty()) insert(std::string(w));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string source_id(const std::string& path, const std::string& contents) {
  return fmt::format("{}#{:016x}",
                     std::filesystem::path(path).filename().string(),
                     io::hash64(contents));
}

// Calls `fn(fields, lineno)` for each non-comment line.
template <typename Fn>
void for_each_line(const std::string& contents, Fn&& fn) {
  std::istringstream in(contents);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    fn(line, lineno);
  }
}

std::pair<std::string, std::string> split_tab(const std::string& line,
                                              const std::string& path,
                                              std::size_t lineno) {
  const auto tab = line.find('\t');
  if (tab == std::string::npos) {
    throw Error(ErrorCode::kInvalidInput,
                fmt::format("{}:{}: expected word<TAB>value", path, lineno));
  }
  return {text::fold_case(line.substr(0, tab)), line.substr(tab + 1)};
}

double parse_score(const std::string& s, const std::string& path,
                   std::size_t lineno) {
  double v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kInvalidInput,
                fmt::format("{}:{}: bad score '{}'", path, lineno, s));
  }
  return v;
}

template <typename Map>
auto find_folded(const Map& map, std::string_view word) {
  return map.find(text::fold_case(word));
}

}  // namespace

Lexicons Lexicons::empty() { return Lexicons{}; }

Lexicons Lexicons::builtin() {
  Lexicons lex;
  for (const auto& e : kBuiltinPos) {
    add_words(e.words, [&](std::string w) { lex.pos[std::move(w)] = e.tag; });
  }
  add_words(kBuiltinHonorifics,
            [&](std::string w) { lex.honorifics.insert(std::move(w)); });
  add_words(kBuiltinReportingVerbs,
            [&](std::string w) { lex.reporting_verbs.insert(std::move(w)); });
  add_words(kBuiltinAbbreviations,
            [&](std::string w) { lex.abbreviations.insert(std::move(w)); });
  lex.sources.push_back("builtin");
  return lex;
}

const PosTag* Lexicons::find_pos(std::string_view word) const {
  const auto it = find_folded(pos, word);
  return it == pos.end() ? nullptr : &it->second;
}

const double* Lexicons::find_subjectivity(std::string_view word) const {
  const auto it = find_folded(subjectivity, word);
  return it == subjectivity.end() ? nullptr : &it->second;
}

const double* Lexicons::find_concreteness(std::string_view word) const {
  const auto it = find_folded(concreteness, word);
  return it == concreteness.end() ? nullptr : &it->second;
}

bool Lexicons::is_abbreviation(std::string_view token) const {
  std::string key = text::fold_case(token);
  if (abbreviations.contains(key)) return true;
  if (key.ends_with('.')) {
    key.pop_back();
  } else {
    key.push_back('.');
  }
  return abbreviations.contains(key);
}

bool Lexicons::is_person_name(std::string_view word) const {
  return person_names.contains(text::fold_case(word));
}

bool Lexicons::is_honorific(std::string_view word) const {
  std::string key = text::fold_case(word);
  if (key.ends_with('.')) key.pop_back();
  return honorifics.contains(key);
}

bool Lexicons::is_place(std::string_view word) const {
  return places.contains(text::fold_case(word));
}

bool Lexicons::is_reporting_verb(std::string_view word) const {
  return reporting_verbs.contains(text::fold_case(word));
}

void Lexicons::load_pos(const std::string& path) {
  const std::string contents = read_file(path);
  for_each_line(contents, [&](const std::string& line, std::size_t lineno) {
    auto [word, tag_name] = split_tab(line, path, lineno);
    const auto tag = parse_tag(tag_name);
    if (!tag) {
      throw Error(ErrorCode::kUnknownTag,
                  fmt::format("{}:{}: unknown tag '{}'", path, lineno,
                              tag_name));
    }
    pos[std::move(word)] = *tag;
  });
  sources.push_back(source_id(path, contents));
}

void Lexicons::load_subjectivity(const std::string& path) {
  const std::string contents = read_file(path);
  for_each_line(contents, [&](const std::string& line, std::size_t lineno) {
    auto [word, value] = split_tab(line, path, lineno);
    const double score = parse_score(value, path, lineno);
    if (!(score >= 0.0 && score <= 1.0)) {
      throw Error(ErrorCode::kInvalidInput,
                  fmt::format("{}:{}: subjectivity {} outside [0,1]", path,
                              lineno, score));
    }
    subjectivity[std::move(word)] = score;
  });
  sources.push_back(source_id(path, contents));
}

void Lexicons::load_concreteness(const std::string& path) {
  const std::string contents = read_file(path);
  for_each_line(contents, [&](const std::string& line, std::size_t lineno) {
    auto [word, value] = split_tab(line, path, lineno);
    const double score = parse_score(value, path, lineno);
    if (!(score >= 1.0 && score <= 5.0)) {
      throw Error(ErrorCode::kInvalidInput,
                  fmt::format("{}:{}: concreteness {} outside [1,5]", path,
                              lineno, score));
    }
    concreteness[std::move(word)] = score;
  });
  sources.push_back(source_id(path, contents));
}

void Lexicons::load_word_list(const std::string& path,
                              std::unordered_set<std::string>& target) {
  const std::string contents = read_file(path);
  for_each_line(contents, [&](const std::string& line, std::size_t) {
    const auto b = line.find_first_not_of(" \t");
    const auto e = line.find_last_not_of(" \t");
    if (b != std::string::npos) {
      target.insert(text::fold_case(line.substr(b, e - b + 1)));
    }
  });
  sources.push_back(source_id(path, contents));
}

void Lexicons::load_directory(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::kIo, "lexicon directory not found: " + dir);
  }
  auto path = [&](const char* name) { return (fs::path(dir) / name).string(); };
  auto exists = [&](const char* name) { return fs::exists(path(name)); };
  if (exists("pos.tsv")) load_pos(path("pos.tsv"));
  if (exists("subjectivity.tsv")) load_subjectivity(path("subjectivity.tsv"));
  if (exists("concreteness.tsv")) load_concreteness(path("concreteness.tsv"));
  if (exists("abbreviations.txt")) {
    load_word_list(path("abbreviations.txt"), abbreviations);
  }
  if (exists("person_names.txt")) {
    load_word_list(path("person_names.txt"), person_names);
  }
  if (exists("honorifics.txt")) load_word_list(path("honorifics.txt"), honorifics);
  if (exists("places.txt")) load_word_list(path("places.txt"), places);
  if (exists("reporting_verbs.txt")) {
    load_word_list(path("reporting_verbs.txt"), reporting_verbs);
  }
}

}  // namespace stylekit::annotate
