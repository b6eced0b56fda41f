// Copyright 2026 The textaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "textaug/wordnet.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace textaug {
namespace {

namespace fs = std::filesystem;

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string field;
  while (in >> field) fields.push_back(std::move(field));
  return fields;
}

std::uint32_t parse_u32(const std::string& s, int base, const std::string& file,
                        std::size_t line, const char* what) {
  std::uint32_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(s.data(), s.data() + s.size(), value, base);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(file, line, std::string("bad ") + what + " field '" + s + "'");
  }
  return value;
}

// data.pos line:
//   synset_offset lex_filenum ss_type w_cnt word lex_id [word lex_id...]
//   p_cnt [ptr...] | gloss
// w_cnt is two-digit hexadecimal; pointers and gloss are ignored.
std::vector<Synset> parse_data_file(const fs::path& path, Pos pos) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFile(path.filename().string());
  const std::string file = path.filename().string();

  std::vector<Synset> synsets;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line[0] == ' ') continue;  // license header block
    const auto fields = split_fields(line);
    if (fields.size() < 5) {
      throw ParseError(file, line_number, "truncated synset line");
    }
    Synset synset;
    synset.offset = parse_u32(fields[0], 10, file, line_number, "synset_offset");
    synset.pos = pos;
    const std::uint32_t word_count =
        parse_u32(fields[3], 16, file, line_number, "w_cnt");
    if (word_count == 0) {
      throw ParseError(file, line_number, "synset with zero words");
    }
    if (fields.size() < 4 + 2 * static_cast<std::size_t>(word_count)) {
      throw ParseError(file, line_number, "fewer words than w_cnt declares");
    }
    for (std::uint32_t w = 0; w < word_count; ++w) {
      // Words alternate with one-hex-digit lex_id fields.
      std::string lemma = ascii_lower(fields[4 + 2 * w]);
      // Adjective-satellite markers like "(a)" never occur for nouns/verbs,
      // but strip defensively on malformed input.
      const auto paren = lemma.find('(');
      if (paren != std::string::npos) lemma.resize(paren);
      if (lemma.empty()) {
        throw ParseError(file, line_number, "empty lemma");
      }
      // Lowercasing can collapse distinct surface forms; keep the first.
      if (std::find(synset.lemmas.begin(), synset.lemmas.end(), lemma) ==
          synset.lemmas.end()) {
        synset.lemmas.push_back(std::move(lemma));
      }
    }
    synsets.push_back(std::move(synset));
  }
  return synsets;
}

// index.pos line:
//   lemma pos synset_cnt p_cnt [ptr_symbol...] sense_cnt tagsense_cnt
//   synset_offset [synset_offset...]
void parse_index_file(const fs::path& path, Pos pos,
                      const std::unordered_map<std::uint32_t, std::uint32_t>&
                          offset_to_synset,
                      std::unordered_map<std::string, SynonymLexicon::Entry>*
                          index,
                      std::size_t* lemma_count) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFile(path.filename().string());
  const std::string file = path.filename().string();

  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line[0] == ' ') continue;
    const auto fields = split_fields(line);
    if (fields.size() < 6) {
      throw ParseError(file, line_number, "truncated index line");
    }
    const std::string lemma = ascii_lower(fields[0]);
    const std::uint32_t synset_count =
        parse_u32(fields[2], 10, file, line_number, "synset_cnt");
    const std::uint32_t ptr_count =
        parse_u32(fields[3], 10, file, line_number, "p_cnt");
    const std::size_t offsets_begin = 4 + ptr_count + 2;  // sense_cnt tagsense_cnt
    if (fields.size() < offsets_begin + synset_count) {
      throw ParseError(file, line_number, "fewer offsets than synset_cnt");
    }
    auto& entry = (*index)[lemma];
    auto& list = pos == Pos::kNoun ? entry.noun_synsets : entry.verb_synsets;
    for (std::uint32_t k = 0; k < synset_count; ++k) {
      const std::uint32_t offset = parse_u32(fields[offsets_begin + k], 10,
                                             file, line_number, "synset_offset");
      const auto it = offset_to_synset.find(offset);
      if (it == offset_to_synset.end()) {
        throw ParseError(file, line_number,
                         "offset " + fields[offsets_begin + k] +
                             " not present in data." +
                             (pos == Pos::kNoun ? "noun" : "verb"));
      }
      list.push_back(it->second);
    }
    ++*lemma_count;
  }
}

}  // namespace

const SynonymLexicon::Entry* SynonymLexicon::find(std::string_view word) const {
  const auto it = index_.find(ascii_lower(word));
  return it == index_.end() ? nullptr : &it->second;
}

std::size_t SynonymLexicon::lemma_count(Pos pos) const {
  return pos == Pos::kNoun ? noun_lemmas_ : verb_lemmas_;
}

SynonymLexicon parse_wndb(const std::string& dir) {
  const fs::path base(dir);
  for (const char* name : {"index.noun", "data.noun", "index.verb", "data.verb"}) {
    if (!fs::exists(base / name)) throw MissingFile(name);
  }

  SynonymLexicon lexicon;
  lexicon.noun_synsets_ = parse_data_file(base / "data.noun", Pos::kNoun);
  lexicon.verb_synsets_ = parse_data_file(base / "data.verb", Pos::kVerb);

  auto offset_map = [](const std::vector<Synset>& synsets) {
    std::unordered_map<std::uint32_t, std::uint32_t> map;
    for (std::uint32_t i = 0; i < synsets.size(); ++i) {
      map[synsets[i].offset] = i;
    }
    return map;
  };
  parse_index_file(base / "index.noun", Pos::kNoun,
                   offset_map(lexicon.noun_synsets_), &lexicon.index_,
                   &lexicon.noun_lemmas_);
  parse_index_file(base / "index.verb", Pos::kVerb,
                   offset_map(lexicon.verb_synsets_), &lexicon.index_,
                   &lexicon.verb_lemmas_);
  return lexicon;
}

std::vector<std::string> synonyms(const SynonymLexicon& lexicon,
                                  std::string_view word, Pos pos) {
  std::vector<std::string> out;
  const auto* entry = lexicon.find(word);
  if (entry == nullptr) return out;
  const std::string query = [&] {
    std::string q(word);
    for (char& c : q) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return q;
  }();

  const auto& synset_ids =
      pos == Pos::kNoun ? entry->noun_synsets : entry->verb_synsets;
  const auto& synsets = lexicon.synsets(pos);
  std::unordered_set<std::string_view> seen;
  for (const std::uint32_t id : synset_ids) {
    for (const std::string& lemma : synsets[id].lemmas) {
      if (lemma == query) continue;
      if (seen.insert(lemma).second) out.push_back(lemma);
    }
  }
  return out;
}

std::vector<ReplaceablePosition> replaceable_positions(
    const SynonymLexicon& lexicon, const TokenizedDoc& doc,
    const PosFilter& pos_filter) {
  std::vector<ReplaceablePosition> out;
  if (pos_filter.empty()) return out;
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    const auto* entry = lexicon.find(doc.tokens[i]);
    if (entry == nullptr) continue;
    bool noun_ok = pos_filter.nouns &&
                   !synonyms(lexicon, doc.tokens[i], Pos::kNoun).empty();
    bool verb_ok = pos_filter.verbs &&
                   !synonyms(lexicon, doc.tokens[i], Pos::kVerb).empty();
    if (!noun_ok && !verb_ok) continue;
    Pos pos;
    if (noun_ok && verb_ok) {
      pos = entry->verb_synsets.size() > entry->noun_synsets.size()
                ? Pos::kVerb
                : Pos::kNoun;
    } else {
      pos = noun_ok ? Pos::kNoun : Pos::kVerb;
    }
    out.push_back({i, pos});
  }
  return out;
}

}  // namespace textaug
