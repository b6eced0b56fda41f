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
//
// Reader for the WNDB on-disk database layout (index.noun/data.noun and
// index.verb/data.verb). Only lemma and synset-membership fields are
// interpreted; pointer and gloss fields are skipped positionally. Synsets
// for a lemma keep the index-file order, which reflects sense frequency.

#ifndef TEXTAUG_WORDNET_HPP_
#define TEXTAUG_WORDNET_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "textaug/corpus.hpp"
#include "textaug/errors.hpp"

namespace textaug {

enum class Pos { kNoun, kVerb };

inline const char* pos_tag(Pos pos) { return pos == Pos::kNoun ? "n" : "v"; }

struct PosFilter {
  bool nouns = true;
  bool verbs = true;

  bool empty() const { return !nouns && !verbs; }
  bool has(Pos pos) const { return pos == Pos::kNoun ? nouns : verbs; }
};

struct Synset {
  std::uint32_t offset = 0;
  Pos pos = Pos::kNoun;
  std::vector<std::string> lemmas;  // lowercase, multiword joined with '_'
};

struct ReplaceablePosition {
  std::size_t token_index = 0;
  Pos pos = Pos::kNoun;

  bool operator==(const ReplaceablePosition&) const = default;
};

class SynonymLexicon {
 public:
  struct Entry {
    std::vector<std::uint32_t> noun_synsets;  // indices into synsets(kNoun)
    std::vector<std::uint32_t> verb_synsets;
  };

  const std::vector<Synset>& synsets(Pos pos) const {
    return pos == Pos::kNoun ? noun_synsets_ : verb_synsets_;
  }
  // Case-insensitive (query is ASCII-lowercased before lookup).
  const Entry* find(std::string_view word) const;
  std::size_t lemma_count(Pos pos) const;
  const std::unordered_map<std::string, Entry>& index() const { return index_; }

 private:
  friend SynonymLexicon parse_wndb(const std::string& dir);

  std::vector<Synset> noun_synsets_;
  std::vector<Synset> verb_synsets_;
  std::unordered_map<std::string, Entry> index_;
  std::size_t noun_lemmas_ = 0;
  std::size_t verb_lemmas_ = 0;
};

// Parses index.{noun,verb} and data.{noun,verb} from `dir`. License header
// lines (leading two spaces) are skipped. Every synset offset referenced by
// an index entry must resolve in the matching data file.
// Throws MissingFile and ParseError.
SynonymLexicon parse_wndb(const std::string& dir);

// Union of lemmas across the word's synsets for `pos`, in synset-sense order
// then lemma order, excluding the query word itself; duplicates removed.
std::vector<std::string> synonyms(const SynonymLexicon& lexicon,
                                  std::string_view word, Pos pos);

// Token positions that have at least one synonym under some part of speech
// in the filter. Each position is reported once, with the part of speech
// under which the token has more synsets (ties prefer nouns) among those
// that actually yield synonyms.
std::vector<ReplaceablePosition> replaceable_positions(
    const SynonymLexicon& lexicon, const TokenizedDoc& doc,
    const PosFilter& pos_filter);

}  // namespace textaug

#endif  // TEXTAUG_WORDNET_HPP_
