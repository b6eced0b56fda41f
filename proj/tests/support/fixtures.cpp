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

#include "support/fixtures.hpp"

#include <cstdio>
#include <map>
#include <vector>

namespace textaug::testing {
namespace {

struct FixtureSynset {
  std::string key;  // referenced from the index description below
  std::vector<std::string> lemmas;
};

// Builds one data.pos file; returns key -> zero-padded byte offset.
std::map<std::string, std::string> write_data_file(
    const std::string& path, char pos_char,
    const std::vector<FixtureSynset>& synsets) {
  const std::string header =
      "  1 miniature fixture database\n  2 for parser tests\n";
  std::string data = header;
  std::map<std::string, std::string> offsets;
  char buf[64];
  for (const auto& synset : synsets) {
    std::snprintf(buf, sizeof(buf), "%08zu", data.size());
    offsets[synset.key] = buf;
    std::string line = std::string(buf) + " 03 " + pos_char + " ";
    std::snprintf(buf, sizeof(buf), "%02zx", synset.lemmas.size());
    line += buf;
    for (const auto& lemma : synset.lemmas) line += " " + lemma + " 0";
    line += " 001 @ 00000000 ";
    line += pos_char;
    line += " 0000 | fixture gloss\n";
    data += line;
  }
  write_file(path, data);
  return offsets;
}

}  // namespace

void write_mini_wndb(const std::string& dir) {
  std::filesystem::create_directories(dir);

  // Nouns. "dog" appears in two synsets; "bark" has a single-lemma synset
  // (so no noun synonyms); "cat" has a multiword co-lemma.
  const std::vector<FixtureSynset> nouns = {
      {"dog1", {"dog", "domestic_dog"}},
      {"dog2", {"dog", "frank", "hotdog"}},
      {"cat1", {"cat", "true_cat"}},
      {"car1", {"car", "auto", "automobile"}},
      {"bark_n", {"bark"}},
  };
  const auto noun_offsets =
      write_data_file(dir + "/data.noun", 'n', nouns);

  // Verbs. "bark" is also a verb with a real synonym.
  const std::vector<FixtureSynset> verbs = {
      {"run1", {"run", "sprint"}},
      {"bark_v", {"bark", "yelp"}},
      {"be1", {"be"}},
  };
  const auto verb_offsets =
      write_data_file(dir + "/data.verb", 'v', verbs);

  const std::string header =
      "  1 miniature fixture database\n  2 for parser tests\n";

  std::string index_noun = header;
  auto noun_line = [&](const std::string& lemma,
                       const std::vector<std::string>& keys) {
    index_noun += lemma + " n " + std::to_string(keys.size()) + " 1 @ " +
                  std::to_string(keys.size()) + " 0";
    for (const auto& key : keys) index_noun += " " + noun_offsets.at(key);
    index_noun += "  \n";
  };
  noun_line("auto", {"car1"});
  noun_line("automobile", {"car1"});
  noun_line("bark", {"bark_n"});
  noun_line("car", {"car1"});
  noun_line("cat", {"cat1"});
  noun_line("dog", {"dog1", "dog2"});
  noun_line("domestic_dog", {"dog1"});
  noun_line("frank", {"dog2"});
  noun_line("hotdog", {"dog2"});
  noun_line("true_cat", {"cat1"});
  write_file(dir + "/index.noun", index_noun);

  std::string index_verb = header;
  auto verb_line = [&](const std::string& lemma,
                       const std::vector<std::string>& keys) {
    index_verb += lemma + " v " + std::to_string(keys.size()) + " 0 " +
                  std::to_string(keys.size()) + " 0";
    for (const auto& key : keys) index_verb += " " + verb_offsets.at(key);
    index_verb += "  \n";
  };
  verb_line("bark", {"bark_v"});
  verb_line("be", {"be1"});
  verb_line("run", {"run1"});
  verb_line("sprint", {"run1"});
  verb_line("yelp", {"bark_v"});
  write_file(dir + "/index.verb", index_verb);
}

}  // namespace textaug::testing
