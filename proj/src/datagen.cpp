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

#include "textaug/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <set>

#include <json.hpp>

#include "textaug/rng.hpp"

namespace textaug {
namespace {

namespace fs = std::filesystem;

const char* const kStopwords[] = {"the", "a",  "to",   "of",  "and", "in",
                                  "on",  "is", "was",  "for", "it",  "with",
                                  "at",  "by", "that", "as"};

// Pronounceable word: 2-4 consonant+vowel syllables, optional coda.
std::string make_word(RngStream& rng) {
  static const char* onsets[] = {"b",  "br", "c",  "cl", "d",  "dr", "f",
                                 "g",  "gr", "h",  "j",  "k",  "l",  "m",
                                 "n",  "p",  "pl", "r",  "s",  "st", "t",
                                 "tr", "v",  "w",  "z",  "sh", "ch", "th"};
  static const char* vowels[] = {"a", "e", "i", "o", "u", "ai", "ea", "ou"};
  static const char* codas[] = {"", "", "", "n", "r", "s", "l", "t", "m"};
  std::string word;
  const std::size_t syllables = 2 + rng.below(3);
  for (std::size_t s = 0; s < syllables; ++s) {
    word += onsets[rng.below(std::size(onsets))];
    word += vowels[rng.below(std::size(vowels))];
  }
  word += codas[rng.below(std::size(codas))];
  return word;
}

std::string fresh_word(RngStream& rng, std::set<std::string>* used) {
  for (;;) {
    std::string w = make_word(rng);
    if (used->insert(w).second) return w;
  }
}

// Skewed pick: favors low ranks, roughly Zipf-like.
std::size_t skewed_index(std::size_t n, RngStream& rng) {
  const double u = rng.next_double();
  return std::min(n - 1, static_cast<std::size_t>(u * u * static_cast<double>(n)));
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

DemoSpec news_demo_spec() {
  DemoSpec spec;
  spec.label_names = {"politics", "sports", "business", "science"};
  spec.clusters_per_class = 110;
  spec.shared_clusters = 150;
  spec.doc_len_min = 8;
  spec.doc_len_max = 30;
  spec.embedding_dim = 50;
  spec.embedding_noise = 0.15;
  spec.label_noise = 0.07;
  return spec;
}

DemoSpec social_demo_spec() {
  DemoSpec spec;
  spec.label_names = {"negative", "positive"};
  spec.docs = 24000;
  spec.clusters_per_class = 110;
  spec.shared_clusters = 140;
  spec.doc_len_min = 5;
  spec.doc_len_max = 16;
  spec.topic_fraction = 0.5;
  spec.stopword_fraction = 0.3;
  spec.class_confusion = 0.2;
  spec.label_noise = 0.12;
  spec.embedding_dim = 25;
  spec.seed = 11;
  return spec;
}

DemoWorld make_demo_world(const DemoSpec& spec) {
  DemoWorld world;
  world.stopwords.assign(std::begin(kStopwords), std::end(kStopwords));
  RngStream rng(spec.seed);
  std::set<std::string> used(world.stopwords.begin(), world.stopwords.end());

  const std::size_t classes = spec.label_names.size();
  auto add_cluster = [&](int label) {
    SynonymCluster cluster;
    cluster.label = label;
    cluster.pos = rng.below(3) == 0 ? Pos::kVerb : Pos::kNoun;
    const std::size_t size =
        spec.min_cluster_size +
        rng.below(spec.max_cluster_size - spec.min_cluster_size + 1);
    for (std::size_t w = 0; w < size; ++w) {
      cluster.words.push_back(fresh_word(rng, &used));
    }
    world.clusters.push_back(std::move(cluster));
  };
  for (std::size_t c = 0; c < classes; ++c) {
    for (std::size_t k = 0; k < spec.clusters_per_class; ++k) {
      add_cluster(static_cast<int>(c));
    }
  }
  for (std::size_t k = 0; k < spec.shared_clusters; ++k) add_cluster(-1);

  // Light polysemy: a few clusters adopt the head word of a sibling cluster
  // (same class, same part of speech), giving that word two synsets.
  for (std::size_t i = 0; i < world.clusters.size(); ++i) {
    if (rng.next_double() >= 0.1) continue;
    auto& cluster = world.clusters[i];
    for (std::size_t probe = 0; probe < 20; ++probe) {
      const std::size_t j = rng.below(world.clusters.size());
      const auto& other = world.clusters[j];
      if (j == i || other.label != cluster.label || other.pos != cluster.pos) {
        continue;
      }
      const std::string& adopted = other.words.front();
      if (std::find(cluster.words.begin(), cluster.words.end(), adopted) ==
          cluster.words.end()) {
        cluster.words.push_back(adopted);
      }
      break;
    }
  }
  // A few multiword lemmas; they appear as substitutable synonyms only.
  for (auto& cluster : world.clusters) {
    if (cluster.words.size() >= 3 && rng.next_double() < 0.05) {
      cluster.words.push_back(cluster.words[0] + "_" + cluster.words[1]);
    }
  }

  // Per-class cluster index used when sampling document tokens.
  std::vector<std::vector<std::size_t>> class_clusters(classes);
  std::vector<std::size_t> shared;
  for (std::size_t i = 0; i < world.clusters.size(); ++i) {
    if (world.clusters[i].label >= 0) {
      class_clusters[static_cast<std::size_t>(world.clusters[i].label)]
          .push_back(i);
    } else {
      shared.push_back(i);
    }
  }

  auto single_words = [](const SynonymCluster& cluster) {
    std::vector<const std::string*> out;
    for (const auto& w : cluster.words) {
      if (w.find('_') == std::string::npos) out.push_back(&w);
    }
    return out;
  };

  world.dataset.label_names = spec.label_names;
  world.dataset.task_kind =
      classes <= 2 ? TaskKind::kBinary : TaskKind::kCategorical;
  for (std::size_t d = 0; d < spec.docs; ++d) {
    const auto true_class = rng.below(classes);
    const std::size_t length =
        spec.doc_len_min + rng.below(spec.doc_len_max - spec.doc_len_min + 1);
    std::string text;
    for (std::size_t t = 0; t < length; ++t) {
      const std::string* word;
      if (rng.next_double() < spec.stopword_fraction) {
        word = &world.stopwords[skewed_index(world.stopwords.size(), rng)];
      } else if (rng.next_double() < spec.topic_fraction) {
        // Topic token, sometimes from a wrong class so classes overlap.
        std::size_t source_class = true_class;
        if (classes > 1 && rng.next_double() < spec.class_confusion) {
          source_class = (true_class + 1 + rng.below(classes - 1)) % classes;
        }
        const auto& pool = class_clusters[source_class];
        const auto& cluster =
            world.clusters[pool[skewed_index(pool.size(), rng)]];
        const auto words = single_words(cluster);
        word = words[skewed_index(words.size(), rng)];
      } else {
        const auto& cluster =
            world.clusters[shared[skewed_index(shared.size(), rng)]];
        const auto words = single_words(cluster);
        word = words[skewed_index(words.size(), rng)];
      }
      if (!text.empty()) text.push_back(' ');
      text += *word;
    }
    int label = static_cast<int>(true_class);
    if (rng.next_double() < spec.label_noise && classes > 1) {
      label = static_cast<int>(
          (true_class + 1 + rng.below(classes - 1)) % classes);
    }
    world.dataset.records.push_back(
        Document{static_cast<std::int64_t>(d), std::move(text), label,
                 Origin::original()});
  }

  // Embeddings: one center per cluster, members scattered around it, plus a
  // dedicated stopword cluster so function words swap among themselves.
  world.embedding_dim = spec.embedding_dim;
  auto normalize = [](std::vector<float>* v) {
    double norm = 0.0;
    for (const float x : *v) norm += static_cast<double>(x) * x;
    norm = std::sqrt(norm);
    if (norm > 0.0) {
      for (float& x : *v) x = static_cast<float>(x / norm);
    }
  };
  auto random_unit = [&](RngStream& r) {
    std::vector<float> v(spec.embedding_dim);
    for (float& x : v) x = static_cast<float>(r.next_normal());
    normalize(&v);
    return v;
  };
  std::set<std::string> in_vocab;
  auto add_vector = [&](const std::string& word,
                        const std::vector<float>& center, RngStream& r) {
    std::vector<float> v(spec.embedding_dim);
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = center[i] +
             static_cast<float>(spec.embedding_noise * r.next_normal());
    }
    normalize(&v);
    // Polysemous words keep the vector of their first cluster.
    if (!in_vocab.insert(word).second) return;
    world.embedding_vocab.push_back(word);
    world.embedding_matrix.insert(world.embedding_matrix.end(), v.begin(),
                                  v.end());
  };
  RngStream emb_rng = RngStream::derive(spec.seed, 0xE3B);
  // Topical geometry: clusters of one class scatter around a shared class
  // direction, so class membership survives document-level averaging.
  std::vector<std::vector<float>> class_centers;
  for (std::size_t c = 0; c < classes; ++c) {
    class_centers.push_back(random_unit(emb_rng));
  }
  for (const auto& cluster : world.clusters) {
    std::vector<float> center;
    if (cluster.label >= 0) {
      center = class_centers[static_cast<std::size_t>(cluster.label)];
      for (float& x : center) {
        x += static_cast<float>(spec.class_spread * emb_rng.next_normal());
      }
      normalize(&center);
    } else {
      center = random_unit(emb_rng);
    }
    for (const auto& word : cluster.words) {
      if (word.find('_') != std::string::npos) continue;
      add_vector(word, center, emb_rng);
    }
  }
  const auto stop_center = random_unit(emb_rng);
  for (const auto& word : world.stopwords) {
    add_vector(word, stop_center, emb_rng);
  }
  return world;
}

namespace {

struct WndbSynset {
  std::size_t cluster = 0;
  std::vector<std::string> lemmas;
};

// Writes one POS pair (data.pos + index.pos). Offsets in both files are the
// byte positions of data lines, as in the real database layout.
void write_wndb_pos(const std::vector<SynonymCluster>& clusters, Pos pos,
                    const fs::path& dir) {
  const std::string suffix = pos == Pos::kNoun ? "noun" : "verb";
  const char pos_char = pos == Pos::kNoun ? 'n' : 'v';

  const std::string header =
      "  1 This database was generated synthetically for demos and tests.\n"
      "  2 Layout follows the WNDB lexicographer file format.\n";

  std::vector<WndbSynset> synsets;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (clusters[i].pos != pos || clusters[i].words.size() < 2) continue;
    synsets.push_back({i, clusters[i].words});
  }

  // Pass 1: build data lines with real byte offsets. The offset field is
  // fixed width, so line lengths do not depend on the values chosen.
  std::string data = header;
  std::map<std::size_t, std::size_t> cluster_offset;
  char buf[64];
  for (const auto& synset : synsets) {
    const std::size_t offset = data.size();
    cluster_offset[synset.cluster] = offset;
    std::snprintf(buf, sizeof(buf), "%08zu 03 %c %02zx", offset, pos_char,
                  synset.lemmas.size());
    std::string line = buf;
    for (const auto& lemma : synset.lemmas) {
      line += " " + lemma + " 0";
    }
    line += " 000 | generated synset\n";
    data += line;
  }

  std::ofstream data_out(dir / ("data." + suffix), std::ios::binary);
  if (!data_out) throw IoError("cannot write data." + suffix);
  data_out << data;

  // Pass 2: index lines, sorted by lemma, synsets in sense order (a word's
  // home cluster first, adopted clusters after).
  std::map<std::string, std::vector<std::size_t>> lemma_offsets;
  for (const auto& synset : synsets) {
    for (const auto& lemma : synset.lemmas) {
      lemma_offsets[lemma].push_back(cluster_offset.at(synset.cluster));
    }
  }
  std::ofstream index_out(dir / ("index." + suffix), std::ios::binary);
  if (!index_out) throw IoError("cannot write index." + suffix);
  index_out << header;
  for (const auto& [lemma, offsets] : lemma_offsets) {
    index_out << lemma << " " << pos_char << " " << offsets.size();
    // Two pointer symbols, exercising the positional skip in readers.
    index_out << " 2 @ ~ " << offsets.size() << " 0";
    for (const std::size_t offset : offsets) {
      std::snprintf(buf, sizeof(buf), " %08zu", offset);
      index_out << buf;
    }
    index_out << "  \n";
  }
}

}  // namespace

void write_wndb(const std::vector<SynonymCluster>& clusters,
                const std::string& dir) {
  fs::create_directories(dir);
  write_wndb_pos(clusters, Pos::kNoun, dir);
  write_wndb_pos(clusters, Pos::kVerb, dir);
}

void write_embeddings_text(const DemoWorld& world, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << world.embedding_vocab.size() << " " << world.embedding_dim << "\n";
  char buf[32];
  for (std::size_t w = 0; w < world.embedding_vocab.size(); ++w) {
    out << world.embedding_vocab[w];
    for (std::size_t i = 0; i < world.embedding_dim; ++i) {
      std::snprintf(buf, sizeof(buf), " %.9g",
                    world.embedding_matrix[w * world.embedding_dim + i]);
      out << buf;
    }
    out << "\n";
  }
}

void write_embeddings_binary(const DemoWorld& world, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << world.embedding_vocab.size() << " " << world.embedding_dim << "\n";
  for (std::size_t w = 0; w < world.embedding_vocab.size(); ++w) {
    out << world.embedding_vocab[w] << ' ';
    for (std::size_t i = 0; i < world.embedding_dim; ++i) {
      const float value = world.embedding_matrix[w * world.embedding_dim + i];
      std::uint32_t bits;
      std::memcpy(&bits, &value, 4);
      const unsigned char bytes[4] = {
          static_cast<unsigned char>(bits & 0xFF),
          static_cast<unsigned char>((bits >> 8) & 0xFF),
          static_cast<unsigned char>((bits >> 16) & 0xFF),
          static_cast<unsigned char>((bits >> 24) & 0xFF)};
      out.write(reinterpret_cast<const char*>(bytes), 4);
    }
    out << "\n";
  }
}

void write_mock_dict(const std::vector<SynonymCluster>& clusters,
                     const std::string& path,
                     const std::string& pivot_prefix) {
  nlohmann::json dict = nlohmann::json::object();
  for (const auto& cluster : clusters) {
    const std::string pivot = pivot_prefix + cluster.words.front();
    for (const auto& word : cluster.words) {
      if (word.find('_') != std::string::npos) continue;
      if (!dict.contains(word)) dict[word] = pivot;
    }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << dict.dump(2) << "\n";
}

void write_dataset_csv(const Dataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << "text,label\n";
  for (const auto& rec : dataset.records) {
    out << csv_escape(rec.text) << ","
        << csv_escape(dataset.label_names[static_cast<std::size_t>(rec.label)])
        << "\n";
  }
}

}  // namespace textaug
