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
// Deterministic synthetic benchmark worlds. A world is a labeled corpus
// drawn from class-conditional synonym clusters plus the matching resources:
// a WNDB-format synonym database, a word-embedding model whose neighbors
// follow the same clusters, and a mock translation dictionary. Real corpora
// and lexicons are large and separately licensed, so demos and tests run
// against these generated stand-ins.

#ifndef TEXTAUG_DATAGEN_HPP_
#define TEXTAUG_DATAGEN_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "textaug/corpus.hpp"
#include "textaug/embeddings.hpp"
#include "textaug/wordnet.hpp"

namespace textaug {

struct SynonymCluster {
  std::vector<std::string> words;  // frequency-ranked, most common first
  Pos pos = Pos::kNoun;
  int label = -1;  // owning class for topical clusters, -1 for shared
};

struct DemoSpec {
  std::vector<std::string> label_names;
  std::size_t docs = 24000;
  std::size_t clusters_per_class = 80;
  std::size_t shared_clusters = 120;
  std::size_t min_cluster_size = 3;
  std::size_t max_cluster_size = 6;
  std::size_t doc_len_min = 15;
  std::size_t doc_len_max = 40;
  double topic_fraction = 0.55;    // share of non-stopword tokens from the
                                   // document's class clusters
  double stopword_fraction = 0.25;
  double class_confusion = 0.3;    // topic tokens drawn from a wrong class
  double label_noise = 0.05;       // labels flipped to a random other class
  std::size_t embedding_dim = 32;
  double embedding_noise = 0.22;   // within-cluster vector spread
  double class_spread = 0.18;      // cluster-center spread around the class
                                   // direction (topical geometry)
  std::uint64_t seed = 7;
};

struct DemoWorld {
  Dataset dataset;
  std::vector<SynonymCluster> clusters;
  std::vector<std::string> stopwords;
  // Ground-truth embedding table covering every cluster word and stopword.
  std::vector<std::string> embedding_vocab;
  std::vector<float> embedding_matrix;  // row-major |vocab| x embedding_dim
  std::size_t embedding_dim = 0;
};

// Four-class news-style world: longer documents, moderate noise.
DemoSpec news_demo_spec();
// Binary social-media-style world: short noisy posts.
DemoSpec social_demo_spec();

DemoWorld make_demo_world(const DemoSpec& spec);

// WNDB-format database (index.noun, data.noun, index.verb, data.verb) for
// every cluster with at least two lemmas. Synset offsets are real byte
// offsets into the data files.
void write_wndb(const std::vector<SynonymCluster>& clusters,
                const std::string& dir);

void write_embeddings_text(const DemoWorld& world, const std::string& path);
void write_embeddings_binary(const DemoWorld& world, const std::string& path);

// {"en_word": "pivot_word"} mapping every cluster word to a per-cluster
// pivot token, so a round trip canonicalizes synonyms.
void write_mock_dict(const std::vector<SynonymCluster>& clusters,
                     const std::string& path,
                     const std::string& pivot_prefix = "fx");

// CSV with a text,label header, RFC 4180 quoting.
void write_dataset_csv(const Dataset& dataset, const std::string& path);

}  // namespace textaug

#endif  // TEXTAUG_DATAGEN_HPP_
