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
// Generates the synthetic demo worlds: two labeled corpora with matching
// WNDB synonym databases, embedding files, mock translation dictionaries,
// and ready-to-run experiment configs.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "textaug/datagen.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace textaug;

namespace {

void write_config(const std::string& path, const json& config) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << config.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generate synthetic demo datasets and resources"};
  std::string out_dir = "demo";
  std::size_t docs = 24000;
  std::uint64_t seed = 7;
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--docs", docs, "documents per dataset");
  app.add_option("--seed", seed, "generator seed");
  CLI11_PARSE(app, argc, argv);

  try {
    fs::create_directories(out_dir);

    DemoSpec news = news_demo_spec();
    news.docs = docs;
    news.seed = seed;
    const DemoWorld news_world = make_demo_world(news);
    write_dataset_csv(news_world.dataset, out_dir + "/news.csv");
    write_wndb(news_world.clusters, out_dir + "/wordnet");
    write_embeddings_text(news_world, out_dir + "/news_vectors.txt");
    write_embeddings_binary(news_world, out_dir + "/news_vectors.bin");
    write_mock_dict(news_world.clusters, out_dir + "/mock_fr.json");

    DemoSpec social = social_demo_spec();
    social.docs = docs;
    social.seed = seed + 1;
    const DemoWorld social_world = make_demo_world(social);
    write_dataset_csv(social_world.dataset, out_dir + "/social.csv");
    write_embeddings_text(social_world, out_dir + "/social_vectors.txt");

    const json dataset_news{{"path", "news.csv"},
                            {"format", "csv"},
                            {"text_column", "text"},
                            {"label_column", "label"}};
    write_config(out_dir + "/exp_synonym.json",
                 json{{"schema_version", 1},
                      {"dataset", dataset_news},
                      {"method", "synonym"},
                      {"model", "softmax_tfidf"},
                      {"train_sizes", {1000, 10000}},
                      {"val_size", 10000},
                      {"n_aug", 5},
                      {"seeds", {1, 2, 3, 4, 5}},
                      {"epochs", 30},
                      {"augment", {{"p", 0.5}, {"pos", "both"}}},
                      {"resources", {{"wordnet_dir", "wordnet"}}}});
    write_config(out_dir + "/exp_baseline.json",
                 json{{"schema_version", 1},
                      {"dataset", dataset_news},
                      {"method", "none"},
                      {"model", "softmax_tfidf"},
                      {"train_sizes", {1000, 10000}},
                      {"val_size", 10000},
                      {"n_aug", 5},
                      {"seeds", {1, 2, 3, 4, 5}},
                      {"epochs", 30}});
    // Overfitting study: both arms run the raw 10k split for 100 epochs;
    // compare against the same config with "method": "none".
    write_config(
        out_dir + "/exp_mixup_mlp.json",
        json{{"schema_version", 1},
             {"dataset", dataset_news},
             {"method", "mixup"},
             {"model", "mlp_embedavg"},
             {"train_sizes", {10000}},
             {"val_size", 10000},
             {"n_aug", 0},
             {"seeds", {1, 2, 3}},
             {"epochs", 100},
             {"hidden", 128},
             {"mixup", {{"alpha", 0.2}}},
             {"resources", {{"embedding_path", "news_vectors.txt"}}}});
    write_config(
        out_dir + "/exp_rtt.json",
        json{{"schema_version", 1},
             {"dataset", dataset_news},
             {"method", "rtt"},
             {"model", "softmax_tfidf"},
             {"train_sizes", {1000}},
             {"val_size", 10000},
             {"n_aug", 5},
             {"seeds", {1, 2, 3}},
             {"epochs", 30},
             {"resources",
              {{"mock_dict", "mock_fr.json"}, {"backend", "mock"},
               {"pivots", {"fr"}}}}});

    std::cerr << "demo data written to " << out_dir << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
