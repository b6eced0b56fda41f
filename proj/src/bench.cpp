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

#include "textaug/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "textaug/learn.hpp"
#include "textaug/rng.hpp"
#include "textaug/translate.hpp"
#include "textaug/wordnet.hpp"

namespace textaug {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct MethodInfo {
  Method method;
  const char* name;
  TextAugKind text;
  bool mixup;
};

constexpr MethodInfo kMethods[] = {
    {Method::kNone, "none", TextAugKind::kIdentity, false},
    {Method::kSynonym, "synonym", TextAugKind::kSynonym, false},
    {Method::kEmbedding, "embedding", TextAugKind::kEmbedding, false},
    {Method::kRtt, "rtt", TextAugKind::kRtt, false},
    {Method::kMixup, "mixup", TextAugKind::kIdentity, true},
    {Method::kSynonymMixup, "synonym+mixup", TextAugKind::kSynonym, true},
    {Method::kEmbeddingMixup, "embedding+mixup", TextAugKind::kEmbedding, true},
    {Method::kRttMixup, "rtt+mixup", TextAugKind::kRtt, true},
};

const MethodInfo& info_for(Method method) {
  for (const auto& info : kMethods) {
    if (info.method == method) return info;
  }
  throw ConfigError("unknown method enumerator");
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace

const char* method_name(Method method) { return info_for(method).name; }

std::optional<Method> method_from_name(std::string_view name) {
  for (const auto& info : kMethods) {
    if (name == info.name) return info.method;
  }
  return std::nullopt;
}

std::vector<std::string> all_method_names() {
  std::vector<std::string> out;
  for (const auto& info : kMethods) out.emplace_back(info.name);
  return out;
}

bool method_uses_mixup(Method method) { return info_for(method).mixup; }

TextAugKind method_text_augmenter(Method method) { return info_for(method).text; }

const char* bench_model_name(BenchModel model) {
  return model == BenchModel::kSoftmaxTfidf ? "softmax_tfidf" : "mlp_embedavg";
}

std::optional<BenchModel> bench_model_from_name(std::string_view name) {
  if (name == "softmax_tfidf") return BenchModel::kSoftmaxTfidf;
  if (name == "mlp_embedavg") return BenchModel::kMlpEmbedAvg;
  return std::nullopt;
}

std::string CellKey::str() const {
  return std::string(method_name(method)) + "_" + std::to_string(train_size) +
         "_s" + std::to_string(seed);
}

std::vector<std::uint64_t> ExperimentConfig::resolved_seeds() const {
  if (!seeds.empty()) return seeds;
  std::vector<std::uint64_t> out;
  for (std::size_t r = 1; r <= repeats; ++r) out.push_back(r);
  return out;
}

std::size_t ExperimentConfig::effective_n_aug() const {
  if (method_text_augmenter(method) == TextAugKind::kRtt) {
    return std::min(n_aug, resources.pivots.size());
  }
  return n_aug;
}

void ExperimentConfig::validate() const {
  if (schema_version != 1) {
    throw ConfigError("unsupported schema_version " +
                      std::to_string(schema_version));
  }
  if (dataset_path.empty()) throw ConfigError("dataset.path is required");
  if (dataset_format != "csv" && dataset_format != "jsonl") {
    throw ConfigError("dataset.format must be csv or jsonl");
  }
  if (train_sizes.empty()) throw ConfigError("train_sizes must be non-empty");
  if (repeats < 1) throw ConfigError("repeats must be >= 1");
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  augment.validate();
  if (!(mixup.alpha > 0.0)) throw ConfigError("mixup.alpha must be > 0");
  const TextAugKind text = method_text_augmenter(method);
  if (text == TextAugKind::kSynonym && resources.wordnet_dir.empty()) {
    throw ConfigError("method needs resources.wordnet_dir");
  }
  if (text == TextAugKind::kEmbedding && resources.embedding_path.empty()) {
    throw ConfigError("method needs resources.embedding_path");
  }
  if (model == BenchModel::kMlpEmbedAvg && resources.embedding_path.empty()) {
    throw ConfigError("mlp_embedavg model needs resources.embedding_path");
  }
  if (text == TextAugKind::kRtt) {
    if (resources.pivots.empty()) throw ConfigError("rtt needs >= 1 pivot");
    if (resources.backend == "mock") {
      if (resources.mock_dict.empty()) {
        throw ConfigError("rtt mock backend needs resources.mock_dict");
      }
    } else if (resources.backend == "http") {
      if (resources.http_url.empty()) {
        throw ConfigError("rtt http backend needs resources.http_url");
      }
    } else {
      throw ConfigError("resources.backend must be mock or http");
    }
  }
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }

  ExperimentConfig cfg;
  const fs::path base = fs::path(path).parent_path();
  auto resolve = [&](const std::string& p) {
    if (p.empty()) return p;
    const fs::path fp(p);
    return fp.is_absolute() ? p : (base / fp).string();
  };

  try {
    cfg.schema_version = j.value("schema_version", 1);
    const json& ds = j.at("dataset");
    cfg.dataset_path = resolve(ds.at("path").get<std::string>());
    cfg.dataset_format = ds.value("format", std::string("csv"));
    cfg.columns.has_header = ds.value("has_header", true);
    if (ds.contains("text_column")) {
      cfg.columns.text = ColumnRef::by_name(ds.at("text_column").get<std::string>());
    }
    if (ds.contains("label_column")) {
      cfg.columns.label =
          ColumnRef::by_name(ds.at("label_column").get<std::string>());
    }
    if (ds.contains("text_index")) {
      cfg.columns.text = ColumnRef::by_index(ds.at("text_index").get<int>());
    }
    if (ds.contains("label_index")) {
      cfg.columns.label = ColumnRef::by_index(ds.at("label_index").get<int>());
    }

    const std::string method = j.at("method").get<std::string>();
    const auto parsed_method = method_from_name(method);
    if (!parsed_method) {
      std::string valid;
      for (const auto& name : all_method_names()) {
        if (!valid.empty()) valid += ", ";
        valid += name;
      }
      throw ConfigError("unknown method '" + method + "'; valid methods: " + valid);
    }
    cfg.method = *parsed_method;

    const std::string model = j.value("model", std::string("softmax_tfidf"));
    const auto parsed_model = bench_model_from_name(model);
    if (!parsed_model) {
      throw ConfigError("unknown model '" + model +
                        "'; valid models: softmax_tfidf, mlp_embedavg");
    }
    cfg.model = *parsed_model;

    cfg.train_sizes = j.at("train_sizes").get<std::vector<std::size_t>>();
    cfg.val_size = j.at("val_size").get<std::size_t>();
    cfg.n_aug = j.value("n_aug", std::size_t{5});
    cfg.repeats = j.value("repeats", std::size_t{5});
    if (j.contains("seeds")) {
      cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
      if (!cfg.seeds.empty()) cfg.repeats = cfg.seeds.size();
    }
    cfg.epochs = j.value("epochs", std::size_t{30});
    cfg.batch_size = j.value("batch_size", std::size_t{128});
    cfg.hidden = j.value("hidden", std::size_t{64});
    if (j.contains("adadelta")) {
      const json& a = j.at("adadelta");
      cfg.adadelta_rho = a.value("rho", 0.95);
      cfg.adadelta_epsilon = a.value("epsilon", 1e-6);
    }

    if (j.contains("augment")) {
      const json& a = j.at("augment");
      cfg.augment.p = a.value("p", 0.5);
      cfg.augment.top_k = a.value("top_k", std::size_t{10});
      cfg.augment.runs = a.value("runs", std::size_t{1});
      const std::string pos = a.value("pos", std::string("both"));
      if (pos == "noun") {
        cfg.augment.pos_filter = {true, false};
      } else if (pos == "verb") {
        cfg.augment.pos_filter = {false, true};
      } else if (pos == "both") {
        cfg.augment.pos_filter = {true, true};
      } else {
        throw ConfigError("augment.pos must be noun, verb, or both");
      }
    }
    if (j.contains("mixup")) {
      const json& m = j.at("mixup");
      cfg.mixup.alpha = m.value("alpha", 0.2);
      cfg.mixup.same_class_only = m.value("same_class_only", false);
    }
    if (j.contains("resources")) {
      const json& r = j.at("resources");
      cfg.resources.wordnet_dir = resolve(r.value("wordnet_dir", std::string()));
      cfg.resources.embedding_path =
          resolve(r.value("embedding_path", std::string()));
      cfg.resources.mock_dict = resolve(r.value("mock_dict", std::string()));
      cfg.resources.backend = r.value("backend", std::string("mock"));
      cfg.resources.http_url = r.value("http_url", std::string());
      cfg.resources.api_key_env =
          r.value("api_key_env", std::string("TEXTAUG_TRANSLATE_API_KEY"));
      if (r.contains("pivots")) {
        cfg.resources.pivots = r.at("pivots").get<std::vector<std::string>>();
      }
      cfg.resources.requests_per_second = r.value("requests_per_second", 2.0);
    }
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  cfg.validate();
  return cfg;
}

namespace {

// Everything loaded once and shared read-only across cells.
struct LoadedResources {
  Dataset dataset;
  std::optional<SynonymLexicon> lexicon;
  std::optional<EmbeddingModel> embeddings;
  std::unique_ptr<TranslationBackend> backend;
};

LoadedResources load_resources(const ExperimentConfig& cfg) {
  LoadedResources res;
  if (!fs::exists(cfg.dataset_path)) {
    throw ResourceMissing("dataset not found: " + cfg.dataset_path);
  }
  res.dataset = cfg.dataset_format == "csv"
                    ? load_csv(cfg.dataset_path, cfg.columns)
                    : read_jsonl_file(cfg.dataset_path);

  const TextAugKind text = method_text_augmenter(cfg.method);
  if (text == TextAugKind::kSynonym) {
    if (!fs::exists(cfg.resources.wordnet_dir)) {
      throw ResourceMissing("wordnet_dir not found: " + cfg.resources.wordnet_dir);
    }
    res.lexicon = parse_wndb(cfg.resources.wordnet_dir);
  }
  if (text == TextAugKind::kEmbedding || cfg.model == BenchModel::kMlpEmbedAvg) {
    const std::string& path = cfg.resources.embedding_path;
    if (!fs::exists(path)) {
      throw ResourceMissing("embedding_path not found: " + path);
    }
    res.embeddings = path.ends_with(".bin") ? load_binary_format(path)
                                            : load_text_format(path);
  }
  if (text == TextAugKind::kRtt) {
    if (cfg.resources.backend == "mock") {
      if (!fs::exists(cfg.resources.mock_dict)) {
        throw ResourceMissing("mock_dict not found: " + cfg.resources.mock_dict);
      }
      res.backend = std::make_unique<MockTranslationBackend>(
          MockTranslationBackend::from_file(cfg.resources.mock_dict));
    } else {
      HttpBackendConfig http;
      http.url = cfg.resources.http_url;
      http.requests_per_second = cfg.resources.requests_per_second;
      if (const char* key = std::getenv(cfg.resources.api_key_env.c_str())) {
        http.api_key = key;
      }
      res.backend = std::make_unique<HttpTranslationBackend>(http);
    }
  }
  return res;
}

std::unique_ptr<Augmenter> make_cell_augmenter(const ExperimentConfig& cfg,
                                               const LoadedResources& res) {
  switch (method_text_augmenter(cfg.method)) {
    case TextAugKind::kIdentity:
      return make_identity_augmenter();
    case TextAugKind::kSynonym:
      return make_synonym_augmenter(*res.lexicon, cfg.augment);
    case TextAugKind::kEmbedding:
      return make_embedding_augmenter(*res.embeddings, cfg.augment);
    case TextAugKind::kRtt:
      return make_rtt_augmenter(*res.backend, cfg.resources.pivots);
  }
  throw ConfigError("unreachable augmenter kind");
}

std::vector<TokenizedDoc> tokenize_all(const Dataset& dataset) {
  std::vector<TokenizedDoc> out;
  out.reserve(dataset.size());
  for (const auto& rec : dataset.records) out.push_back(tokenize(rec.text));
  return out;
}

std::vector<int> labels_of(const Dataset& dataset) {
  std::vector<int> out;
  out.reserve(dataset.size());
  for (const auto& rec : dataset.records) out.push_back(rec.label);
  return out;
}

json cell_to_json(const CellResult& cell) {
  return json{{"method", method_name(cell.key.method)},
              {"train_size", cell.key.train_size},
              {"seed", cell.key.seed},
              {"status", cell.status},
              {"error", cell.error},
              {"final_val_error", cell.final_val_error},
              {"best_val_error", cell.best_val_error},
              {"epochs", cell.epochs},
              {"n_aug", cell.n_aug},
              {"trainlog_file", cell.trainlog_file}};
}

CellResult cell_from_json(const json& j) {
  CellResult cell;
  const auto method = method_from_name(j.at("method").get<std::string>());
  if (!method) throw IoError("bad method in cell checkpoint");
  cell.key.method = *method;
  cell.key.train_size = j.at("train_size").get<std::size_t>();
  cell.key.seed = j.at("seed").get<std::uint64_t>();
  cell.status = j.at("status").get<std::string>();
  cell.error = j.at("error").get<std::string>();
  cell.final_val_error = j.at("final_val_error").get<double>();
  cell.best_val_error = j.at("best_val_error").get<double>();
  cell.epochs = j.at("epochs").get<std::size_t>();
  cell.n_aug = j.at("n_aug").get<std::size_t>();
  cell.trainlog_file = j.at("trainlog_file").get<std::string>();
  return cell;
}

CellResult run_cell(const ExperimentConfig& cfg, const LoadedResources& res,
                    const CellKey& key, const std::string& out_dir) {
  CellResult cell;
  cell.key = key;
  cell.n_aug = cfg.effective_n_aug();
  cell.epochs = cfg.epochs;
  cell.trainlog_file = "cells/" + key.str() + "_log.csv";

  const auto [train_set, val] =
      split(res.dataset, SplitSpec{key.train_size, cfg.val_size, key.seed});

  const auto augmenter = make_cell_augmenter(cfg, res);
  const std::uint64_t aug_seed = RngStream::derive(key.seed, 0xA06).next_u64();
  const Dataset augmented =
      build_augmented(train_set, *augmenter, cell.n_aug, aug_seed);

  const auto train_tokens = tokenize_all(augmented);
  const auto val_tokens = tokenize_all(val);

  FeatureMatrix train_features, val_features;
  if (cfg.model == BenchModel::kSoftmaxTfidf) {
    // Refit on this cell's augmented training rows only; augmented rows are
    // training data too.
    const TfidfModel tfidf = tfidf_fit(train_tokens);
    train_features = tfidf_transform(tfidf, train_tokens);
    val_features = tfidf_transform(tfidf, val_tokens);
  } else {
    std::vector<std::vector<float>> train_rows, val_rows;
    train_rows.reserve(train_tokens.size());
    for (const auto& doc : train_tokens) {
      train_rows.push_back(embed_average(*res.embeddings, doc));
    }
    val_rows.reserve(val_tokens.size());
    for (const auto& doc : val_tokens) {
      val_rows.push_back(embed_average(*res.embeddings, doc));
    }
    // Column-standardize on the training rows; averaged embeddings are far
    // below unit scale and would park the tanh layer in its linear regime.
    const std::size_t dim = res.embeddings->dim();
    std::vector<double> mean(dim, 0.0), scale(dim, 0.0);
    for (const auto& row : train_rows) {
      for (std::size_t c = 0; c < dim; ++c) mean[c] += row[c];
    }
    for (auto& m : mean) m /= static_cast<double>(train_rows.size());
    for (const auto& row : train_rows) {
      for (std::size_t c = 0; c < dim; ++c) {
        scale[c] += (row[c] - mean[c]) * (row[c] - mean[c]);
      }
    }
    for (auto& s : scale) {
      s = 1.0 / std::sqrt(s / static_cast<double>(train_rows.size()) + 1e-8);
    }
    auto standardize = [&](std::vector<std::vector<float>>& rows) {
      for (auto& row : rows) {
        for (std::size_t c = 0; c < dim; ++c) {
          row[c] = static_cast<float>((row[c] - mean[c]) * scale[c]);
        }
      }
    };
    standardize(train_rows);
    standardize(val_rows);
    train_features = dense_to_matrix(train_rows);
    val_features = dense_to_matrix(val_rows);
    train_features.cols = val_features.cols = dim;
  }
  const std::size_t classes = res.dataset.label_names.size();
  attach_one_hot(&train_features, labels_of(augmented), classes);
  attach_one_hot(&val_features, labels_of(val), classes);

  TrainOptions options;
  options.epochs = cfg.epochs;
  options.batch_size = cfg.batch_size;
  options.hidden = cfg.hidden;
  options.seed = key.seed;
  options.adadelta = AdadeltaConfig{cfg.adadelta_rho, cfg.adadelta_epsilon};
  if (method_uses_mixup(cfg.method)) {
    MixupConfig mixup = cfg.mixup;
    mixup.seed = RngStream::derive(key.seed, 0x313).next_u64();
    options.mixup = mixup;
  }

  const ModelKind kind = cfg.model == BenchModel::kSoftmaxTfidf
                             ? ModelKind::kSoftmax
                             : ModelKind::kMlp;
  const TrainResult trained = train(kind, train_features, val_features, options);

  trained.log.save_csv(out_dir + "/" + cell.trainlog_file);
  cell.final_val_error = trained.log.epochs.back().val_error;
  cell.best_val_error = trained.log.epochs.front().val_error;
  for (const auto& epoch : trained.log.epochs) {
    cell.best_val_error = std::min(cell.best_val_error, epoch.val_error);
  }
  return cell;
}

std::map<std::string, std::string> build_metadata(const ExperimentConfig& cfg) {
  std::map<std::string, std::string> meta;
  meta["schema_version"] = std::to_string(cfg.schema_version);
  meta["method"] = method_name(cfg.method);
  meta["model"] = bench_model_name(cfg.model);
  meta["dataset_path"] = cfg.dataset_path;
  meta["val_size"] = std::to_string(cfg.val_size);
  meta["n_aug"] = std::to_string(cfg.n_aug);
  meta["effective_n_aug"] = std::to_string(cfg.effective_n_aug());
  meta["epochs"] = std::to_string(cfg.epochs);
  meta["batch_size"] = std::to_string(cfg.batch_size);
  meta["hidden"] = std::to_string(cfg.hidden);
  meta["augment.p"] = format_double(cfg.augment.p);
  meta["augment.top_k"] = std::to_string(cfg.augment.top_k);
  meta["augment.runs"] = std::to_string(cfg.augment.runs);
  meta["augment.pos"] = cfg.augment.pos_filter.nouns
                            ? (cfg.augment.pos_filter.verbs ? "both" : "noun")
                            : "verb";
  meta["mixup.alpha"] = format_double(cfg.mixup.alpha);
  meta["mixup.same_class_only"] = cfg.mixup.same_class_only ? "true" : "false";
  meta["adadelta.rho"] = format_double(cfg.adadelta_rho);
  meta["adadelta.epsilon"] = format_double(cfg.adadelta_epsilon);
  // Sizes throughout (train_sizes, n_aug, val_size) count documents.
  meta["count_unit"] = "documents";
  {
    std::string sizes;
    for (const auto s : cfg.train_sizes) {
      if (!sizes.empty()) sizes += ",";
      sizes += std::to_string(s);
    }
    meta["train_sizes"] = sizes;
  }
  {
    std::string seeds;
    for (const auto s : cfg.resolved_seeds()) {
      if (!seeds.empty()) seeds += ",";
      seeds += std::to_string(s);
    }
    meta["seeds"] = seeds;
  }
  if (method_text_augmenter(cfg.method) == TextAugKind::kRtt) {
    std::string pivots;
    for (const auto& p : cfg.resources.pivots) {
      if (!pivots.empty()) pivots += ",";
      pivots += p;
    }
    meta["rtt.pivots"] = pivots;
    meta["rtt.backend"] = cfg.resources.backend;
  }
  return meta;
}

}  // namespace

std::vector<Aggregate> ExperimentResult::aggregates() const {
  std::vector<Aggregate> out;
  std::map<std::pair<std::string, std::size_t>, std::vector<const CellResult*>>
      groups;
  for (const auto& cell : cells) {
    if (!cell.ok()) continue;
    groups[{method_name(cell.key.method), cell.key.train_size}].push_back(&cell);
  }
  for (const auto& [group_key, members] : groups) {
    Aggregate agg;
    agg.method = *method_from_name(group_key.first);
    agg.train_size = group_key.second;
    agg.cells = members.size();
    double sum_final = 0.0, sum_best = 0.0;
    for (const auto* cell : members) {
      sum_final += cell->final_val_error;
      sum_best += cell->best_val_error;
    }
    agg.mean_final = sum_final / static_cast<double>(members.size());
    agg.mean_best = sum_best / static_cast<double>(members.size());
    if (members.size() > 1) {
      double var_final = 0.0, var_best = 0.0;
      for (const auto* cell : members) {
        var_final += (cell->final_val_error - agg.mean_final) *
                     (cell->final_val_error - agg.mean_final);
        var_best += (cell->best_val_error - agg.mean_best) *
                    (cell->best_val_error - agg.mean_best);
      }
      agg.std_final = std::sqrt(var_final / static_cast<double>(members.size() - 1));
      agg.std_best = std::sqrt(var_best / static_cast<double>(members.size() - 1));
    }
    out.push_back(agg);
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config,
                                const std::string& out_dir, std::size_t jobs,
                                const ProgressFn& progress) {
  config.validate();
  fs::create_directories(fs::path(out_dir) / "cells");
  const LoadedResources res = load_resources(config);

  std::vector<CellKey> keys;
  for (const std::size_t train_size : config.train_sizes) {
    for (const std::uint64_t seed : config.resolved_seeds()) {
      keys.push_back(CellKey{config.method, train_size, seed});
    }
  }

  ExperimentResult result;
  result.metadata = build_metadata(config);
  result.cells.resize(keys.size());

  std::mutex progress_mutex;
  auto report = [&](const CellKey& key, const std::string& status) {
    if (!progress) return;
    std::lock_guard<std::mutex> lock(progress_mutex);
    progress(key, status);
  };

  auto run_one = [&](std::size_t index) {
    const CellKey& key = keys[index];
    const fs::path checkpoint =
        fs::path(out_dir) / "cells" / (key.str() + ".json");
    if (fs::exists(checkpoint)) {
      try {
        std::ifstream in(checkpoint, std::ios::binary);
        json j;
        in >> j;
        const CellResult cached = cell_from_json(j);
        if (cached.key == key && cached.ok()) {
          result.cells[index] = cached;
          report(key, "cached");
          return;
        }
      } catch (const std::exception&) {
        // fall through and recompute
      }
    }
    CellResult cell;
    try {
      cell = run_cell(config, res, key, out_dir);
      report(key, "done final_val_error=" + format_double(cell.final_val_error));
    } catch (const std::exception& e) {
      cell.key = key;
      cell.status = "failed";
      cell.error = e.what();
      cell.n_aug = config.effective_n_aug();
      cell.epochs = config.epochs;
      cell.trainlog_file = "";
      report(key, std::string("failed: ") + e.what());
    }
    std::ofstream out(checkpoint, std::ios::binary);
    out << cell_to_json(cell).dump(2) << "\n";
    result.cells[index] = cell;
  };

  if (jobs <= 1 || keys.size() < 2) {
    for (std::size_t i = 0; i < keys.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    const std::size_t workers = std::min(jobs, keys.size());
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= keys.size()) return;
          run_one(i);
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  return result;
}

NumAugTable compare_num_augmentations(
    const ExperimentConfig& config, const std::vector<std::size_t>& n_aug_values,
    const std::string& out_dir, std::size_t jobs, const ProgressFn& progress,
    const std::map<std::pair<std::size_t, std::size_t>, double>& references) {
  NumAugTable table;
  table.train_sizes = config.train_sizes;
  table.n_aug_values = n_aug_values;
  table.references = references;
  table.mean_error.assign(config.train_sizes.size(),
                          std::vector<double>(n_aug_values.size(),
                                              std::nan("")));

  for (std::size_t j = 0; j < n_aug_values.size(); ++j) {
    ExperimentConfig sub = config;
    sub.n_aug = n_aug_values[j];
    const std::string sub_dir =
        out_dir + "/naug_" + std::to_string(n_aug_values[j]);
    const ExperimentResult result = run_experiment(sub, sub_dir, jobs, progress);
    emit_results(result, sub_dir);
    for (const auto& agg : result.aggregates()) {
      const auto it = std::find(table.train_sizes.begin(),
                                table.train_sizes.end(), agg.train_size);
      if (it != table.train_sizes.end()) {
        table.mean_error[static_cast<std::size_t>(
            it - table.train_sizes.begin())][j] = agg.mean_final;
      }
    }
  }
  return table;
}

void write_num_aug_csv(const NumAugTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "train_size,n_aug,mean_val_error,reference\n";
  for (std::size_t i = 0; i < table.train_sizes.size(); ++i) {
    for (std::size_t j = 0; j < table.n_aug_values.size(); ++j) {
      out << table.train_sizes[i] << "," << table.n_aug_values[j] << ","
          << format_double(table.mean_error[i][j]) << ",";
      const auto ref =
          table.references.find({table.train_sizes[i], table.n_aug_values[j]});
      if (ref != table.references.end()) out << format_double(ref->second);
      out << "\n";
    }
  }
}

void emit_results(const ExperimentResult& result, const std::string& out_dir) {
  fs::create_directories(out_dir);
  {
    std::ofstream csv(fs::path(out_dir) / "results.csv", std::ios::binary);
    if (!csv) throw IoError("cannot write results.csv");
    csv << "method,train_size,n_aug,seed,final_val_error,best_val_error,"
           "epochs,status,error\n";
    for (const auto& cell : result.cells) {
      csv << method_name(cell.key.method) << "," << cell.key.train_size << ","
          << cell.n_aug << "," << cell.key.seed << ","
          << format_double(cell.final_val_error) << ","
          << format_double(cell.best_val_error) << "," << cell.epochs << ","
          << cell.status << "," << cell.error << "\n";
    }
  }
  {
    json j;
    j["metadata"] = result.metadata;
    json cells = json::array();
    for (const auto& cell : result.cells) cells.push_back(cell_to_json(cell));
    j["cells"] = cells;
    json aggregates = json::array();
    for (const auto& agg : result.aggregates()) {
      aggregates.push_back(json{{"method", method_name(agg.method)},
                                {"train_size", agg.train_size},
                                {"cells", agg.cells},
                                {"mean_final", agg.mean_final},
                                {"std_final", agg.std_final},
                                {"mean_best", agg.mean_best},
                                {"std_best", agg.std_best}});
    }
    j["aggregates"] = aggregates;
    std::ofstream out(fs::path(out_dir) / "results.json", std::ios::binary);
    if (!out) throw IoError("cannot write results.json");
    out << j.dump(2) << "\n";
  }
  {
    std::ofstream csv(fs::path(out_dir) / "aggregates.csv", std::ios::binary);
    if (!csv) throw IoError("cannot write aggregates.csv");
    csv << "method,train_size,cells,mean_final_val_error,std_final_val_error,"
           "mean_best_val_error,std_best_val_error\n";
    for (const auto& agg : result.aggregates()) {
      csv << method_name(agg.method) << "," << agg.train_size << ","
          << agg.cells << "," << format_double(agg.mean_final) << ","
          << format_double(agg.std_final) << "," << format_double(agg.mean_best)
          << "," << format_double(agg.std_best) << "\n";
    }
  }
}

ExperimentResult load_results(const std::string& out_dir) {
  const fs::path path = fs::path(out_dir) / "results.json";
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  json j;
  in >> j;
  ExperimentResult result;
  for (const auto& [key, value] : j.at("metadata").items()) {
    result.metadata[key] = value.get<std::string>();
  }
  for (const auto& cell : j.at("cells")) {
    result.cells.push_back(cell_from_json(cell));
  }
  return result;
}

}  // namespace textaug
