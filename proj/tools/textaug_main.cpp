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
// textaug command line: augment, train, evaluate, experiment, inspect.
// Exit codes: 0 success, 1 usage error, 2 runtime error. Seeds default to a
// fixed constant so reruns reproduce byte-identical outputs; pass
// --seed random to opt out.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "textaug/augment.hpp"
#include "textaug/bench.hpp"
#include "textaug/corpus.hpp"
#include "textaug/embeddings.hpp"
#include "textaug/learn.hpp"
#include "textaug/translate.hpp"
#include "textaug/vectorize.hpp"
#include "textaug/wordnet.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace textaug;

constexpr std::uint64_t kDefaultSeed = 42;
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const std::string& seed_flag) {
  if (seed_flag == "random") {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  try {
    std::size_t used = 0;
    const std::uint64_t seed = std::stoull(seed_flag, &used);
    if (used != seed_flag.size()) throw std::invalid_argument(seed_flag);
    return seed;
  } catch (const std::exception&) {
    throw UsageError("--seed must be an integer or 'random', got '" +
                     seed_flag + "'");
  }
}

struct InputFlags {
  std::string path;
  std::string format;  // csv | jsonl | "" (from extension)
  std::string text_column = "text";
  std::string label_column = "label";
  int text_index = -1;
  int label_index = -1;
  bool no_header = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--input", path, "input dataset file")->required();
    cmd->add_option("--format", format, "csv or jsonl (default: by extension)")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    cmd->add_option("--text-col", text_column, "text column name");
    cmd->add_option("--label-col", label_column, "label column name");
    cmd->add_option("--text-index", text_index, "text column index (0-based)");
    cmd->add_option("--label-index", label_index, "label column index (0-based)");
    cmd->add_flag("--no-header", no_header, "CSV has no header row");
  }

  Dataset load() const {
    std::string fmt = format;
    if (fmt.empty()) {
      fmt = path.ends_with(".jsonl") || path.ends_with(".ndjson") ? "jsonl"
                                                                  : "csv";
    }
    if (fmt == "jsonl") return read_jsonl_file(path);
    ColumnSpec spec;
    spec.has_header = !no_header;
    spec.text = text_index >= 0 ? ColumnRef::by_index(text_index)
                                : ColumnRef::by_name(text_column);
    spec.label = label_index >= 0 ? ColumnRef::by_index(label_index)
                                  : ColumnRef::by_name(label_column);
    return load_csv(path, spec);
  }
};

struct AugmentResources {
  std::optional<SynonymLexicon> lexicon;
  std::optional<EmbeddingModel> embeddings;
  std::unique_ptr<TranslationBackend> backend;
  std::unique_ptr<Augmenter> augmenter;
};

// ---- augment ----

struct AugmentArgs {
  InputFlags input;
  std::string method;
  std::size_t n_aug = 5;
  double p = 0.5;
  std::string pos = "both";
  std::size_t top_k = 10;
  std::size_t runs = 1;
  std::string wordnet_dir;
  std::string embedding_path;
  std::string backend = "mock";
  std::string mock_dict;
  std::vector<std::string> pivots = {"fr"};
  std::string url;
  double rps = 2.0;
  std::string output;
  std::size_t jobs = 1;
};

AugmentResources prepare_augmenter(const AugmentArgs& args) {
  AugmentResources res;
  AugmentConfig cfg;
  cfg.p = args.p;
  cfg.top_k = args.top_k;
  cfg.runs = args.runs;
  if (args.pos == "noun") {
    cfg.pos_filter = {true, false};
  } else if (args.pos == "verb") {
    cfg.pos_filter = {false, true};
  } else {
    cfg.pos_filter = {true, true};
  }

  if (args.method == "identity") {
    res.augmenter = make_identity_augmenter();
  } else if (args.method == "synonym") {
    if (args.wordnet_dir.empty()) {
      throw UsageError("--method synonym needs --wordnet <dir>");
    }
    if (!fs::exists(args.wordnet_dir)) {
      throw ResourceMissing("wordnet directory not found: " + args.wordnet_dir);
    }
    res.lexicon = parse_wndb(args.wordnet_dir);
    res.augmenter = make_synonym_augmenter(*res.lexicon, cfg);
  } else if (args.method == "embedding") {
    if (args.embedding_path.empty()) {
      throw UsageError("--method embedding needs --embeddings <file>");
    }
    if (!fs::exists(args.embedding_path)) {
      throw ResourceMissing("embedding file not found: " + args.embedding_path);
    }
    res.embeddings = args.embedding_path.ends_with(".bin")
                         ? load_binary_format(args.embedding_path)
                         : load_text_format(args.embedding_path);
    res.augmenter = make_embedding_augmenter(*res.embeddings, cfg);
  } else if (args.method == "rtt") {
    if (args.backend == "mock") {
      if (args.mock_dict.empty()) {
        throw UsageError("--backend mock needs --mock-dict <file>");
      }
      if (!fs::exists(args.mock_dict)) {
        throw ResourceMissing("mock dictionary not found: " + args.mock_dict);
      }
      res.backend = std::make_unique<MockTranslationBackend>(
          MockTranslationBackend::from_file(args.mock_dict));
    } else {
      if (args.url.empty()) throw UsageError("--backend http needs --url");
      HttpBackendConfig http;
      http.url = args.url;
      http.requests_per_second = args.rps;
      if (const char* key = std::getenv("TEXTAUG_TRANSLATE_API_KEY")) {
        http.api_key = key;
      }
      res.backend = std::make_unique<HttpTranslationBackend>(http);
    }
    res.augmenter = make_rtt_augmenter(*res.backend, args.pivots);
  } else {
    throw UsageError("unknown method '" + args.method +
                     "'; valid: synonym, embedding, rtt, identity");
  }
  return res;
}

int cmd_augment(const AugmentArgs& args, std::uint64_t seed) {
  const Dataset input = args.input.load();
  const AugmentResources res = prepare_augmenter(args);

  bool wrote_output = false;
  try {
    const Dataset augmented = build_augmented(input, *res.augmenter, args.n_aug,
                                              seed, args.jobs);
    wrote_output = true;
    write_jsonl_file(args.output, augmented);

    std::size_t skipped = 0;
    std::map<std::int64_t, const Document*> originals;
    for (const auto& rec : input.records) originals[rec.id] = &rec;
    for (const auto& rec : augmented.records) {
      if (rec.origin.kind == Origin::kAugmented &&
          originals.at(rec.origin.parent_id)->text == rec.text) {
        ++skipped;
      }
    }
    std::cerr << "originals: " << input.size()
              << " augmented: " << augmented.size() - input.size()
              << " skipped: " << skipped << "\n";
  } catch (...) {
    if (wrote_output) fs::remove(args.output);
    throw;
  }
  return kExitOk;
}

// ---- train / evaluate ----

struct TrainArgs {
  InputFlags input;
  std::string model = "softmax_tfidf";
  std::size_t epochs = 20;
  std::size_t batch_size = 128;
  std::size_t hidden = 64;
  std::size_t val_size = 0;
  bool mixup = false;
  double alpha = 0.2;
  std::string embedding_path;
  std::string model_out;
  std::string log_out;
};

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

FeatureMatrix embed_rows(const EmbeddingModel& model,
                         const std::vector<TokenizedDoc>& docs) {
  std::vector<std::vector<float>> rows;
  rows.reserve(docs.size());
  for (const auto& doc : docs) rows.push_back(embed_average(model, doc));
  FeatureMatrix out = dense_to_matrix(rows);
  out.cols = model.dim();
  return out;
}

std::string repr_path_for(const std::string& model_path) {
  return model_path + ".repr.json";
}

int cmd_train(const TrainArgs& args, std::uint64_t seed) {
  const auto model_kind = bench_model_from_name(args.model);
  if (!model_kind) {
    throw UsageError("unknown model '" + args.model +
                     "'; valid: softmax_tfidf, mlp_embedavg");
  }
  Dataset full = args.input.load();
  Dataset train_set, val_set;
  if (args.val_size > 0) {
    if (args.val_size >= full.size()) {
      throw UsageError("--val-size must leave at least one training record");
    }
    std::tie(train_set, val_set) = split(
        full, SplitSpec{full.size() - args.val_size, args.val_size, seed});
  } else {
    train_set = std::move(full);
  }

  const auto train_tokens = tokenize_all(train_set);
  const auto val_tokens = tokenize_all(val_set);
  const std::size_t classes = train_set.label_names.size();

  FeatureMatrix train_features, val_features;
  json repr;
  std::optional<EmbeddingModel> embeddings;
  std::optional<TfidfModel> tfidf;
  if (*model_kind == BenchModel::kSoftmaxTfidf) {
    tfidf = tfidf_fit(train_tokens);
    train_features = tfidf_transform(*tfidf, train_tokens);
    val_features = tfidf_transform(*tfidf, val_tokens);
    repr["kind"] = "tfidf";
    repr["tfidf_file"] = args.model_out + ".tfidf.json";
  } else {
    if (args.embedding_path.empty()) {
      throw UsageError("--model mlp_embedavg needs --embeddings <file>");
    }
    if (!fs::exists(args.embedding_path)) {
      throw ResourceMissing("embedding file not found: " + args.embedding_path);
    }
    embeddings = args.embedding_path.ends_with(".bin")
                     ? load_binary_format(args.embedding_path)
                     : load_text_format(args.embedding_path);
    train_features = embed_rows(*embeddings, train_tokens);
    val_features = embed_rows(*embeddings, val_tokens);
    val_features.cols = embeddings->dim();
    repr["kind"] = "embed_average";
    repr["embedding_path"] = fs::absolute(args.embedding_path).string();
  }
  attach_one_hot(&train_features, labels_of(train_set), classes);
  attach_one_hot(&val_features, labels_of(val_set), classes);
  repr["label_names"] = train_set.label_names;

  TrainOptions options;
  options.epochs = args.epochs;
  options.batch_size = args.batch_size;
  options.hidden = args.hidden;
  options.seed = seed;
  if (args.mixup) options.mixup = MixupConfig{args.alpha, seed ^ 0x313, false};

  const TrainResult trained =
      train(*model_kind == BenchModel::kSoftmaxTfidf ? ModelKind::kSoftmax
                                                     : ModelKind::kMlp,
            train_features, val_features, options);

  model_save_json(trained, args.model_out);
  if (tfidf.has_value()) {
    tfidf_save_json(*tfidf, args.model_out + ".tfidf.json");
  }
  {
    std::ofstream out(repr_path_for(args.model_out), std::ios::binary);
    if (!out) throw IoError("cannot write " + repr_path_for(args.model_out));
    out << repr.dump(2) << "\n";
  }
  if (!args.log_out.empty()) trained.log.save_csv(args.log_out);

  const auto& last = trained.log.epochs.back();
  std::cout << "train_loss=" << last.train_loss
            << " train_error=" << last.train_error;
  if (val_set.size() > 0) {
    std::cout << " val_loss=" << last.val_loss << " val_error=" << last.val_error;
  }
  std::cout << "\n";
  return kExitOk;
}

struct EvaluateArgs {
  InputFlags input;
  std::string model_path;
};

int cmd_evaluate(const EvaluateArgs& args) {
  const TrainResult model = model_load_json(args.model_path);
  std::ifstream repr_in(repr_path_for(args.model_path), std::ios::binary);
  if (!repr_in) {
    throw IoError("cannot open " + repr_path_for(args.model_path) +
                  " (written by 'textaug train')");
  }
  json repr;
  repr_in >> repr;

  const Dataset dataset = args.input.load();
  const auto tokens = tokenize_all(dataset);
  const auto label_names = repr.at("label_names").get<std::vector<std::string>>();

  FeatureMatrix features;
  std::optional<EmbeddingModel> embeddings;
  const std::string kind = repr.at("kind").get<std::string>();
  if (kind == "tfidf") {
    const TfidfModel tfidf =
        tfidf_load_json(repr.at("tfidf_file").get<std::string>());
    features = tfidf_transform(tfidf, tokens);
  } else if (kind == "embed_average") {
    const std::string path = repr.at("embedding_path").get<std::string>();
    embeddings = path.ends_with(".bin") ? load_binary_format(path)
                                        : load_text_format(path);
    features = embed_rows(*embeddings, tokens);
  } else {
    throw IoError("unknown representation kind '" + kind + "'");
  }
  attach_one_hot(&features, labels_of(dataset), label_names.size());

  const Mat probs = model.predict_probs(features);
  std::cout << "n=" << dataset.size()
            << " error=" << error_rate(probs, features.labels)
            << " loss=" << cross_entropy(probs, features.labels) << "\n";
  return kExitOk;
}

// ---- experiment ----

struct ExperimentArgs {
  std::string config_path;
  std::string out_dir;
  std::size_t jobs = 1;
};

int cmd_experiment(const ExperimentArgs& args) {
  const ExperimentConfig config =
      ExperimentConfig::from_json_file(args.config_path);
  const ExperimentResult result = run_experiment(
      config, args.out_dir, args.jobs,
      [](const CellKey& key, const std::string& status) {
        std::cerr << "[cell " << key.str() << "] " << status << "\n";
      });
  emit_results(result, args.out_dir);

  std::vector<std::string> failed;
  for (const auto& cell : result.cells) {
    if (!cell.ok()) failed.push_back(cell.key.str() + ": " + cell.error);
  }
  if (!failed.empty()) {
    std::cerr << failed.size() << " cell(s) failed:\n";
    for (const auto& f : failed) std::cerr << "  " << f << "\n";
    return kExitRuntime;
  }
  std::cerr << "wrote " << args.out_dir << "/results.csv ("
            << result.cells.size() << " cells)\n";
  return kExitOk;
}

// ---- inspect ----

int inspect_wndb(const std::string& dir) {
  const SynonymLexicon lexicon = parse_wndb(dir);
  std::cout << "wndb directory: " << dir << "\n"
            << "noun lemmas: " << lexicon.lemma_count(Pos::kNoun) << "\n"
            << "verb lemmas: " << lexicon.lemma_count(Pos::kVerb) << "\n"
            << "noun synsets: " << lexicon.synsets(Pos::kNoun).size() << "\n"
            << "verb synsets: " << lexicon.synsets(Pos::kVerb).size() << "\n";
  std::vector<std::string> sample;
  sample.reserve(lexicon.index().size());
  for (const auto& [lemma, entry] : lexicon.index()) sample.push_back(lemma);
  std::sort(sample.begin(), sample.end());
  sample.resize(std::min<std::size_t>(sample.size(), 3));
  for (const auto& lemma : sample) {
    std::cout << "sample lemma: " << lemma
              << " (noun synonyms: " << synonyms(lexicon, lemma, Pos::kNoun).size()
              << ", verb synonyms: " << synonyms(lexicon, lemma, Pos::kVerb).size()
              << ")\n";
  }
  return kExitOk;
}

int inspect_embeddings(const std::string& path) {
  const EmbeddingModel model = path.ends_with(".bin") ? load_binary_format(path)
                                                      : load_text_format(path);
  std::cout << "embedding file: " << path << "\n"
            << "vocab: " << model.size() << "\n"
            << "dim: " << model.dim() << "\n"
            << "duplicates skipped: " << model.duplicates_skipped() << "\n";
  for (std::size_t i = 0; i < std::min<std::size_t>(3, model.size()); ++i) {
    std::cout << "sample word: " << model.vocab()[i] << "\n";
  }
  return kExitOk;
}

int inspect_results_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  std::getline(in, line);  // header
  struct Acc {
    double sum = 0.0;
    std::size_t n = 0;
  };
  std::map<std::string, Acc> by_method;
  std::size_t cells = 0, failed = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string method, train_size, n_aug, seed, final_err, best_err, epochs,
        status;
    std::getline(row, method, ',');
    std::getline(row, train_size, ',');
    std::getline(row, n_aug, ',');
    std::getline(row, seed, ',');
    std::getline(row, final_err, ',');
    std::getline(row, best_err, ',');
    std::getline(row, epochs, ',');
    std::getline(row, status, ',');
    ++cells;
    if (status != "ok") {
      ++failed;
      continue;
    }
    auto& acc = by_method[method];
    acc.sum += std::stod(final_err);
    acc.n += 1;
  }
  std::cout << "results file: " << path << "\n"
            << "cells: " << cells << " (failed: " << failed << ")\n";
  std::string best_method;
  double best_mean = 0.0;
  for (const auto& [method, acc] : by_method) {
    const double mean = acc.sum / static_cast<double>(acc.n);
    std::cout << "mean final_val_error[" << method << "]: " << mean << "\n";
    if (best_method.empty() || mean < best_mean) {
      best_method = method;
      best_mean = mean;
    }
  }
  if (!best_method.empty()) {
    std::cout << "best method: " << best_method << " (" << best_mean << ")\n";
  }
  return kExitOk;
}

int inspect_dataset(const std::string& path) {
  InputFlags flags;
  flags.path = path;
  const Dataset dataset = flags.load();
  std::cout << "dataset: " << path << "\n"
            << "records: " << dataset.size() << "\n"
            << "labels: " << dataset.label_names.size() << " ("
            << (dataset.task_kind == TaskKind::kBinary ? "binary" : "categorical")
            << ")\n";
  std::vector<std::size_t> counts(dataset.label_names.size(), 0);
  for (const auto& rec : dataset.records) {
    counts[static_cast<std::size_t>(rec.label)] += 1;
  }
  for (std::size_t l = 0; l < counts.size(); ++l) {
    std::cout << "label " << dataset.label_names[l] << ": " << counts[l] << "\n";
  }
  return kExitOk;
}

int cmd_inspect(const std::string& resource) {
  if (fs::is_directory(resource)) return inspect_wndb(resource);
  if (!fs::exists(resource)) throw IoError("no such resource: " + resource);
  if (resource.ends_with(".bin") || resource.ends_with(".vec") ||
      resource.ends_with(".txt")) {
    return inspect_embeddings(resource);
  }
  if (resource.ends_with(".csv")) {
    std::ifstream in(resource, std::ios::binary);
    std::string header;
    std::getline(in, header);
    if (header.starts_with("method,train_size,")) {
      return inspect_results_csv(resource);
    }
    return inspect_dataset(resource);
  }
  return inspect_dataset(resource);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"text augmentation toolkit and benchmark harness"};
  app.require_subcommand(1);
  std::string seed_flag = std::to_string(kDefaultSeed);

  AugmentArgs augment_args;
  auto* augment_cmd =
      app.add_subcommand("augment", "write an augmented copy of a dataset");
  augment_args.input.attach(augment_cmd);
  augment_cmd->add_option("--method", augment_args.method,
                          "synonym | embedding | rtt | identity")
      ->required();
  augment_cmd->add_option("--n", augment_args.n_aug,
                          "augmented copies per record");
  augment_cmd->add_option("--p", augment_args.p, "geometric success probability");
  augment_cmd->add_option("--pos", augment_args.pos, "noun | verb | both")
      ->check(CLI::IsMember({"noun", "verb", "both"}));
  augment_cmd->add_option("--top-k", augment_args.top_k, "neighbor pool size");
  augment_cmd->add_option("--runs", augment_args.runs,
                          "replacement rounds per copy");
  augment_cmd->add_option("--wordnet", augment_args.wordnet_dir,
                          "WNDB directory (synonym method)");
  augment_cmd->add_option("--embeddings", augment_args.embedding_path,
                          "word-vector file (embedding method)");
  augment_cmd->add_option("--backend", augment_args.backend, "mock | http")
      ->check(CLI::IsMember({"mock", "http"}));
  augment_cmd->add_option("--mock-dict", augment_args.mock_dict,
                          "mock dictionary JSON");
  augment_cmd->add_option("--pivot", augment_args.pivots,
                          "pivot language(s) for rtt");
  augment_cmd->add_option("--url", augment_args.url, "http backend endpoint");
  augment_cmd->add_option("--rps", augment_args.rps,
                          "http backend requests per second");
  augment_cmd->add_option("--jobs", augment_args.jobs, "worker threads");
  augment_cmd->add_option("--output", augment_args.output, "output JSONL path")
      ->required();

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "train a classifier");
  train_args.input.attach(train_cmd);
  train_cmd->add_option("--model", train_args.model,
                        "softmax_tfidf | mlp_embedavg");
  train_cmd->add_option("--epochs", train_args.epochs, "training epochs");
  train_cmd->add_option("--batch", train_args.batch_size, "mini-batch size");
  train_cmd->add_option("--hidden", train_args.hidden, "MLP hidden units");
  train_cmd->add_option("--val-size", train_args.val_size,
                        "records held out for validation");
  train_cmd->add_flag("--mixup", train_args.mixup, "train with mixup");
  train_cmd->add_option("--alpha", train_args.alpha, "mixup Beta(alpha, alpha)");
  train_cmd->add_option("--embeddings", train_args.embedding_path,
                        "word-vector file (mlp_embedavg)");
  train_cmd->add_option("--model-out", train_args.model_out, "model JSON path")
      ->required();
  train_cmd->add_option("--log-out", train_args.log_out, "training log CSV path");

  EvaluateArgs evaluate_args;
  auto* evaluate_cmd =
      app.add_subcommand("evaluate", "evaluate a trained model on a dataset");
  evaluate_args.input.attach(evaluate_cmd);
  evaluate_cmd->add_option("--model", evaluate_args.model_path,
                           "model JSON written by train")
      ->required();

  ExperimentArgs experiment_args;
  auto* experiment_cmd =
      app.add_subcommand("experiment", "run a config-driven experiment");
  experiment_cmd
      ->add_option("--config", experiment_args.config_path,
                   "experiment config JSON")
      ->required();
  experiment_cmd->add_option("--out", experiment_args.out_dir, "output directory")
      ->required();
  experiment_cmd->add_option("--jobs", experiment_args.jobs, "cell worker threads");

  std::string inspect_resource;
  auto* inspect_cmd = app.add_subcommand(
      "inspect", "summarize a dataset, lexicon, model, or results file");
  inspect_cmd->add_option("resource", inspect_resource, "path to inspect")
      ->required();

  for (auto* cmd :
       {augment_cmd, train_cmd, evaluate_cmd, experiment_cmd, inspect_cmd}) {
    cmd->add_option("--seed", seed_flag, "integer seed or 'random'");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const std::uint64_t seed = resolve_seed(seed_flag);
    std::cerr << "seed: " << seed << "\n";
    if (augment_cmd->parsed()) return cmd_augment(augment_args, seed);
    if (train_cmd->parsed()) return cmd_train(train_args, seed);
    if (evaluate_cmd->parsed()) return cmd_evaluate(evaluate_args);
    if (experiment_cmd->parsed()) return cmd_experiment(experiment_args);
    if (inspect_cmd->parsed()) return cmd_inspect(inspect_resource);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
