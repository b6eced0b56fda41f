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
// Config-driven experiment runner. One experiment sweeps (train_size, seed)
// cells for a single augmentation method and model, with cell-level
// checkpointing so interrupted runs resume without recomputing.

#ifndef TEXTAUG_BENCH_HPP_
#define TEXTAUG_BENCH_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "textaug/augment.hpp"
#include "textaug/corpus.hpp"
#include "textaug/errors.hpp"
#include "textaug/vectorize.hpp"

namespace textaug {

enum class Method {
  kNone,
  kSynonym,
  kEmbedding,
  kRtt,
  kMixup,
  kSynonymMixup,
  kEmbeddingMixup,
  kRttMixup,
};

const char* method_name(Method method);
std::optional<Method> method_from_name(std::string_view name);
std::vector<std::string> all_method_names();
bool method_uses_mixup(Method method);
// The text-level augmenter family behind the method (identity for the
// control and mixup-only arms).
enum class TextAugKind { kIdentity, kSynonym, kEmbedding, kRtt };
TextAugKind method_text_augmenter(Method method);

enum class BenchModel { kSoftmaxTfidf, kMlpEmbedAvg };
const char* bench_model_name(BenchModel model);
std::optional<BenchModel> bench_model_from_name(std::string_view name);

struct BenchResources {
  std::string wordnet_dir;
  std::string embedding_path;
  std::string mock_dict;
  std::string backend = "mock";  // mock | http
  std::string http_url;
  std::string api_key_env = "TEXTAUG_TRANSLATE_API_KEY";
  std::vector<std::string> pivots = {"fr"};
  double requests_per_second = 2.0;
};

struct ExperimentConfig {
  int schema_version = 1;
  std::string dataset_path;
  std::string dataset_format = "csv";  // csv | jsonl
  ColumnSpec columns;
  Method method = Method::kNone;
  BenchModel model = BenchModel::kSoftmaxTfidf;
  std::vector<std::size_t> train_sizes = {1000};
  std::size_t val_size = 1000;
  std::size_t n_aug = 5;
  std::size_t repeats = 5;
  std::vector<std::uint64_t> seeds;  // resolved to 1..repeats when empty
  std::size_t epochs = 30;
  std::size_t batch_size = 128;
  std::size_t hidden = 64;
  double adadelta_rho = 0.95;
  double adadelta_epsilon = 1e-6;
  AugmentConfig augment;
  MixupConfig mixup;
  BenchResources resources;

  // Parses and validates; relative resource paths resolve against the
  // config file's directory. Throws ConfigError.
  static ExperimentConfig from_json_file(const std::string& path);
  void validate() const;
  std::vector<std::uint64_t> resolved_seeds() const;
  // RTT copies beyond the pivot list would all duplicate an existing round
  // trip, so RTT arms cap n_aug at the number of pivots.
  std::size_t effective_n_aug() const;
};

struct CellKey {
  Method method = Method::kNone;
  std::size_t train_size = 0;
  std::uint64_t seed = 0;

  std::string str() const;
  bool operator==(const CellKey&) const = default;
};

struct CellResult {
  CellKey key;
  std::string status = "ok";  // ok | failed
  std::string error;
  double final_val_error = 0.0;
  double best_val_error = 0.0;
  std::size_t epochs = 0;
  std::size_t n_aug = 0;
  std::string trainlog_file;  // relative to the output directory

  bool ok() const { return status == "ok"; }
};

struct Aggregate {
  Method method = Method::kNone;
  std::size_t train_size = 0;
  std::size_t cells = 0;
  double mean_final = 0.0;
  double std_final = 0.0;  // sample standard deviation
  double mean_best = 0.0;
  double std_best = 0.0;
};

struct ExperimentResult {
  std::map<std::string, std::string> metadata;  // resolved settings
  std::vector<CellResult> cells;

  std::vector<Aggregate> aggregates() const;
  bool operator==(const ExperimentResult&) const = default;
};

inline bool operator==(const CellResult& a, const CellResult& b) {
  return a.key == b.key && a.status == b.status && a.error == b.error &&
         a.final_val_error == b.final_val_error &&
         a.best_val_error == b.best_val_error && a.epochs == b.epochs &&
         a.n_aug == b.n_aug && a.trainlog_file == b.trainlog_file;
}

using ProgressFn = std::function<void(const CellKey&, const std::string&)>;

// Runs every (train_size, seed) cell: split, build the augmented training
// set, fit the representation on augmented training data only, train, and
// record the log. Completed cells are read back from out_dir/cells on
// restart. Cell failures are recorded, not fatal.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const std::string& out_dir,
                                std::size_t jobs = 1,
                                const ProgressFn& progress = nullptr);

struct NumAugTable {
  std::vector<std::size_t> train_sizes;
  std::vector<std::size_t> n_aug_values;
  // mean_error[i][j]: mean final validation error at
  // (train_sizes[i], n_aug_values[j]); NaN for failed cells.
  std::vector<std::vector<double>> mean_error;
  // Optional caller-supplied reference values keyed by (train_size, n_aug).
  std::map<std::pair<std::size_t, std::size_t>, double> references;
};

// Grid of mean validation error per (train_size, n_aug value); each n_aug
// value runs as its own sub-experiment under out_dir/naug_<value>.
NumAugTable compare_num_augmentations(
    const ExperimentConfig& config, const std::vector<std::size_t>& n_aug_values,
    const std::string& out_dir, std::size_t jobs = 1,
    const ProgressFn& progress = nullptr,
    const std::map<std::pair<std::size_t, std::size_t>, double>& references = {});

void write_num_aug_csv(const NumAugTable& table, const std::string& path);

// Writes results.csv (long format), results.json (cells + metadata), and
// aggregates.csv. Per-cell loss curves are already on disk next to the
// checkpoints. Deterministic: re-emitting without rerunning is byte-stable.
void emit_results(const ExperimentResult& result, const std::string& out_dir);

// Reads results.json back; round-trips emit_results exactly.
ExperimentResult load_results(const std::string& out_dir);

}  // namespace textaug

#endif  // TEXTAUG_BENCH_HPP_
