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
// Text-to-vector representations (TFIDF, embedding averaging), one-hot
// labels, and the mixup operator on representations. TFIDF vocabulary is
// built only from the fitting corpus.

#ifndef TEXTAUG_VECTORIZE_HPP_
#define TEXTAUG_VECTORIZE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "textaug/corpus.hpp"
#include "textaug/embeddings.hpp"
#include "textaug/errors.hpp"
#include "textaug/rng.hpp"

namespace textaug {

// One sparse feature row: (column, value) pairs sorted by column.
using SparseRow = std::vector<std::pair<std::uint32_t, double>>;

struct FeatureMatrix {
  std::size_t cols = 0;
  std::vector<SparseRow> rows;
  // One row per document; each row sums to 1 (one-hot before mixup, a
  // convex combination after). May be empty for unlabeled data.
  std::vector<std::vector<float>> labels;

  std::size_t size() const { return rows.size(); }
  std::size_t num_classes() const { return labels.empty() ? 0 : labels[0].size(); }
};

struct TfidfModel {
  std::vector<std::string> column_terms;                   // column -> term
  std::unordered_map<std::string, std::uint32_t> vocabulary;  // term -> column
  std::vector<double> idf;
  std::string fingerprint;  // hash of the fitting corpus

  std::size_t size() const { return column_terms.size(); }
};

struct MixupConfig {
  double alpha = 0.2;  // Beta(alpha, alpha) mixing parameter
  std::uint64_t seed = 0;
  // When set, partners are drawn within the same (argmax) class only.
  bool same_class_only = false;
};

// Vocabulary over all train tokens, columns in first-seen order;
// idf(t) = ln((1 + N) / (1 + df(t))) + 1. Throws EmptyCorpus.
TfidfModel tfidf_fit(std::span<const TokenizedDoc> train_docs);

// Rows are L2-normalized term-count-times-idf; unseen terms are ignored.
// Labels are left empty.
FeatureMatrix tfidf_transform(const TfidfModel& model,
                              std::span<const TokenizedDoc> docs);

// Mean of in-vocabulary token vectors; zero vector when none is known.
std::vector<float> embed_average(const EmbeddingModel& model,
                                 const TokenizedDoc& doc);

// Packs dense rows into a FeatureMatrix (every column stored).
FeatureMatrix dense_to_matrix(const std::vector<std::vector<float>>& rows);

// Attaches one-hot labels; every label must be < num_classes.
void attach_one_hot(FeatureMatrix* matrix, const std::vector<int>& labels,
                    std::size_t num_classes);

// Beta(alpha, alpha) via two Gamma(alpha, 1) draws g1, g2 -> g1/(g1+g2).
double sample_beta(double alpha, RngStream& rng);

// lambda * a + (1 - lambda) * b, sparse merge.
SparseRow mix_rows(const SparseRow& a, const SparseRow& b, double lambda);
std::vector<float> mix_labels(const std::vector<float>& a,
                              const std::vector<float>& b, double lambda);

// Row i of the output is the convex combination of row i and row partner[i]
// with weight lambdas[i]; labels combine identically.
FeatureMatrix mixup_with(const FeatureMatrix& features,
                         const std::vector<std::size_t>& partner,
                         const std::vector<double>& lambdas);

// Partners come from a uniformly shuffled permutation of the batch and every
// row draws a fresh lambda ~ Beta(alpha, alpha). Requires labels and at
// least two rows (throws TooFewRows).
FeatureMatrix mixup_batch(const FeatureMatrix& features, const MixupConfig& cfg);

// ---- persistence ----
void tfidf_save_json(const TfidfModel& model, const std::string& path);
TfidfModel tfidf_load_json(const std::string& path);
// Sparse rows as JSON-lines {"row":r,"col":c,"val":v}.
void export_sparse_jsonl(const FeatureMatrix& matrix, const std::string& path);
// Dense rows as CSV (all columns materialized).
void export_dense_csv(const FeatureMatrix& matrix, const std::string& path);

}  // namespace textaug

#endif  // TEXTAUG_VECTORIZE_HPP_
