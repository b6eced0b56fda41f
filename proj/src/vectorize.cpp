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

#include "textaug/vectorize.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>

#include <json.hpp>

namespace textaug {
namespace {

using nlohmann::json;

// Marsaglia-Tsang Gamma(alpha, 1) sampler; alpha < 1 is boosted through
// Gamma(alpha + 1) * U^(1/alpha).
double sample_gamma(double alpha, RngStream& rng) {
  if (alpha < 1.0) {
    const double boost = sample_gamma(alpha + 1.0, rng);
    double u = rng.next_double();
    while (u <= 0.0) u = rng.next_double();
    return boost * std::pow(u, 1.0 / alpha);
  }
  const double d = alpha - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.next_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.next_double();
    if (u == 0.0) continue;
    if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) {
      return d * v;
    }
  }
}

}  // namespace

TfidfModel tfidf_fit(std::span<const TokenizedDoc> train_docs) {
  if (train_docs.empty()) throw EmptyCorpus("tfidf_fit needs >= 1 document");

  TfidfModel model;
  std::vector<std::size_t> doc_frequency;
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  std::vector<std::uint32_t> seen_in_doc;

  for (const auto& doc : train_docs) {
    seen_in_doc.clear();
    for (const auto& token : doc.tokens) {
      hash = fnv1a64(token.data(), token.size(), hash);
      hash = fnv1a64("\x1f", 1, hash);
      auto it = model.vocabulary.find(token);
      if (it == model.vocabulary.end()) {
        const auto col = static_cast<std::uint32_t>(model.column_terms.size());
        it = model.vocabulary.emplace(token, col).first;
        model.column_terms.push_back(token);
        doc_frequency.push_back(0);
      }
      seen_in_doc.push_back(it->second);
    }
    hash = fnv1a64("\x1e", 1, hash);
    std::sort(seen_in_doc.begin(), seen_in_doc.end());
    seen_in_doc.erase(std::unique(seen_in_doc.begin(), seen_in_doc.end()),
                      seen_in_doc.end());
    for (const auto col : seen_in_doc) ++doc_frequency[col];
  }

  const double n = static_cast<double>(train_docs.size());
  model.idf.reserve(doc_frequency.size());
  for (const std::size_t df : doc_frequency) {
    model.idf.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(df))) +
                        1.0);
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  model.fingerprint = buf;
  return model;
}

FeatureMatrix tfidf_transform(const TfidfModel& model,
                              std::span<const TokenizedDoc> docs) {
  FeatureMatrix out;
  out.cols = model.size();
  out.rows.reserve(docs.size());

  std::map<std::uint32_t, double> counts;
  for (const auto& doc : docs) {
    counts.clear();
    for (const auto& token : doc.tokens) {
      const auto it = model.vocabulary.find(token);
      if (it != model.vocabulary.end()) counts[it->second] += 1.0;
    }
    SparseRow row;
    row.reserve(counts.size());
    double norm_sq = 0.0;
    for (const auto& [col, count] : counts) {
      const double weight = count * model.idf[col];
      norm_sq += weight * weight;
      row.emplace_back(col, weight);
    }
    if (norm_sq > 0.0) {
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (auto& [col, value] : row) value *= inv;
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::vector<float> embed_average(const EmbeddingModel& model,
                                 const TokenizedDoc& doc) {
  std::vector<float> out(model.dim(), 0.0f);
  std::size_t hits = 0;
  for (const auto& token : doc.tokens) {
    const std::int64_t row = model.row_of(token);
    if (row < 0) continue;
    const auto v = model.vector(static_cast<std::size_t>(row));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += v[i];
    ++hits;
  }
  if (hits > 0) {
    const float inv = 1.0f / static_cast<float>(hits);
    for (auto& x : out) x *= inv;
  }
  return out;
}

FeatureMatrix dense_to_matrix(const std::vector<std::vector<float>>& rows) {
  FeatureMatrix out;
  if (rows.empty()) return out;
  out.cols = rows[0].size();
  out.rows.reserve(rows.size());
  for (const auto& dense : rows) {
    SparseRow row;
    row.reserve(dense.size());
    for (std::uint32_t c = 0; c < dense.size(); ++c) {
      row.emplace_back(c, dense[c]);
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

void attach_one_hot(FeatureMatrix* matrix, const std::vector<int>& labels,
                    std::size_t num_classes) {
  if (labels.size() != matrix->rows.size()) {
    throw ShapeMismatch("labels (" + std::to_string(labels.size()) +
                        ") vs rows (" + std::to_string(matrix->rows.size()) + ")");
  }
  matrix->labels.assign(labels.size(), std::vector<float>(num_classes, 0.0f));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || static_cast<std::size_t>(labels[i]) >= num_classes) {
      throw ShapeMismatch("label " + std::to_string(labels[i]) +
                          " out of range for " + std::to_string(num_classes) +
                          " classes");
    }
    matrix->labels[i][static_cast<std::size_t>(labels[i])] = 1.0f;
  }
}

double sample_beta(double alpha, RngStream& rng) {
  if (!(alpha > 0.0)) {
    throw InvalidConfig("beta alpha must be > 0, got " + std::to_string(alpha));
  }
  const double g1 = sample_gamma(alpha, rng);
  const double g2 = sample_gamma(alpha, rng);
  const double sum = g1 + g2;
  if (sum <= 0.0) return 0.5;  // both underflowed; split the difference
  return g1 / sum;
}

SparseRow mix_rows(const SparseRow& a, const SparseRow& b, double lambda) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  const double la = lambda;
  const double lb = 1.0 - lambda;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j >= b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.emplace_back(a[i].first, la * a[i].second);
      ++i;
    } else if (i >= a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, lb * b[j].second);
      ++j;
    } else {
      out.emplace_back(a[i].first, la * a[i].second + lb * b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

std::vector<float> mix_labels(const std::vector<float>& a,
                              const std::vector<float>& b, double lambda) {
  if (a.size() != b.size()) throw ShapeMismatch("label rows differ in length");
  std::vector<float> out(a.size());
  const auto la = static_cast<float>(lambda);
  const auto lb = static_cast<float>(1.0 - lambda);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = la * a[i] + lb * b[i];
  return out;
}

FeatureMatrix mixup_with(const FeatureMatrix& features,
                         const std::vector<std::size_t>& partner,
                         const std::vector<double>& lambdas) {
  if (partner.size() != features.size() || lambdas.size() != features.size()) {
    throw ShapeMismatch("partner/lambda lists must match the row count");
  }
  FeatureMatrix out;
  out.cols = features.cols;
  out.rows.reserve(features.size());
  out.labels.reserve(features.labels.size());
  for (std::size_t i = 0; i < features.size(); ++i) {
    out.rows.push_back(
        mix_rows(features.rows[i], features.rows[partner[i]], lambdas[i]));
    if (!features.labels.empty()) {
      out.labels.push_back(
          mix_labels(features.labels[i], features.labels[partner[i]], lambdas[i]));
    }
  }
  return out;
}

FeatureMatrix mixup_batch(const FeatureMatrix& features, const MixupConfig& cfg) {
  if (features.size() < 2) {
    throw TooFewRows("mixup needs >= 2 rows, got " +
                     std::to_string(features.size()));
  }
  if (features.labels.empty()) {
    throw ShapeMismatch("mixup needs labels attached");
  }
  RngStream rng(cfg.seed);

  std::vector<std::size_t> partner(features.size());
  std::iota(partner.begin(), partner.end(), 0);
  if (cfg.same_class_only) {
    std::map<std::size_t, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < features.size(); ++i) {
      const auto& row = features.labels[i];
      const std::size_t cls = static_cast<std::size_t>(
          std::max_element(row.begin(), row.end()) - row.begin());
      by_class[cls].push_back(i);
    }
    for (auto& [cls, members] : by_class) {
      std::vector<std::size_t> shuffled = members;
      rng.shuffle(shuffled);
      for (std::size_t k = 0; k < members.size(); ++k) {
        partner[members[k]] = shuffled[k];
      }
    }
  } else {
    rng.shuffle(partner);
  }

  std::vector<double> lambdas(features.size());
  for (auto& l : lambdas) l = sample_beta(cfg.alpha, rng);
  return mixup_with(features, partner, lambdas);
}

void tfidf_save_json(const TfidfModel& model, const std::string& path) {
  json j{{"vocabulary", model.column_terms},
         {"idf", model.idf},
         {"fingerprint", model.fingerprint}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

TfidfModel tfidf_load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  json j;
  in >> j;
  TfidfModel model;
  model.column_terms = j.at("vocabulary").get<std::vector<std::string>>();
  model.idf = j.at("idf").get<std::vector<double>>();
  model.fingerprint = j.at("fingerprint").get<std::string>();
  for (std::uint32_t c = 0; c < model.column_terms.size(); ++c) {
    model.vocabulary.emplace(model.column_terms[c], c);
  }
  if (model.idf.size() != model.column_terms.size()) {
    throw IoError(path + ": idf length does not match vocabulary");
  }
  return model;
}

void export_sparse_jsonl(const FeatureMatrix& matrix, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
    for (const auto& [col, value] : matrix.rows[r]) {
      out << json{{"row", r}, {"col", col}, {"val", value}}.dump() << "\n";
    }
  }
}

void export_dense_csv(const FeatureMatrix& matrix, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  std::vector<double> dense;
  for (const auto& row : matrix.rows) {
    dense.assign(matrix.cols, 0.0);
    for (const auto& [col, value] : row) dense[col] = value;
    for (std::size_t c = 0; c < dense.size(); ++c) {
      if (c) out << ',';
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.9g", dense[c]);
      out << buf;
    }
    out << "\n";
  }
}

}  // namespace textaug
