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
// Word-vector model loading (word2vec text and binary interchange formats)
// and cosine nearest-neighbor queries. Neighbor search is an exhaustive
// scan: vocabularies here are desk scale and the oracle tests need exact
// rankings.

#ifndef TEXTAUG_EMBEDDINGS_HPP_
#define TEXTAUG_EMBEDDINGS_HPP_

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "textaug/errors.hpp"

namespace textaug {

class EmbeddingModel {
 public:
  EmbeddingModel() = default;
  EmbeddingModel(std::vector<std::string> vocab, std::vector<float> matrix,
                 std::size_t dim, std::size_t duplicates_skipped = 0);

  std::size_t size() const { return vocab_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& vocab() const { return vocab_; }
  // Number of duplicate words dropped while loading (first occurrence wins).
  std::size_t duplicates_skipped() const { return duplicates_skipped_; }

  bool contains(std::string_view word) const { return row_of(word) >= 0; }
  // Row index for a word, -1 if absent. Lookup is exact-match.
  std::int64_t row_of(std::string_view word) const;
  std::span<const float> vector(std::size_t row) const {
    return {matrix_.data() + row * dim_, dim_};
  }

 private:
  std::vector<std::string> vocab_;
  std::vector<float> matrix_;  // row-major, size() x dim()
  std::size_t dim_ = 0;
  std::size_t duplicates_skipped_ = 0;
  std::unordered_map<std::string_view, std::size_t> rows_;
};

struct Neighbor {
  std::string word;
  double similarity = 0.0;  // in [-1, 1]
};

// word2vec text format: optional "vocab_size dim" header, then
// "word v1 ... v_dim" per line. Duplicated words keep the first occurrence.
// Throws DimensionMismatch, NotUtf8, EmptyModel.
EmbeddingModel load_text_format(const std::string& path);

// word2vec binary format: ASCII "vocab_size dim\n" header, then per word a
// space-terminated name followed by dim little-endian float32 values.
// Throws TruncatedFile, HeaderParseError, EmptyModel.
EmbeddingModel load_binary_format(const std::string& path);

// a.b / (|a||b|), clamped to [-1, 1]; zero-norm input gives 0.
// Throws DimMismatch.
double cosine(std::span<const float> a, std::span<const float> b);

// The k vocabulary words most similar to `word`, excluding the word itself,
// sorted by descending similarity with ties broken by vocabulary order.
// Unknown words yield an empty list; k saturates at vocab size - 1.
std::vector<Neighbor> top_k_neighbors(const EmbeddingModel& model,
                                      std::string_view word, std::size_t k);

}  // namespace textaug

#endif  // TEXTAUG_EMBEDDINGS_HPP_
