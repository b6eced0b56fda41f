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
// Dataset ingestion, tokenization, stratified splitting, and construction of
// augmented datasets (the "n originals + n_aug copies each" protocol).

#ifndef TEXTAUG_CORPUS_HPP_
#define TEXTAUG_CORPUS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "textaug/errors.hpp"

namespace textaug {

class Augmenter;

enum class TaskKind { kBinary, kCategorical };

struct Origin {
  enum Kind { kOriginal, kAugmented };
  Kind kind = kOriginal;
  std::string method;           // augmentation method name, kAugmented only
  std::int64_t parent_id = -1;  // id of the source record, kAugmented only

  static Origin original() { return Origin{}; }
  static Origin augmented(std::string method, std::int64_t parent_id) {
    return Origin{kAugmented, std::move(method), parent_id};
  }
  bool operator==(const Origin&) const = default;
};

struct Document {
  std::int64_t id = 0;
  std::string text;
  int label = 0;
  Origin origin;
};

struct Dataset {
  std::vector<Document> records;
  std::vector<std::string> label_names;
  TaskKind task_kind = TaskKind::kCategorical;

  std::size_t size() const { return records.size(); }
};

struct TokenizedDoc {
  std::vector<std::string> tokens;

  std::string joined() const;
};

// Column selector: by header name, or by 0-based index when the file has no
// header (or names are unknown).
struct ColumnRef {
  int index = -1;
  std::string name;

  static ColumnRef by_index(int i) { return ColumnRef{i, ""}; }
  static ColumnRef by_name(std::string n) { return ColumnRef{-1, std::move(n)}; }
};

struct ColumnSpec {
  ColumnRef text = ColumnRef::by_name("text");
  ColumnRef label = ColumnRef::by_name("label");
  bool has_header = true;
  // Optional explicit label order; empty means first-seen order.
  std::vector<std::string> label_order;
};

struct SplitSpec {
  std::size_t train_size = 0;
  std::size_t val_size = 0;
  std::uint64_t seed = 0;
};

// Reads a UTF-8, RFC 4180 CSV file into a Dataset. One Document per data
// row, origin Original, ids assigned 0..n-1 in file order. Label names are
// collected in first-seen order unless the spec supplies an explicit order.
// Throws MissingColumn, MalformedRow, EmptyFile.
Dataset load_csv(const std::string& path, const ColumnSpec& spec);

// Lowercases (ASCII), splits on Unicode whitespace, and strips surrounding
// punctuation from each token; tokens that become empty are dropped.
TokenizedDoc tokenize(std::string_view text);

// Deterministic stratified split into (train, val). Records keep their ids;
// within each part they appear in ascending original-position order.
// Throws InsufficientData when train_size + val_size exceeds the dataset.
std::pair<Dataset, Dataset> split(const Dataset& dataset, const SplitSpec& spec);

// Originals plus n_aug augmented copies per original: output size is exactly
// (n_aug + 1) * |train|. Each copy keeps its parent's label and records an
// Augmented origin. Every record draws from its own stream (seed xor record
// id), so jobs > 1 produces output identical to sequential execution.
// Augmenter failures are rethrown as AugmentRecordError.
Dataset build_augmented(const Dataset& train, const Augmenter& augmenter,
                        std::size_t n_aug, std::uint64_t seed,
                        std::size_t jobs = 1);

// JSON-lines serialization: one Document per line with fields
// id, text, label, origin.
void write_jsonl(std::ostream& out, const Dataset& dataset);
void write_jsonl_file(const std::string& path, const Dataset& dataset);
// Reads Documents back; label names are synthesized as "0".."k" when the
// stream carries no name information.
Dataset read_jsonl(std::istream& in);
Dataset read_jsonl_file(const std::string& path);

}  // namespace textaug

#endif  // TEXTAUG_CORPUS_HPP_
