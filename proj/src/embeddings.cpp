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

#include "textaug/embeddings.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace textaug {
namespace {

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    std::size_t extra;
    if (b0 < 0x80) {
      extra = 0;
    } else if ((b0 & 0xE0) == 0xC0) {
      extra = 1;
    } else if ((b0 & 0xF0) == 0xE0) {
      extra = 2;
    } else if ((b0 & 0xF8) == 0xF0) {
      extra = 3;
    } else {
      return false;
    }
    if (i + extra >= s.size() && extra > 0) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return false;
    }
    i += extra + 1;
  }
  return true;
}

bool parse_size(std::string_view s, std::size_t* out) {
  std::size_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return false;
  *out = value;
  return true;
}

float parse_float(std::string_view s, std::size_t line) {
  float value = 0.0f;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw DimensionMismatch(line, "unparseable value '" + std::string(s) + "'");
  }
  return value;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r')) {
      ++i;
    }
    const std::size_t begin = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r') {
      ++i;
    }
    if (i > begin) out.push_back(line.substr(begin, i - begin));
  }
  return out;
}

float float_from_le(const unsigned char* p) {
  const std::uint32_t bits = static_cast<std::uint32_t>(p[0]) |
                             static_cast<std::uint32_t>(p[1]) << 8 |
                             static_cast<std::uint32_t>(p[2]) << 16 |
                             static_cast<std::uint32_t>(p[3]) << 24;
  return std::bit_cast<float>(bits);
}

}  // namespace

EmbeddingModel::EmbeddingModel(std::vector<std::string> vocab,
                               std::vector<float> matrix, std::size_t dim,
                               std::size_t duplicates_skipped)
    : vocab_(std::move(vocab)),
      matrix_(std::move(matrix)),
      dim_(dim),
      duplicates_skipped_(duplicates_skipped) {
  rows_.reserve(vocab_.size());
  for (std::size_t i = 0; i < vocab_.size(); ++i) {
    rows_.emplace(vocab_[i], i);
  }
}

std::int64_t EmbeddingModel::row_of(std::string_view word) const {
  const auto it = rows_.find(word);
  return it == rows_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

EmbeddingModel load_text_format(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);

  std::vector<std::string> vocab;
  std::vector<float> matrix;
  std::size_t dim = 0;
  std::size_t duplicates = 0;
  std::unordered_map<std::string, bool> seen;

  std::string line;
  std::size_t line_number = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_number;
    const auto fields = split_ws(line);
    if (fields.empty()) continue;
    if (first_content_line) {
      first_content_line = false;
      // Optional header: exactly two unsigned integers.
      std::size_t a = 0, b = 0;
      if (fields.size() == 2 && parse_size(fields[0], &a) &&
          parse_size(fields[1], &b)) {
        dim = b;
        continue;
      }
    }
    if (!valid_utf8(fields[0])) {
      throw NotUtf8("line " + std::to_string(line_number) +
                    ": word is not valid UTF-8");
    }
    if (dim == 0) dim = fields.size() - 1;
    if (fields.size() != dim + 1) {
      throw DimensionMismatch(
          line_number, "expected " + std::to_string(dim) + " values, got " +
                           std::to_string(fields.size() - 1));
    }
    std::string word(fields[0]);
    if (seen.count(word) != 0) {
      ++duplicates;
      continue;
    }
    seen.emplace(word, true);
    vocab.push_back(std::move(word));
    for (std::size_t k = 1; k < fields.size(); ++k) {
      matrix.push_back(parse_float(fields[k], line_number));
    }
  }
  if (vocab.empty()) throw EmptyModel(path + " contains no vectors");
  return EmbeddingModel(std::move(vocab), std::move(matrix), dim, duplicates);
}

EmbeddingModel load_binary_format(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);

  std::string header;
  if (!std::getline(in, header)) throw HeaderParseError("missing header line");
  const auto fields = split_ws(header);
  std::size_t vocab_size = 0, dim = 0;
  if (fields.size() != 2 || !parse_size(fields[0], &vocab_size) ||
      !parse_size(fields[1], &dim) || dim == 0) {
    throw HeaderParseError("expected 'vocab_size dim', got '" + header + "'");
  }
  if (vocab_size == 0) throw EmptyModel(path + " declares zero vectors");

  std::vector<std::string> vocab;
  std::vector<float> matrix;
  matrix.reserve(vocab_size * dim);
  std::size_t duplicates = 0;
  std::unordered_map<std::string, bool> seen;
  std::vector<unsigned char> payload(dim * 4);

  for (std::size_t w = 0; w < vocab_size; ++w) {
    std::string word;
    char c;
    // Some writers emit a newline between records; skip leading whitespace.
    while (in.get(c)) {
      if (c == ' ') {
        if (!word.empty()) break;
      } else if (c == '\n' || c == '\r') {
        if (!word.empty()) break;
      } else {
        word.push_back(c);
      }
    }
    if (word.empty() || !in) {
      throw TruncatedFile(path + ": ended at word " + std::to_string(w) +
                          " of " + std::to_string(vocab_size));
    }
    in.read(reinterpret_cast<char*>(payload.data()),
            static_cast<std::streamsize>(payload.size()));
    if (static_cast<std::size_t>(in.gcount()) != payload.size()) {
      throw TruncatedFile(path + ": vector for '" + word + "' is incomplete");
    }
    if (seen.count(word) != 0) {
      ++duplicates;
      continue;
    }
    seen.emplace(word, true);
    vocab.push_back(std::move(word));
    for (std::size_t k = 0; k < dim; ++k) {
      matrix.push_back(float_from_le(payload.data() + k * 4));
    }
  }
  return EmbeddingModel(std::move(vocab), std::move(matrix), dim, duplicates);
}

double cosine(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) {
    throw DimMismatch("cosine of " + std::to_string(a.size()) + " vs " +
                      std::to_string(b.size()) + " dims");
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * b[i];
    na += static_cast<double>(a[i]) * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

std::vector<Neighbor> top_k_neighbors(const EmbeddingModel& model,
                                      std::string_view word, std::size_t k) {
  std::vector<Neighbor> out;
  const std::int64_t query = model.row_of(word);
  if (query < 0) return out;

  const auto qv = model.vector(static_cast<std::size_t>(query));
  std::vector<std::pair<double, std::size_t>> scored;  // (similarity, row)
  scored.reserve(model.size() - 1);
  for (std::size_t row = 0; row < model.size(); ++row) {
    if (static_cast<std::int64_t>(row) == query) continue;
    scored.emplace_back(cosine(qv, model.vector(row)), row);
  }
  const std::size_t take = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + take, scored.end(),
                    [](const auto& a, const auto& b) {
                      if (a.first != b.first) return a.first > b.first;
                      return a.second < b.second;
                    });
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    out.push_back({model.vocab()[scored[i].second], scored[i].first});
  }
  return out;
}

}  // namespace textaug
