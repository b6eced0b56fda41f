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

#ifndef TEXTAUG_ERRORS_HPP_
#define TEXTAUG_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace textaug {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- corpus ----
struct MissingColumn : Error {
  explicit MissingColumn(const std::string& column)
      : Error("missing column: " + column), column(column) {}
  std::string column;
};
struct MalformedRow : Error {
  MalformedRow(std::size_t row, const std::string& why)
      : Error("malformed row " + std::to_string(row) + ": " + why), row(row) {}
  std::size_t row;
};
struct EmptyFile : Error {
  explicit EmptyFile(const std::string& path) : Error("empty file: " + path) {}
};
struct InsufficientData : Error {
  using Error::Error;
};
struct AugmentRecordError : Error {
  AugmentRecordError(std::int64_t record_id, const std::string& cause)
      : Error("augmenting record " + std::to_string(record_id) + ": " + cause),
        record_id(record_id) {}
  std::int64_t record_id;
};

// ---- wordnet ----
struct MissingFile : Error {
  explicit MissingFile(const std::string& name)
      : Error("missing file: " + name), name(name) {}
  std::string name;
};
struct ParseError : Error {
  ParseError(const std::string& file, std::size_t line, const std::string& why)
      : Error(file + ":" + std::to_string(line) + ": " + why),
        file(file),
        line(line) {}
  std::string file;
  std::size_t line;
};

// ---- embeddings ----
struct DimensionMismatch : Error {
  DimensionMismatch(std::size_t line, const std::string& why)
      : Error("line " + std::to_string(line) + ": " + why), line(line) {}
  std::size_t line;
};
struct NotUtf8 : Error {
  using Error::Error;
};
struct EmptyModel : Error {
  using Error::Error;
};
struct TruncatedFile : Error {
  using Error::Error;
};
struct HeaderParseError : Error {
  using Error::Error;
};
struct DimMismatch : Error {
  using Error::Error;
};

// ---- augmenters / translation ----
struct InvalidConfig : Error {
  using Error::Error;
};
struct BackendError : Error {
  BackendError(int leg, const std::string& cause)
      : Error("translation leg " + std::to_string(leg) + ": " + cause),
        leg(leg) {}
  int leg;
};
struct RateLimited : Error {
  using Error::Error;
};
struct EmptyTranslation : Error {
  explicit EmptyTranslation(int leg)
      : Error("empty translation on leg " + std::to_string(leg)), leg(leg) {}
  int leg;
};

// ---- vectorize ----
struct EmptyCorpus : Error {
  using Error::Error;
};
struct TooFewRows : Error {
  using Error::Error;
};

// ---- learn ----
struct ShapeMismatch : Error {
  using Error::Error;
};
struct NonFiniteGradient : Error {
  using Error::Error;
};
struct DivergedLoss : Error {
  using Error::Error;
};

// ---- bench ----
struct ResourceMissing : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

}  // namespace textaug

#endif  // TEXTAUG_ERRORS_HPP_
