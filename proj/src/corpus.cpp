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

#include "textaug/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "textaug/augment.hpp"
#include "textaug/rng.hpp"

namespace textaug {
namespace {

using nlohmann::json;

// Decodes one UTF-8 codepoint starting at `i`. Invalid bytes are passed
// through as single-byte codepoints so tokenization stays total.
std::pair<char32_t, std::size_t> next_codepoint(std::string_view s,
                                                std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return {b0, 1};
  auto cont = [&](std::size_t k) {
    return i + k < s.size() &&
           (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
  };
  auto cb = [&](std::size_t k) {
    return static_cast<char32_t>(static_cast<unsigned char>(s[i + k]) & 0x3F);
  };
  if ((b0 & 0xE0) == 0xC0 && cont(1)) {
    return {(static_cast<char32_t>(b0 & 0x1F) << 6) | cb(1), 2};
  }
  if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
    return {(static_cast<char32_t>(b0 & 0x0F) << 12) | (cb(1) << 6) | cb(2), 3};
  }
  if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
    return {(static_cast<char32_t>(b0 & 0x07) << 18) | (cb(1) << 12) |
                (cb(2) << 6) | cb(3),
            4};
  }
  return {b0, 1};
}

bool is_space_cp(char32_t c) {
  switch (c) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D:
    case 0x20: case 0x85: case 0xA0: case 0x1680:
    case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

bool is_strip_punct_cp(char32_t c) {
  if (c < 0x80) {
    return std::ispunct(static_cast<int>(c)) != 0;
  }
  switch (c) {
    case 0x2018: case 0x2019: case 0x201C: case 0x201D:  // curly quotes
    case 0x2013: case 0x2014: case 0x2026:               // dashes, ellipsis
    case 0xA1: case 0xBF:                                // inverted ! and ?
      return true;
    default:
      return false;
  }
}

void append_lowered(std::string& out, std::string_view s, std::size_t begin,
                    std::size_t end) {
  for (std::size_t i = begin; i < end; ++i) {
    char c = s[i];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    out.push_back(c);
  }
}

// ---- CSV (RFC 4180) ----

struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t record_number = 0;  // 1-based, header included
};

std::vector<CsvRecord> parse_csv(const std::string& content,
                                 const std::string& path) {
  std::vector<CsvRecord> records;
  CsvRecord current;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  bool any_char_in_record = false;
  std::size_t record_number = 1;

  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    field_was_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    current.record_number = record_number++;
    records.push_back(std::move(current));
    current = CsvRecord{};
    any_char_in_record = false;
  };

  for (std::size_t i = 0; i < content.size(); ++i) {
    const char c = content[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty() || field_was_quoted) {
          throw MalformedRow(record_number, "stray quote in " + path);
        }
        in_quotes = true;
        field_was_quoted = true;
        any_char_in_record = true;
        break;
      case ',':
        end_field();
        any_char_in_record = true;
        break;
      case '\r':
        if (i + 1 < content.size() && content[i + 1] == '\n') ++i;
        end_record();
        break;
      case '\n':
        end_record();
        break;
      default:
        field.push_back(c);
        any_char_in_record = true;
        break;
    }
  }
  if (in_quotes) {
    throw MalformedRow(record_number, "unterminated quoted field in " + path);
  }
  if (any_char_in_record || !current.fields.empty()) {
    end_record();
  }
  return records;
}

std::size_t resolve_column(const ColumnRef& ref,
                           const std::vector<std::string>& header,
                           std::size_t width, bool has_header) {
  if (ref.index >= 0) {
    if (static_cast<std::size_t>(ref.index) >= width) {
      throw MissingColumn("index " + std::to_string(ref.index));
    }
    return static_cast<std::size_t>(ref.index);
  }
  if (!has_header) {
    throw MissingColumn(ref.name + " (no header row to resolve names)");
  }
  const auto it = std::find(header.begin(), header.end(), ref.name);
  if (it == header.end()) throw MissingColumn(ref.name);
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

std::string TokenizedDoc::joined() const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

TokenizedDoc tokenize(std::string_view text) {
  TokenizedDoc doc;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    // Skip whitespace.
    while (i < n) {
      const auto [cp, len] = next_codepoint(text, i);
      if (!is_space_cp(cp)) break;
      i += len;
    }
    if (i >= n) break;
    // Collect the raw token as a list of codepoint ranges.
    struct Cp { std::size_t begin, end; char32_t cp; };
    std::vector<Cp> cps;
    while (i < n) {
      const auto [cp, len] = next_codepoint(text, i);
      if (is_space_cp(cp)) break;
      cps.push_back({i, i + len, cp});
      i += len;
    }
    // Strip surrounding punctuation.
    std::size_t lo = 0, hi = cps.size();
    while (lo < hi && is_strip_punct_cp(cps[lo].cp)) ++lo;
    while (hi > lo && is_strip_punct_cp(cps[hi - 1].cp)) --hi;
    if (lo == hi) continue;
    std::string token;
    append_lowered(token, text, cps[lo].begin, cps[hi - 1].end);
    doc.tokens.push_back(std::move(token));
  }
  return doc;
}

Dataset load_csv(const std::string& path, const ColumnSpec& spec) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string content = buf.str();
  if (content.empty()) throw EmptyFile(path);

  const auto records = parse_csv(content, path);
  if (records.empty() || (spec.has_header && records.size() < 2)) {
    throw EmptyFile(path);
  }

  std::vector<std::string> header;
  std::size_t first_data = 0;
  if (spec.has_header) {
    header = records[0].fields;
    first_data = 1;
  }
  const std::size_t width =
      spec.has_header ? header.size() : records[0].fields.size();
  const std::size_t text_col =
      resolve_column(spec.text, header, width, spec.has_header);
  const std::size_t label_col =
      resolve_column(spec.label, header, width, spec.has_header);

  Dataset ds;
  std::unordered_map<std::string, int> label_ids;
  for (std::size_t i = 0; i < spec.label_order.size(); ++i) {
    label_ids[spec.label_order[i]] = static_cast<int>(i);
    ds.label_names.push_back(spec.label_order[i]);
  }

  std::int64_t next_id = 0;
  for (std::size_t r = first_data; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() == 1 && rec.fields[0].empty()) continue;  // blank line
    const std::size_t need = std::max(text_col, label_col) + 1;
    if (rec.fields.size() < need) {
      throw MalformedRow(rec.record_number, "expected at least " +
                                                std::to_string(need) +
                                                " fields, got " +
                                                std::to_string(rec.fields.size()));
    }
    const std::string& text = rec.fields[text_col];
    const std::string& label = rec.fields[label_col];
    if (text.empty()) throw MalformedRow(rec.record_number, "empty text field");
    if (label.empty()) throw MalformedRow(rec.record_number, "empty label field");

    auto it = label_ids.find(label);
    if (it == label_ids.end()) {
      if (!spec.label_order.empty()) {
        throw MalformedRow(rec.record_number, "label '" + label +
                                                  "' not in declared order");
      }
      it = label_ids.emplace(label, static_cast<int>(ds.label_names.size()))
               .first;
      ds.label_names.push_back(label);
    }
    ds.records.push_back(Document{next_id++, text, it->second, Origin::original()});
  }
  if (ds.records.empty()) throw EmptyFile(path);
  ds.task_kind =
      ds.label_names.size() <= 2 ? TaskKind::kBinary : TaskKind::kCategorical;
  return ds;
}

namespace {

// Largest-remainder apportionment of `total` over per-group weights.
std::vector<std::size_t> apportion(const std::vector<std::size_t>& weights,
                                   std::size_t total) {
  const double sum = static_cast<double>(
      std::accumulate(weights.begin(), weights.end(), std::size_t{0}));
  std::vector<std::size_t> out(weights.size(), 0);
  if (sum == 0.0 || total == 0) return out;
  std::vector<std::pair<double, std::size_t>> fractions;  // (frac, group)
  std::size_t assigned = 0;
  for (std::size_t g = 0; g < weights.size(); ++g) {
    const double quota = static_cast<double>(total) * weights[g] / sum;
    out[g] = static_cast<std::size_t>(std::floor(quota));
    assigned += out[g];
    fractions.emplace_back(quota - std::floor(quota), g);
  }
  std::sort(fractions.begin(), fractions.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (std::size_t k = 0; assigned < total; ++k) {
    out[fractions[k % fractions.size()].second] += 1;
    ++assigned;
  }
  return out;
}

}  // namespace

std::pair<Dataset, Dataset> split(const Dataset& dataset, const SplitSpec& spec) {
  if (spec.train_size + spec.val_size > dataset.size()) {
    throw InsufficientData("need " +
                           std::to_string(spec.train_size + spec.val_size) +
                           " records, have " + std::to_string(dataset.size()));
  }
  // Group record positions by label.
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < dataset.records.size(); ++i) {
    groups[dataset.records[i].label].push_back(i);
  }
  std::vector<int> labels;
  std::vector<std::size_t> sizes;
  for (const auto& [label, members] : groups) {
    labels.push_back(label);
    sizes.push_back(members.size());
  }

  auto train_counts = apportion(sizes, spec.train_size);
  auto val_counts = apportion(sizes, spec.val_size);
  // Cap at group capacity; push any deficit onto groups with spare records,
  // in label order.
  auto rebalance = [&](std::vector<std::size_t>& counts,
                       const std::vector<std::size_t>& used) {
    std::size_t deficit = 0;
    for (std::size_t g = 0; g < counts.size(); ++g) {
      const std::size_t cap = sizes[g] - used[g];
      if (counts[g] > cap) {
        deficit += counts[g] - cap;
        counts[g] = cap;
      }
    }
    for (std::size_t g = 0; g < counts.size() && deficit > 0; ++g) {
      const std::size_t spare = sizes[g] - used[g] - counts[g];
      const std::size_t take = std::min(spare, deficit);
      counts[g] += take;
      deficit -= take;
    }
  };
  rebalance(train_counts, std::vector<std::size_t>(sizes.size(), 0));
  rebalance(val_counts, train_counts);

  std::vector<std::size_t> train_pos, val_pos;
  for (std::size_t g = 0; g < labels.size(); ++g) {
    auto members = groups[labels[g]];
    RngStream rng = RngStream::derive(spec.seed, 0x5B1CE5 + static_cast<std::uint64_t>(labels[g]));
    rng.shuffle(members);
    for (std::size_t k = 0; k < train_counts[g]; ++k) train_pos.push_back(members[k]);
    for (std::size_t k = 0; k < val_counts[g]; ++k) {
      val_pos.push_back(members[train_counts[g] + k]);
    }
  }
  std::sort(train_pos.begin(), train_pos.end());
  std::sort(val_pos.begin(), val_pos.end());

  auto gather = [&](const std::vector<std::size_t>& pos) {
    Dataset out;
    out.label_names = dataset.label_names;
    out.task_kind = dataset.task_kind;
    out.records.reserve(pos.size());
    for (const std::size_t p : pos) out.records.push_back(dataset.records[p]);
    return out;
  };
  return {gather(train_pos), gather(val_pos)};
}

Dataset build_augmented(const Dataset& train, const Augmenter& augmenter,
                        std::size_t n_aug, std::uint64_t seed,
                        std::size_t jobs) {
  Dataset out;
  out.label_names = train.label_names;
  out.task_kind = train.task_kind;
  const std::size_t n = train.records.size();
  out.records.resize(n * (n_aug + 1));
  std::copy(train.records.begin(), train.records.end(), out.records.begin());

  std::int64_t max_id = -1;
  for (const auto& rec : train.records) max_id = std::max(max_id, rec.id);
  const std::int64_t base_id = max_id + 1;

  auto process = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Document& parent = train.records[i];
      RngStream rng =
          RngStream::derive(seed, static_cast<std::uint64_t>(parent.id));
      for (std::size_t j = 0; j < n_aug; ++j) {
        std::string text;
        try {
          text = augmenter.augment(parent.text, rng);
        } catch (const std::exception& e) {
          throw AugmentRecordError(parent.id, e.what());
        }
        Document& slot =
            out.records[n + i * n_aug + j];
        slot.id = base_id + static_cast<std::int64_t>(i * n_aug + j);
        slot.text = std::move(text);
        slot.label = parent.label;
        slot.origin = Origin::augmented(augmenter.name(), parent.id);
      }
    }
  };

  if (jobs <= 1 || n < 2) {
    process(0, n);
  } else {
    const std::size_t workers = std::min(jobs, n);
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back([&, begin, end] {
        try {
          process(begin, end);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }
  return out;
}

namespace {

json origin_to_json(const Origin& origin) {
  if (origin.kind == Origin::kOriginal) return json("original");
  return json{{"method", origin.method}, {"parent_id", origin.parent_id}};
}

Origin origin_from_json(const json& j) {
  if (j.is_string()) return Origin::original();
  return Origin::augmented(j.at("method").get<std::string>(),
                           j.at("parent_id").get<std::int64_t>());
}

}  // namespace

void write_jsonl(std::ostream& out, const Dataset& dataset) {
  for (const auto& rec : dataset.records) {
    json j{{"id", rec.id},
           {"text", rec.text},
           {"label", rec.label},
           {"origin", origin_to_json(rec.origin)}};
    out << j.dump() << "\n";
  }
}

void write_jsonl_file(const std::string& path, const Dataset& dataset) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_jsonl(out, dataset);
}

Dataset read_jsonl(std::istream& in) {
  Dataset ds;
  std::string line;
  int max_label = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    Document rec;
    rec.id = j.at("id").get<std::int64_t>();
    rec.text = j.at("text").get<std::string>();
    rec.label = j.at("label").get<int>();
    rec.origin = origin_from_json(j.at("origin"));
    max_label = std::max(max_label, rec.label);
    ds.records.push_back(std::move(rec));
  }
  for (int l = 0; l <= max_label; ++l) ds.label_names.push_back(std::to_string(l));
  ds.task_kind =
      ds.label_names.size() <= 2 ? TaskKind::kBinary : TaskKind::kCategorical;
  return ds;
}

Dataset read_jsonl_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return read_jsonl(in);
}

}  // namespace textaug
