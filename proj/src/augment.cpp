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

#include "textaug/augment.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "textaug/corpus.hpp"

namespace textaug {

void AugmentConfig::validate() const {
  if (!(p > 0.0 && p <= 1.0)) {
    throw InvalidConfig("geometric p must be in (0, 1], got " +
                        std::to_string(p));
  }
  if (runs < 1) throw InvalidConfig("runs must be >= 1");
  if (top_k < 1) throw InvalidConfig("top_k must be >= 1");
}

std::size_t sample_geometric(double p, RngStream& rng) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw InvalidConfig("geometric p must be in (0, 1], got " +
                        std::to_string(p));
  }
  if (p == 1.0) return 1;
  // Inversion: ceil(log(1-u) / log(1-p)) has exactly the first-success law.
  const double u = rng.next_double();  // in [0, 1)
  const double n = std::floor(std::log1p(-u) / std::log1p(-p)) + 1.0;
  return n < 1.0 ? 1 : static_cast<std::size_t>(n);
}

namespace {

// Multiword lemmas are stored with underscores; surface text uses spaces.
std::string lemma_to_surface(const std::string& lemma) {
  std::string out = lemma;
  std::replace(out.begin(), out.end(), '_', ' ');
  return out;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace

std::string synonym_augment(const SynonymLexicon& lexicon,
                            const std::string& text, const AugmentConfig& cfg,
                            RngStream& rng) {
  cfg.validate();
  TokenizedDoc doc = tokenize(text);
  auto positions = replaceable_positions(lexicon, doc, cfg.pos_filter);
  if (positions.empty()) return text;

  std::size_t replace_count = sample_geometric(cfg.p, rng);
  replace_count = std::min(replace_count, positions.size());

  // Partial Fisher-Yates: the first replace_count entries are a uniform
  // sample of distinct positions.
  for (std::size_t i = 0; i < replace_count; ++i) {
    const std::size_t j = i + rng.below(positions.size() - i);
    std::swap(positions[i], positions[j]);
  }

  for (std::size_t i = 0; i < replace_count; ++i) {
    const auto& [index, pos] = positions[i];
    const auto options = synonyms(lexicon, doc.tokens[index], pos);
    if (options.empty()) continue;  // unreachable for replaceable positions
    std::size_t rank = sample_geometric(cfg.p, rng);
    rank = std::min(rank, options.size());
    doc.tokens[index] = lemma_to_surface(options[rank - 1]);
  }
  return join_tokens(doc.tokens);
}

namespace {

using NeighborLookup =
    std::function<const std::vector<Neighbor>&(const std::string&)>;

std::string embedding_augment_impl(const EmbeddingModel& model,
                                   const std::string& text,
                                   const AugmentConfig& cfg, RngStream& rng,
                                   const NeighborLookup& neighbors_for) {
  cfg.validate();
  TokenizedDoc doc = tokenize(text);

  for (std::size_t run = 0; run < cfg.runs; ++run) {
    std::vector<std::size_t> in_vocab;
    for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
      if (model.contains(doc.tokens[i])) in_vocab.push_back(i);
    }
    if (in_vocab.empty()) return text;

    const std::size_t index = in_vocab[rng.below(in_vocab.size())];
    const auto& neighbors = neighbors_for(doc.tokens[index]);
    if (neighbors.empty()) continue;  // single-word vocabulary

    // Similarity-weighted choice; negative similarities clamp to zero, and
    // an all-zero pool falls back to a uniform draw.
    double total = 0.0;
    for (const auto& n : neighbors) total += std::max(n.similarity, 0.0);
    std::size_t chosen = 0;
    if (total <= 0.0) {
      chosen = rng.below(neighbors.size());
    } else {
      const double u = rng.next_double() * total;
      double cumulative = 0.0;
      chosen = neighbors.size() - 1;
      for (std::size_t k = 0; k < neighbors.size(); ++k) {
        cumulative += std::max(neighbors[k].similarity, 0.0);
        if (u < cumulative) {
          chosen = k;
          break;
        }
      }
    }
    doc.tokens[index] = neighbors[chosen].word;
  }
  return join_tokens(doc.tokens);
}

}  // namespace

std::string embedding_augment(const EmbeddingModel& model,
                              const std::string& text,
                              const AugmentConfig& cfg, RngStream& rng) {
  std::vector<Neighbor> scratch;
  const NeighborLookup lookup =
      [&](const std::string& word) -> const std::vector<Neighbor>& {
    scratch = top_k_neighbors(model, word, cfg.top_k);
    return scratch;
  };
  return embedding_augment_impl(model, text, cfg, rng, lookup);
}

std::string rtt_augment(TranslationBackend& backend, const std::string& text,
                        const std::string& pivot_lang, RttAudit* audit,
                        std::size_t max_retries, std::size_t backoff_ms) {
  auto leg = [&](int number, const std::string& input, const std::string& from,
                 const std::string& to) {
    std::size_t attempt = 0;
    for (;;) {
      try {
        std::string out = backend.translate(input, from, to);
        if (out.empty()) throw EmptyTranslation(number);
        return out;
      } catch (const RateLimited&) {
        if (attempt >= max_retries) throw;
        if (backoff_ms > 0) {
          std::this_thread::sleep_for(
              std::chrono::milliseconds(backoff_ms << attempt));
        }
        ++attempt;
      } catch (const EmptyTranslation&) {
        throw;
      } catch (const Error& e) {
        throw BackendError(number, e.what());
      }
    }
  };

  const std::string forward = leg(1, text, "en", pivot_lang);
  const std::string back = leg(2, forward, pivot_lang, "en");
  if (audit != nullptr) {
    audit->forward_raw = forward;
    audit->back_raw = back;
  }
  return back;
}

namespace {

class IdentityAugmenter final : public Augmenter {
 public:
  std::string augment(const std::string& text, RngStream&) const override {
    return text;
  }
  std::string name() const override { return "identity"; }
};

class SynonymAugmenter final : public Augmenter {
 public:
  SynonymAugmenter(const SynonymLexicon& lexicon, AugmentConfig cfg)
      : lexicon_(lexicon), cfg_(cfg) {
    cfg_.validate();
  }
  std::string augment(const std::string& text, RngStream& rng) const override {
    return synonym_augment(lexicon_, text, cfg_, rng);
  }
  std::string name() const override { return "synonym"; }

 private:
  const SynonymLexicon& lexicon_;
  AugmentConfig cfg_;
};

class EmbeddingAugmenter final : public Augmenter {
 public:
  EmbeddingAugmenter(const EmbeddingModel& model, AugmentConfig cfg)
      : model_(model), cfg_(cfg) {
    cfg_.validate();
  }
  std::string augment(const std::string& text, RngStream& rng) const override {
    const NeighborLookup lookup =
        [this](const std::string& word) -> const std::vector<Neighbor>& {
      return neighbors_for(word);
    };
    return embedding_augment_impl(model_, text, cfg_, rng, lookup);
  }
  std::string name() const override { return "embedding"; }

 private:
  // Neighbor lists are deterministic per word; memoizing them keeps bulk
  // augmentation from rescanning the vocabulary for every replacement.
  // References into the node-based map stay valid across inserts.
  const std::vector<Neighbor>& neighbors_for(const std::string& word) const {
    {
      std::lock_guard<std::mutex> lock(cache_mutex_);
      const auto it = cache_.find(word);
      if (it != cache_.end()) return it->second;
    }
    auto neighbors = top_k_neighbors(model_, word, cfg_.top_k);
    std::lock_guard<std::mutex> lock(cache_mutex_);
    return cache_.emplace(word, std::move(neighbors)).first->second;
  }

  const EmbeddingModel& model_;
  AugmentConfig cfg_;
  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<std::string, std::vector<Neighbor>> cache_;
};

class RttAugmenter final : public Augmenter {
 public:
  RttAugmenter(TranslationBackend& backend, std::vector<std::string> pivots,
               std::size_t max_retries, std::size_t backoff_ms)
      : backend_(backend),
        pivots_(std::move(pivots)),
        max_retries_(max_retries),
        backoff_ms_(backoff_ms) {
    if (pivots_.empty()) throw InvalidConfig("rtt augmenter needs >= 1 pivot");
  }
  std::string augment(const std::string& text, RngStream& rng) const override {
    const std::string& pivot = pivots_[rng.below(pivots_.size())];
    return rtt_augment(backend_, text, pivot, nullptr, max_retries_, backoff_ms_);
  }
  std::string name() const override { return "rtt"; }

 private:
  TranslationBackend& backend_;
  std::vector<std::string> pivots_;
  std::size_t max_retries_;
  std::size_t backoff_ms_;
};

}  // namespace

std::unique_ptr<Augmenter> make_identity_augmenter() {
  return std::make_unique<IdentityAugmenter>();
}

std::unique_ptr<Augmenter> make_synonym_augmenter(const SynonymLexicon& lexicon,
                                                  AugmentConfig cfg) {
  return std::make_unique<SynonymAugmenter>(lexicon, cfg);
}

std::unique_ptr<Augmenter> make_embedding_augmenter(const EmbeddingModel& model,
                                                    AugmentConfig cfg) {
  return std::make_unique<EmbeddingAugmenter>(model, cfg);
}

std::unique_ptr<Augmenter> make_rtt_augmenter(TranslationBackend& backend,
                                              std::vector<std::string> pivots,
                                              std::size_t max_retries,
                                              std::size_t backoff_ms) {
  return std::make_unique<RttAugmenter>(backend, std::move(pivots), max_retries,
                                        backoff_ms);
}

}  // namespace textaug
