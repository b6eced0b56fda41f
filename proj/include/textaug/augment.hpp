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
// The source-text augmentation algorithms behind one Augmenter contract:
//
//   * synonym_augment    -- geometric draws pick how many words to replace
//                           and which sense-ranked synonym replaces each.
//   * embedding_augment  -- repeatedly swap a random in-vocabulary token for
//                           a neighbor sampled with cosine-similarity
//                           weights.
//   * rtt_augment        -- round-trip translation through a pivot language.
//   * identity           -- control arm; output equals input.
//
// All augmenters are pure functions of (text, rng-stream state) and never
// touch labels.

#ifndef TEXTAUG_AUGMENT_HPP_
#define TEXTAUG_AUGMENT_HPP_

#include <cstdint>
#include <memory>
#include <string>

#include "textaug/embeddings.hpp"
#include "textaug/errors.hpp"
#include "textaug/rng.hpp"
#include "textaug/translate.hpp"
#include "textaug/wordnet.hpp"

namespace textaug {

struct AugmentConfig {
  double p = 0.5;          // geometric success probability, in (0, 1]
  PosFilter pos_filter;    // parts of speech eligible for synonym swaps
  std::size_t top_k = 10;  // neighbor pool size for embedding swaps
  std::size_t runs = 1;    // replacement rounds for embedding swaps
  std::uint64_t seed = 0;

  // Throws InvalidConfig on out-of-range values.
  void validate() const;
};

class Augmenter {
 public:
  virtual ~Augmenter() = default;
  // Deterministic given the stream state; never empty for non-empty input.
  virtual std::string augment(const std::string& text, RngStream& rng) const = 0;
  virtual std::string name() const = 0;
};

// Number of Bernoulli(p) trials up to and including the first success:
// P[r = n] = (1-p)^(n-1) p, support n >= 1.
std::size_t sample_geometric(double p, RngStream& rng);

// Replaces r ~ Geometric(p) randomly chosen replaceable words (clamped to
// the number available) with their s-th sense-ordered synonym, s drawn from
// another Geometric(p) clamped to the synonym list. Output tokens are
// rejoined with single spaces; multiword lemmas substitute with spaces in
// place of underscores. Text with no replaceable word is returned unchanged.
std::string synonym_augment(const SynonymLexicon& lexicon,
                            const std::string& text, const AugmentConfig& cfg,
                            RngStream& rng);

// cfg.runs rounds over the evolving sentence: pick one in-vocabulary token
// uniformly, fetch its top_k neighbors, sample a replacement proportional to
// max(similarity, 0) (uniform fallback when all weights clamp to zero), and
// replace in place. Text with no in-vocabulary token is returned unchanged.
std::string embedding_augment(const EmbeddingModel& model,
                              const std::string& text,
                              const AugmentConfig& cfg, RngStream& rng);

struct RttAudit {
  std::string forward_raw;  // pivot-language text
  std::string back_raw;     // round-tripped English text
};

// Two translation legs: en -> pivot -> en. RateLimited legs are retried up
// to max_retries with exponential backoff starting at backoff_ms.
// Throws BackendError (leg-annotated), RateLimited, EmptyTranslation.
std::string rtt_augment(TranslationBackend& backend, const std::string& text,
                        const std::string& pivot_lang, RttAudit* audit = nullptr,
                        std::size_t max_retries = 0,
                        std::size_t backoff_ms = 0);

std::unique_ptr<Augmenter> make_identity_augmenter();
std::unique_ptr<Augmenter> make_synonym_augmenter(const SynonymLexicon& lexicon,
                                                  AugmentConfig cfg);
std::unique_ptr<Augmenter> make_embedding_augmenter(const EmbeddingModel& model,
                                                    AugmentConfig cfg);
// The pivot language is drawn uniformly from `pivots` using the caller's
// stream, so repeated calls stay deterministic and order-independent. With a
// single pivot every call round-trips the same way.
std::unique_ptr<Augmenter> make_rtt_augmenter(TranslationBackend& backend,
                                              std::vector<std::string> pivots,
                                              std::size_t max_retries = 2,
                                              std::size_t backoff_ms = 100);

}  // namespace textaug

#endif  // TEXTAUG_AUGMENT_HPP_
